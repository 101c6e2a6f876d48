#include <doctest.h>

#include "rohlin/error.hpp"
#include "rohlin/linalg.hpp"
#include "support.hpp"

using namespace rohlin;
using namespace rohlin::testing;

TEST_SUITE("linalg") {

TEST_CASE("operator norm of identity, zero and a diagonal") {
  CHECK(operator_norm(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(ComplexMatrix::Zero(3, 3)) == 0.0);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = Complex(0.0, 4.0);
  // 2x2 oracle: sigma_max^2 is the larger root of x^2 - tr(G) x + det(G), G = D*D.
  const ComplexMatrix g = naive_mul(d.adjoint(), d);
  const double tr = g.trace().real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double sigma = std::sqrt(0.5 * (tr + std::sqrt(tr * tr - 4.0 * det)));
  CHECK(operator_norm(d) == doctest::Approx(sigma).epsilon(1e-12));
  CHECK(sigma == doctest::Approx(4.0));
}

TEST_CASE("operator norm is submultiplicative and unitarily invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + trial % 7;
    const ComplexMatrix a = gaussian(n, n, rng), b = gaussian(n, n, rng);
    const ComplexMatrix u = haar_matrix(n, rng), v = haar_matrix(n, rng);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) * (1 + 1e-10));
    CHECK(operator_norm(u * a * v) == doctest::Approx(operator_norm(a)).epsilon(1e-10));
    CHECK(operator_norm(a) == doctest::Approx(gram_norm(a)).epsilon(1e-10));
  }
}

TEST_CASE("unitarity certificate") {
  CHECK(UnitaryMatrix::from(shift_matrix(4)).unitarity_defect() < 1e-15);
  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(0, 0) = 1.01;
  CHECK_THROWS_AS(UnitaryMatrix::from(m), Error);
  try {
    UnitaryMatrix::from(m);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNotUnitary);
  }
}

TEST_CASE("canonical generators are unitary") {
  for (Eigen::Index n = 1; n <= 32; ++n) {
    CHECK(UnitaryMatrix::from(shift_matrix(n)).unitarity_defect() < 1e-12);
    for (std::int64_t s = 0; s < n; ++s) {
      CHECK(UnitaryMatrix::from(clock_matrix(n, Turns(s, n))).unitarity_defect() < 1e-12);
    }
  }
}

TEST_CASE("shift and clock conventions") {
  const ComplexMatrix s = shift_matrix(4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    ComplexVector e = ComplexVector::Zero(4);
    e(i) = 1.0;
    const ComplexVector image = s * e;
    CHECK(std::abs(image((i + 1) % 4) - 1.0) == 0.0);
  }
  const ComplexMatrix w = clock_matrix(4, Turns(1, 4));
  CHECK(w(0, 0) == Complex(1.0, 0.0));
  CHECK(w(1, 1) == Complex(0.0, 1.0));
  CHECK(w(2, 2) == Complex(-1.0, 0.0));
  CHECK(w(3, 3) == Complex(0.0, -1.0));
}

TEST_CASE("kron places b blocks inside a") {
  Rng rng(3);
  const ComplexMatrix a = gaussian(2, 3, rng), b = gaussian(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      for (Eigen::Index p = 0; p < 3; ++p)
        for (Eigen::Index q = 0; q < 2; ++q) CHECK(k(i * 3 + p, j * 2 + q) == a(i, j) * b(p, q));
  const ComplexMatrix ds = direct_sum(a, b);
  CHECK(ds.rows() == 5);
  CHECK(ds.block(2, 3, 3, 2) == b);
  CHECK(ds.block(0, 3, 2, 2).isZero());
}

TEST_CASE("polar part of unitary and positive inputs") {
  Rng rng(5);
  const ComplexMatrix u = haar_matrix(5, rng);
  CHECK(max_abs(polar_unitary(u).matrix() - u) < 1e-12);

  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 2.0;
  p(1, 1) = 0.5;
  CHECK(max_abs(polar_unitary(p).matrix() - ComplexMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("polar part recovers known factors") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 1 + trial % 8;
    const ComplexMatrix u = haar_matrix(n, rng);
    const ComplexMatrix g = gaussian(n, n, rng);
    const ComplexMatrix pos = g.adjoint() * g + 0.1 * ComplexMatrix::Identity(n, n);
    const UnitaryMatrix w = polar_unitary(u * pos);
    CHECK(max_abs(w.matrix() - u) < 1e-9);
    CHECK(w.unitarity_defect() < 1e-10);
  }
}

TEST_CASE("polar part is the nearest unitary in Frobenius norm") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const ComplexMatrix x = gaussian(n, n, rng);
    const UnitaryMatrix w = polar_unitary(x);
    // SVD oracle: the minimizer is U V*.
    const Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const ComplexMatrix oracle = svd.matrixU() * svd.matrixV().adjoint();
    CHECK(max_abs(w.matrix() - oracle) < 1e-9);
    const double best = (x - w.matrix()).norm();
    for (int k = 0; k < 10; ++k) CHECK(best <= (x - haar_matrix(n, rng)).norm() + 1e-12);
  }
}

TEST_CASE("polar part rejects singular input") {
  ComplexMatrix x = ComplexMatrix::Identity(3, 3);
  x(2, 2) = 0.0;
  try {
    polar_unitary(x);
    FAIL("expected SingularInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kSingularInput);
  }
}

TEST_CASE("principal logarithm") {
  CHECK(max_abs(log_unitary(UnitaryMatrix::identity(3))) < 1e-15);

  const UnitaryMatrix quarter =
      UnitaryMatrix::from(Complex(0.0, 1.0) * ComplexMatrix::Identity(2, 2));
  const ComplexMatrix expected = Complex(0.0, std::numbers::pi / 2) * ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(log_unitary(quarter) - expected) < 1e-12);

  Rng rng(13);
  std::uniform_real_distribution<double> angle(-std::numbers::pi + 1e-3, std::numbers::pi - 1e-3);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 10;
    const ComplexMatrix v = haar_matrix(n, rng);
    ComplexVector theta(n), phases(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      theta(j) = Complex(0.0, angle(rng));
      phases(j) = std::exp(theta(j));
    }
    const UnitaryMatrix u = UnitaryMatrix::from(v * phases.asDiagonal() * v.adjoint());
    const ComplexMatrix oracle = v * theta.asDiagonal() * v.adjoint();
    CHECK(max_abs(log_unitary(u) - oracle) < 1e-8);
  }
}

TEST_CASE("exp inverts log on random unitaries") {
  Rng rng(17);
  for (Eigen::Index n = 1; n <= 16; ++n) {
    const UnitaryMatrix u = haar_unitary(n, rng);
    const ComplexMatrix l = log_unitary(u);
    // -iL is Hermitian with spectrum in (-pi, pi].
    const ComplexMatrix h = Complex(0.0, -1.0) * l;
    CHECK(max_abs(h - h.adjoint()) < 1e-10);
    CHECK(max_abs(exp_i_hermitian(h).matrix() - u.matrix()) < 1e-8);
    CHECK(max_abs(expi(h) - u.matrix()) < 1e-8);
  }
}

TEST_CASE("logarithm branch cut") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(1, 1) = -1.0;
  const UnitaryMatrix u = UnitaryMatrix::from(m);
  try {
    log_unitary(u);
    FAIL("expected BranchCut");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kBranchCut);
  }
  const ComplexMatrix l = log_unitary(u, true);
  CHECK(std::abs(l(1, 1) - Complex(0.0, std::numbers::pi)) < 1e-12);
}

TEST_CASE("joint diagonalization of commuting normal matrices") {
  Rng rng(19);
  const Eigen::Index n = 6;
  const ComplexMatrix q = haar_matrix(n, rng);
  ComplexVector a(n), b(n);
  // Repeated eigenvalues of A force the restriction step.
  const Complex av[] = {1.0, 1.0, 1.0, -1.0, -1.0, Complex(0, 1)};
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j) = av[j];
    b(j) = turn(0.1 * static_cast<double>(j));
  }
  const ComplexMatrix am = q * a.asDiagonal() * q.adjoint();
  const ComplexMatrix bm = q * b.asDiagonal() * q.adjoint();
  const JointEigen joint = joint_diagonalize(am, bm);
  ComplexVector fa(n), fb(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    fa(j) = joint.first[static_cast<std::size_t>(j)];
    fb(j) = joint.second[static_cast<std::size_t>(j)];
  }
  const ComplexMatrix& v = joint.vectors;
  CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(n, n)) < 1e-10);
  CHECK(max_abs(v * fa.asDiagonal() * v.adjoint() - am) < 1e-10);
  CHECK(max_abs(v * fb.asDiagonal() * v.adjoint() - bm) < 1e-10);
}

TEST_CASE("single-linkage clusters") {
  const std::vector<Complex> values = {1.0, 1.0 + 1e-9, 2.0, 1.0 + 2e-9, 3.0};
  const auto groups = cluster_values(values, 1e-8);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0] == std::vector<std::size_t>{0, 1, 3});
  CHECK(groups[1] == std::vector<std::size_t>{2});
  CHECK(groups[2] == std::vector<std::size_t>{4});
}

}  // TEST_SUITE
