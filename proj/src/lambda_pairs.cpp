#include "rohlin/lambda_pairs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

constexpr double kOrbitTolerance = 1e-7;
constexpr double kClusterGap = 1e-8;

void require_same_size(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.size() != v.size()) throw Error(Errc::kDimensionMismatch, "pair sizes differ");
}

Complex on_circle(Complex z) { return z / std::abs(z); }

ComplexMatrix diagonal_of(const std::vector<Complex>& values) {
  ComplexVector diag(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) diag(static_cast<Eigen::Index>(i)) = values[i];
  return diag.asDiagonal();
}

ComplexMatrix power(const ComplexMatrix& m, std::int64_t k) {
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  ComplexMatrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

// Orthonormal basis (in the coordinates of an r-dimensional space) of the
// complement of the orthonormal columns of c.
ComplexMatrix complement(const ComplexMatrix& c) {
  const Eigen::Index r = c.rows();
  const Eigen::Index keep = r - c.cols();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(c * c.adjoint());
  // Eigenvalues ascend; the first `keep` are the (near) zero ones.
  return solver.eigenvectors().leftCols(keep);
}

struct Candidate {
  Eigen::Index column;
  std::size_t cluster_size;
  double kappa_turns;
  double mu_turns;
};

// Candidates for the next orbit seed: descending cluster size, ties by the
// arguments of (kappa, mu).
std::vector<Candidate> seed_order(const JointEigen& joint) {
  const std::size_t r = joint.first.size();
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const double d = std::max(std::abs(joint.first[i] - joint.first[j]),
                                std::abs(joint.second[i] - joint.second[j]));
      if (d <= kClusterGap) parent[find(i)] = find(j);
    }
  }
  std::vector<std::size_t> sizes(r, 0);
  for (std::size_t i = 0; i < r; ++i) ++sizes[find(i)];

  std::vector<Candidate> out;
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    out.push_back({static_cast<Eigen::Index>(i), sizes[find(i)], turns_of(joint.first[i]),
                   turns_of(joint.second[i])});
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.cluster_size != b.cluster_size) return a.cluster_size > b.cluster_size;
    if (a.kappa_turns != b.kappa_turns) return a.kappa_turns < b.kappa_turns;
    return a.mu_turns < b.mu_turns;
  });
  return out;
}

}  // namespace

Complex commutation_scalar(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_size(u, v);
  const ComplexMatrix c = u.matrix() * v.matrix() * u.matrix().adjoint() * v.matrix().adjoint();
  const auto n = static_cast<double>(c.rows());
  const Complex lambda = c.trace() / n;
  const double off = operator_norm(c - lambda * ComplexMatrix::Identity(c.rows(), c.cols()));
  if (off > kCommutatorTolerance || std::abs(std::abs(lambda) - 1.0) > kCommutatorTolerance) {
    throw Error(Errc::kNotScalarCommutator,
                "U V U* V* is not a scalar multiple of the identity (deviation " +
                    std::to_string(off) + ")");
  }
  return lambda;
}

Turns snap_root_of_unity(Complex z, std::int64_t n, double tolerance) {
  if (n <= 0) throw Error(Errc::kInvalidArgument, "root order must be positive");
  auto k = static_cast<std::int64_t>(std::llround(turns_of(z) * static_cast<double>(n)));
  k %= n;
  if (std::abs(z - root_of_unity(k, n)) > tolerance) {
    throw Error(Errc::kSnapFailure, "scalar is not within tolerance of an " +
                                        std::to_string(n) + "-th root of unity");
  }
  return Turns(k, n);
}

LambdaPair LambdaPair::from(UnitaryMatrix u, UnitaryMatrix v) {
  const Complex lambda = commutation_scalar(u, v);
  const Turns angle = snap_root_of_unity(lambda, u.size());
  const ComplexMatrix defect =
      u.matrix() * v.matrix() - angle.phase() * (v.matrix() * u.matrix());
  if (operator_norm(defect) > kCommutatorTolerance) {
    throw Error(Errc::kNotScalarCommutator, "pair does not commute up to the snapped scalar");
  }
  return LambdaPair(std::move(u), std::move(v), angle);
}

JointSpectrum joint_spectrum(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_size(u, v);
  const ComplexMatrix& a = u.matrix();
  const ComplexMatrix& b = v.matrix();
  if (operator_norm(a * b - b * a) > kCommutatorTolerance) {
    throw Error(Errc::kNonCommuting, "joint spectrum needs commuting unitaries");
  }
  JointEigen joint = joint_diagonalize(a, b, kClusterGap);
  std::vector<TorusPoint> points;
  points.reserve(joint.first.size());
  for (std::size_t j = 0; j < joint.first.size(); ++j) {
    points.push_back({{on_circle(joint.first[j]), on_circle(joint.second[j])}});
  }
  return {TorusSequence(2, points), std::move(joint.vectors)};
}

CanonicalDecomposition decompose_pair(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_size(u, v);
  const Complex lambda = commutation_scalar(u, v);
  const Eigen::Index n = u.size();
  const Turns angle = snap_root_of_unity(lambda, n);
  const std::int64_t p = angle.den();
  const Eigen::Index m = n / p;

  const ComplexMatrix& um = u.matrix();
  const ComplexMatrix up = power(um, p);

  CanonicalDecomposition d;
  d.p = p;
  d.angle = angle;
  ComplexMatrix basis(n, n);
  ComplexMatrix remaining = ComplexMatrix::Identity(n, n);  // orthonormal columns

  for (Eigen::Index orbit = 0; orbit < m; ++orbit) {
    const ComplexMatrix a = remaining.adjoint() * up * remaining;
    const ComplexMatrix b = remaining.adjoint() * v.matrix() * remaining;
    const JointEigen joint = joint_diagonalize(a, b, kClusterGap);

    bool placed = false;
    for (const Candidate& c : seed_order(joint)) {
      const ComplexVector xi = remaining * joint.vectors.col(c.column);
      const Complex kappa = on_circle(joint.first[static_cast<std::size_t>(c.column)]);
      const Complex mu = on_circle(joint.second[static_cast<std::size_t>(c.column)]);
      const Complex omega =
          std::polar(1.0, 2.0 * std::numbers::pi * turns_of(kappa) / static_cast<double>(p));

      ComplexMatrix orbit_vectors(n, p);
      orbit_vectors.col(0) = xi;
      for (std::int64_t j = 1; j < p; ++j) {
        orbit_vectors.col(j) = (um * orbit_vectors.col(j - 1)) / omega;
      }
      const ComplexMatrix gram = orbit_vectors.adjoint() * orbit_vectors;
      const double err = (gram - ComplexMatrix::Identity(p, p)).cwiseAbs().maxCoeff();
      // The orbit must also be orthogonal to everything already placed.
      const double leak =
          orbit == 0 ? 0.0
                     : (basis.leftCols(orbit * p).adjoint() * orbit_vectors).cwiseAbs().maxCoeff();
      if (err > kOrbitTolerance || leak > kOrbitTolerance) continue;

      for (std::int64_t j = 0; j < p; ++j) basis.col(orbit * p + j) = orbit_vectors.col(j);
      d.omegas.push_back(omega);
      d.mus.push_back(mu);
      if (orbit + 1 < m) remaining = remaining * complement(remaining.adjoint() * orbit_vectors);
      placed = true;
      break;
    }
    if (!placed) {
      throw Error(Errc::kDegenerateOrbit,
                  "no orthonormal orbit found in the remaining subspace (orbit " +
                      std::to_string(orbit) + ")");
    }
  }

  // basis column orbit*p + a holds b_a of that orbit; W rows follow the
  // (a, orbit) ordering of S(p) (x) diag(omegas).
  ComplexMatrix reordered(n, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (std::int64_t a = 0; a < p; ++a) reordered.col(a * m + i) = basis.col(i * p + a);
  }
  d.w = polar_unitary(reordered.adjoint());
  return d;
}

ComplexMatrix canonical_u(const CanonicalDecomposition& d) {
  return kron(shift_matrix(d.p), diagonal_of(d.omegas));
}

ComplexMatrix canonical_v(const CanonicalDecomposition& d) {
  return kron(clock_matrix(d.p, Turns(-d.angle.num(), d.angle.den())), diagonal_of(d.mus));
}

LambdaPair reconstruct(const CanonicalDecomposition& d) {
  if (d.omegas.size() != d.mus.size() || d.omegas.empty()) {
    throw Error(Errc::kInvalidArgument, "omegas and mus must be nonempty and equally long");
  }
  if (d.angle.den() != d.p) throw Error(Errc::kInvalidArgument, "lambda must have order p");
  const ComplexMatrix& w = d.w.matrix();
  if (w.rows() != d.p * static_cast<Eigen::Index>(d.omegas.size())) {
    throw Error(Errc::kDimensionMismatch, "conjugator size must be p * len(omegas)");
  }
  const ComplexMatrix u = w.adjoint() * canonical_u(d) * w;
  const ComplexMatrix v = w.adjoint() * canonical_v(d) * w;
  return LambdaPair::from(UnitaryMatrix::from(u, 1e-8), UnitaryMatrix::from(v, 1e-8));
}

}  // namespace rohlin
