#pragma once

// Random matrix generators and brute-force oracles shared by the tests. The
// oracles deliberately avoid the library code paths they check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "rohlin/linalg.hpp"
#include "rohlin/torus.hpp"

namespace rohlin::testing {

using Rng = std::mt19937_64;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of
/// R's diagonal moved into Q.
inline ComplexMatrix haar_matrix(Eigen::Index n, Rng& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

inline UnitaryMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  return UnitaryMatrix::from(haar_matrix(n, rng));
}

inline ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// exp(i H) for Hermitian H through the self-adjoint eigensolver.
inline ComplexMatrix expi(const ComplexMatrix& h) {
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexVector phases(h.rows());
  for (Eigen::Index j = 0; j < h.rows(); ++j) phases(j) = std::polar(1.0, es.eigenvalues()(j));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Triple-loop product, independent of Eigen's kernels.
inline ComplexMatrix naive_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Largest singular value from the Gram matrix's eigenvalues.
inline double gram_norm(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Exhaustive minimum over permutations of the largest cost[i][perm[i]].
inline double brute_bottleneck(const std::vector<std::vector<double>>& cost) {
  std::vector<std::size_t> perm(cost.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) worst = std::max(worst, cost[i][perm[i]]);
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Branch and bound over partial assignments; exact, usable up to ~15 rows.
inline double backtrack_bottleneck(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  std::vector<bool> used(n, false);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> go = [&](std::size_t row, double worst) {
    if (worst >= best) return;
    if (row == n) {
      best = worst;
      return;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return cost[row][a] < cost[row][b]; });
    for (std::size_t c : order) {
      if (used[c]) continue;
      used[c] = true;
      go(row + 1, std::max(worst, cost[row][c]));
      used[c] = false;
    }
  };
  go(0, 0.0);
  return best;
}

inline std::vector<std::vector<double>> torus_costs(const std::vector<TorusPoint>& a,
                                                   const std::vector<TorusPoint>& b) {
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < a[i].coords.size(); ++c) {
        d = std::max(d, std::abs(a[i].coords[c] - b[j].coords[c]));
      }
      cost[i][j] = d;
    }
  }
  return cost;
}

inline Complex turn(double t) { return std::polar(1.0, kTwoPi * t); }


/// m mutually orthogonal rank-r projections in dimension m*r + extra, and a
/// unitary that permutes them cyclically, both conjugated by a Haar unitary.
struct CyclicSystem {
  std::vector<ComplexMatrix> projs;
  ComplexMatrix w;
};

inline CyclicSystem random_cyclic_system(Eigen::Index m, Eigen::Index r, Eigen::Index extra,
                                         Rng& rng) {
  const Eigen::Index d = m * r + extra;
  const ComplexMatrix g = haar_matrix(d, rng);
  CyclicSystem sys;
  for (Eigen::Index i = 0; i < m; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    for (Eigen::Index a = 0; a < r; ++a) e(i * r + a, i * r + a) = 1.0;
    sys.projs.push_back(g * e * g.adjoint());
  }
  ComplexMatrix perm = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index a = 0; a < r; ++a) perm(((i + 1) % m) * r + a, i * r + a) = 1.0;
  }
  if (extra > 0) perm.bottomRightCorner(extra, extra) = haar_matrix(extra, rng);
  // Random phases inside each block keep the permutation generic.
  ComplexVector phases(d);
  std::uniform_real_distribution<double> angle(0.0, 1.0);
  for (Eigen::Index j = 0; j < d; ++j) phases(j) = turn(angle(rng));
  sys.w = g * perm * phases.asDiagonal() * g.adjoint();
  return sys;
}

// For an exact pair with UV = mu VU the commutator l^-1 V U V* U* is the
// scalar conj(l mu), so the trace-log formula is n times its principal turn.
inline std::int64_t scalar_winding(std::int64_t n, double lambda_turns, double mu_turns) {
  double t = -(lambda_turns + mu_turns);
  t -= std::floor(t);
  if (t > 0.5) t -= 1.0;
  return std::llround(static_cast<double>(n) * t);
}

inline double defect_of(const UnitaryMatrix& u, const UnitaryMatrix& v, Complex lambda) {
  return gram_norm(lambda * u.matrix() * v.matrix() - v.matrix() * u.matrix());
}

struct Triple {
  UnitaryMatrix u, v;
  Complex lambda;
  std::int64_t expected;
};

// Conjugated shift/clock pair with scalar mu = e^{2 pi i j/n}, evaluated at a
// random n-th root lambda away from the hypothesis boundary, then perturbed.
inline std::optional<Triple> random_triple(Rng& rng, double spread) {
  std::uniform_int_distribution<std::int64_t> size(2, 12);
  const std::int64_t n = size(rng);
  std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
  const std::int64_t j = pick(rng), k = pick(rng);
  const double mu = static_cast<double>(j) / static_cast<double>(n);
  const double lt = static_cast<double>(k) / static_cast<double>(n);
  const Complex lambda = root_of_unity(k, n);
  if (std::abs(lambda * turn(mu) - 1.0) > 1.6) return std::nullopt;
  const ComplexMatrix g = haar_matrix(n, rng);
  const ComplexMatrix u0 = g * shift_matrix(n) * g.adjoint();
  const ComplexMatrix v0 = g * clock_matrix(n, Turns(-j, n)) * g.adjoint();
  const ComplexMatrix h = random_hermitian(n, rng);
  const ComplexMatrix u = expi(spread * h / gram_norm(h)) * u0;
  Triple t{UnitaryMatrix::from(u), UnitaryMatrix::from(v0), lambda, scalar_winding(n, lt, mu)};
  if (defect_of(t.u, t.v, lambda) > 1.9) return std::nullopt;
  return t;
}

}  // namespace rohlin::testing
