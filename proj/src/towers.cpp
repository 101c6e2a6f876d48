#include "rohlin/towers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

constexpr double kProjectionTolerance = 1e-10;

// A copy of F whose lattice position j = 1 sits at ambient index `base`,
// with consecutive positions n apart.
struct Placement {
  std::int64_t base;
};

// ||A - B|| for two placements of the same real symmetric F on a lattice of
// step n. Only rows where the difference is nonzero are kept before the
// eigenvalue solve.
double placement_distance(const Eigen::MatrixXd& f, std::int64_t n, Placement a, Placement b) {
  if (((a.base - b.base) % n + n) % n != 0) {
    // Disjoint supports: the difference is A (+) (-B), both projections.
    return f.isZero(0.0) ? 0.0 : 1.0;
  }
  const std::int64_t shift = (a.base - b.base) / n;  // lattice units
  const Eigen::Index k = f.rows();
  const Eigen::Index span = k + static_cast<Eigen::Index>(std::abs(shift));
  const Eigen::Index off_a = shift > 0 ? shift : 0;
  const Eigen::Index off_b = shift > 0 ? 0 : -shift;
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(span, span);
  diff.block(off_a, off_a, k, k) += f;
  diff.block(off_b, off_b, k, k) -= f;

  std::vector<Eigen::Index> live;
  for (Eigen::Index r = 0; r < span; ++r) {
    if (!diff.row(r).isZero(0.0)) live.push_back(r);
  }
  if (live.empty()) return 0.0;
  const auto m = static_cast<Eigen::Index>(live.size());
  Eigen::MatrixXd packed(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) packed(r, c) = diff(live[r], live[c]);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(packed, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::int64_t target_of(std::size_t i, std::size_t m, IntertwinerMode mode) {
  return static_cast<std::int64_t>(mode == IntertwinerMode::kShift ? (i + 1) % m : i);
}

}  // namespace

ComplexMatrix TowerFamily::projection(std::int64_t i) const {
  if (i < 0 || i >= params_.n) throw Error(Errc::kInvalidArgument, "projection index out of range");
  const std::int64_t big_n = ambient();
  ComplexMatrix e = ComplexMatrix::Zero(big_n, big_n);
  const Eigen::Index k = f_.rows();
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      if (f_(a, b) != 0.0) e(index(i, a + 1), index(i, b + 1)) = f_(a, b);
    }
  }
  return e;
}

TowerFamily build_tower(const TowerParams& p) {
  if (p.n < 1) throw Error(Errc::kInvalidArgument, "tower count n must be positive");
  if (!(1 < p.k && p.k < p.l)) throw Error(Errc::kInvalidArgument, "tower needs 1 < k < l");
  if (p.l > kMaxTowerDimension || p.ambient() > kMaxTowerDimension) {
    throw Error(Errc::kInvalidArgument,
                "N = n(2k+l-1) exceeds " + std::to_string(kMaxTowerDimension));
  }
  const std::int64_t lattice = p.lattice();
  const auto kd = static_cast<double>(p.k);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(lattice, lattice);
  // Ramp: rank-one blocks on lattice positions (i, k + l + i).
  for (std::int64_t i = 1; i < p.k; ++i) {
    const std::int64_t a = i - 1;
    const std::int64_t b = p.k + p.l + i - 1;
    f(a, a) = static_cast<double>(i) / kd;
    f(b, b) = static_cast<double>(p.k - i) / kd;
    f(a, b) = f(b, a) = std::sqrt(static_cast<double>(i * (p.k - i))) / kd;
  }
  // Plateau: positions k..k+l.
  for (std::int64_t j = p.k; j <= p.k + p.l; ++j) f(j - 1, j - 1) = 1.0;

  TowerFamily t(p, std::move(f));
  for (std::int64_t i = 0; i < p.n; ++i) {
    const std::int64_t lo = t.index(i, 1), hi = t.index(i, lattice);
    if (lo < 0 || hi > p.ambient() - 1) {
      throw Error(Errc::kIndexOutOfWindow,
                  "e_" + std::to_string(i) + " leaves the window [0, N-1]");
    }
  }
  return t;
}

TowerMetrics tower_metrics(const TowerFamily& t) {
  const std::int64_t n = t.params().n;
  TowerMetrics m;
  m.steps.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    // sigma(e_i) has base i + 1; e_{i+1 mod n} has base (i + 1) mod n.
    const Placement shifted{i + 1};
    const Placement next{(i + 1) % n};
    m.steps[static_cast<std::size_t>(i)] = placement_distance(t.compressed(), n, shifted, next);
  }
  m.defect = *std::max_element(m.steps.begin(), m.steps.end());
  const std::int64_t num = n * t.rank();
  const std::int64_t den = t.ambient();
  const std::int64_t g = std::gcd(num, den);
  m.coverage = {num / g, den / g};
  return m;
}

TowerParams search_tower_params(std::int64_t n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::kInvalidArgument, "eps must lie in (0, 1)");
  if (n < 1) throw Error(Errc::kInvalidArgument, "tower count n must be positive");
  static constexpr std::int64_t kRatios[] = {5, 10, 20};
  std::optional<TowerParams> best;
  for (std::int64_t k = 2; n * (2 * k + kRatios[0] * k - 1) <= kMaxTowerDimension; k *= 2) {
    for (std::int64_t c : kRatios) {
      const TowerParams p{n, k, c * k};
      if (p.ambient() > kMaxTowerDimension) continue;
      if (best && p.ambient() >= best->ambient()) continue;
      const TowerMetrics m = tower_metrics(build_tower(p));
      if (m.defect < eps && m.coverage.value() > 1.0 - eps) best = p;
    }
  }
  if (!best) {
    throw Error(Errc::kCapExceeded, "no tower with N <= " + std::to_string(kMaxTowerDimension) +
                                        " reaches eps = " + std::to_string(eps));
  }
  return *best;
}

double intertwining_defect(const std::vector<ComplexMatrix>& projs, const ComplexMatrix& w,
                           IntertwinerMode mode) {
  double worst = 0.0;
  for (std::size_t i = 0; i < projs.size(); ++i) {
    const ComplexMatrix q = w * projs[i] * w.adjoint();
    worst = std::max(worst, operator_norm(q - projs[static_cast<std::size_t>(
                                                  target_of(i, projs.size(), mode))]));
  }
  return worst;
}

UnitaryMatrix exact_intertwiner(const std::vector<ComplexMatrix>& projs, const UnitaryMatrix& w,
                                IntertwinerMode mode) {
  if (projs.empty()) throw Error(Errc::kInvalidArgument, "need at least one projection");
  const Eigen::Index d = w.size();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix sum_p = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projs.size(); ++i) {
    const ComplexMatrix& p = projs[i];
    if (p.rows() != d || p.cols() != d) {
      throw Error(Errc::kDimensionMismatch, "projection size differs from w");
    }
    if (operator_norm(p * p - p) > kProjectionTolerance ||
        operator_norm(p - p.adjoint()) > kProjectionTolerance) {
      throw Error(Errc::kInvalidArgument, "input " + std::to_string(i) + " is not a projection");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (operator_norm(p * projs[j]) > kProjectionTolerance) {
        throw Error(Errc::kInvalidArgument, "projections are not mutually orthogonal");
      }
    }
    sum_p += p;
  }

  const auto m = static_cast<double>(projs.size());
  const double defect = intertwining_defect(projs, w.matrix(), mode);
  if (defect >= 1.0 / (8.0 * m)) {
    throw Error(Errc::kDefectTooLarge, "intertwining defect " + std::to_string(defect) +
                                           " is not below 1/(8m)");
  }

  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  ComplexMatrix sum_q = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projs.size(); ++i) {
    const ComplexMatrix q = w.matrix() * projs[i] * w.matrix().adjoint();
    x += projs[static_cast<std::size_t>(target_of(i, projs.size(), mode))] * q;
    sum_q += q;
  }
  x += (id - sum_p) * (id - sum_q);
  return polar_unitary(x);
}

}  // namespace rohlin
