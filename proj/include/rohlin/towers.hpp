#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rohlin/linalg.hpp"

namespace rohlin {

inline constexpr std::int64_t kMaxTowerDimension = 4096;

struct TowerParams {
  std::int64_t n = 1;  // number of projections
  std::int64_t k = 2;  // ramp length
  std::int64_t l = 3;  // plateau length

  /// N = n (2k + l - 1)
  std::int64_t ambient() const { return n * (2 * k + l - 1); }
  /// Lattice length K = 2k + l - 1; f lives on the indices n*j, j = 1..K.
  std::int64_t lattice() const { return 2 * k + l - 1; }

  friend bool operator==(const TowerParams&, const TowerParams&) = default;
};

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Projections e_0..e_{n-1} of an N-dimensional window of l^2(Z), with
/// e_i = sigma^{i-n}(f) for the index shift sigma. All of them are copies of
/// one real symmetric K x K matrix F (the compressed f): entry (a, b) of F sits
/// at (n a + i, n b + i) in e_i.
class TowerFamily {
 public:
  const TowerParams& params() const noexcept { return params_; }
  std::int64_t ambient() const noexcept { return params_.ambient(); }

  /// F indexed by lattice position j - 1, j = 1..K.
  const Eigen::MatrixXd& compressed() const noexcept { return f_; }

  /// Ambient index of lattice position j (1-based) in e_i: n (j - 1) + i.
  std::int64_t index(std::int64_t i, std::int64_t j) const { return params_.n * (j - 1) + i; }

  /// Dense e_i in M_N. Costs N^2 storage; intended for small towers and tests.
  ComplexMatrix projection(std::int64_t i) const;

  /// rank e_0 = trace F, counted exactly: (k - 1) ramp blocks of rank one
  /// plus the (l + 1)-dimensional plateau.
  std::int64_t rank() const { return params_.k + params_.l; }

 private:
  friend TowerFamily build_tower(const TowerParams& p);
  TowerFamily(TowerParams p, Eigen::MatrixXd f) : params_(p), f_(std::move(f)) {}

  TowerParams params_;
  Eigen::MatrixXd f_;
};

/// Requires n >= 1, 1 < k < l and N <= kMaxTowerDimension
/// (kInvalidArgument). kIndexOutOfWindow if any support leaves [0, N-1].
TowerFamily build_tower(const TowerParams& p);

struct TowerMetrics {
  /// max_i ||sigma(e_i) - e_{i+1}||, e_n = e_0.
  double defect = 0.0;
  /// Per-step terms; entries i < n-1 are exactly zero.
  std::vector<double> steps;
  /// n rank(e_0) / N, reduced.
  Fraction coverage;
};

/// sigma is the bilateral shift of l^2(Z): sigma(e_{n-1}) = f occupies the
/// index N, one past the window, and is compared with e_0 there.
TowerMetrics tower_metrics(const TowerFamily& t);

/// Smallest-N parameters with defect < eps and coverage > 1 - eps, searching
/// k = 2, 4, 8, ... and l = c k for c in {5, 10, 20} under N <= 4096 (ties go
/// to the smaller k, then the smaller l). kCapExceeded if none qualifies.
TowerParams search_tower_params(std::int64_t n, double eps);

enum class IntertwinerMode {
  kShift,  // P_i is carried to P_{i+1}, cyclically
  kFix,    // P_i is carried back to P_i
};

/// Given orthogonal projections P_0..P_{m-1} and a unitary w whose
/// conjugates Q_i = w P_i w* are close to the targets P_{t(i)}, returns the
/// unitary part u of
///   x = sum_i P_{t(i)} Q_i + (1 - sum P)(1 - sum Q),
/// which satisfies u Q_i u* = P_{t(i)} exactly. Throws kDefectTooLarge unless
/// max_i ||Q_i - P_{t(i)}|| < 1/(8m).
UnitaryMatrix exact_intertwiner(const std::vector<ComplexMatrix>& projs, const UnitaryMatrix& w,
                                IntertwinerMode mode);

/// max_i ||w P_i w* - P_{t(i)}||.
double intertwining_defect(const std::vector<ComplexMatrix>& projs, const ComplexMatrix& w,
                           IntertwinerMode mode);

}  // namespace rohlin
