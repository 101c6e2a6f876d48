#pragma once

#include <cstdint>
#include <vector>

#include "rohlin/linalg.hpp"

namespace rohlin {

struct WindingResult {
  std::int64_t value = 0;
  bool method_agreement = false;
  /// ||lambda U V - V U||
  double defect = 0.0;
};

/// Winding number of t -> det((1 - t) lambda U V + t V U) around 0.
///
/// Computed twice: by tracking the argument of the determinant along the
/// segment (steps halved until each changes the argument by less than pi/4),
/// and as (1/2 pi i) Tr log(lambda^-1 V U V* U*). Requires defect < 2 - 1e-6
/// and lambda^n = 1 (kHypothesisViolated); a mismatch between the two
/// methods throws kMethodDisagreement.
WindingResult winding_number(const UnitaryMatrix& u, const UnitaryMatrix& v, Complex lambda);

inline constexpr double kMaxPathStep = 0.5;

/// Samples xi(t_0), ..., xi(t_M) of a unitary path with 0 = t_0 < ... < t_M = 1.
/// Consecutive samples must satisfy ||xi(t_{j+1}) - xi(t_j)|| < kMaxPathStep,
/// otherwise kStepTooLarge.
class UnitaryPath {
 public:
  UnitaryPath(std::vector<double> times, std::vector<UnitaryMatrix> samples);

  /// Samples xi at M+1 equally spaced times.
  template <class F>
  static UnitaryPath sample(F&& xi, std::size_t steps) {
    std::vector<double> times;
    std::vector<UnitaryMatrix> samples;
    for (std::size_t j = 0; j <= steps; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(steps);
      times.push_back(t);
      samples.push_back(xi(t));
    }
    return UnitaryPath(std::move(times), std::move(samples));
  }

  /// `a` followed by `b`, each traversed at double speed. The end of `a`
  /// must equal the start of `b` within 1e-9.
  static UnitaryPath concatenate(const UnitaryPath& a, const UnitaryPath& b);

  /// Pointwise product t -> x * xi(t).
  UnitaryPath left_multiply(const UnitaryMatrix& x) const;

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<UnitaryMatrix>& samples() const noexcept { return samples_; }
  Eigen::Index size() const { return samples_.front().size(); }

 private:
  std::vector<double> times_;
  std::vector<UnitaryMatrix> samples_;
};

/// A value of the determinant together with its quotient by the subgroup
/// (1/d)Z of the reals (d = matrix size for the normalized trace, 1 for Tr).
struct HSValue {
  double raw = 0.0;
  std::int64_t denominator = 1;
  /// raw modulo (1/denominator)Z, in [0, 1/denominator).
  double reduced = 0.0;
};

HSValue reduce_hs(double raw, std::int64_t denominator);

/// sum_j (1/2 pi i) tau(log(xi(t_j)^* xi(t_{j+1}))), tau = Tr/d when
/// normalized, Tr otherwise. Exact for any sampling meeting the step bound.
HSValue hs_determinant(const UnitaryPath& path, bool normalized);

/// (1/2 pi i) tau(log x) for ||x - 1|| < 1 (kTooFarFromIdentity otherwise).
HSValue hs_small(const UnitaryMatrix& x, bool normalized);

/// The scalar lambda with (u2 a2 u1 a2*)* u1 (a1 u2 a1*) = lambda I.
/// Requires a1 a2 a1* a2* to be scalar (kHypothesisViolated); throws
/// kNotScalar when the expression is not a multiple of the identity.
Complex cocycle_obstruction(const UnitaryMatrix& u1, const UnitaryMatrix& u2,
                            const UnitaryMatrix& a1, const UnitaryMatrix& a2);

}  // namespace rohlin
