#include "rohlin/invariants.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <string>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHypothesisMargin = 1e-6;
constexpr double kScalarTolerance = 1e-8;
constexpr double kIntegerTolerance = 1e-6;
constexpr int kInitialSegments = 64;
constexpr int kMaxDepth = 40;

// det(m) / |det(m)| from an LU factorization; avoids under/overflow.
Complex det_phase(const ComplexMatrix& m) {
  const Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const ComplexMatrix& packed = lu.matrixLU();
  Complex phase = lu.permutationP().determinant();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const Complex d = packed(i, i);
    const double mag = std::abs(d);
    if (mag == 0.0) throw Error(Errc::kMethodDisagreement, "determinant path hits zero");
    phase *= d / mag;
  }
  return phase;
}

class DeterminantPath {
 public:
  DeterminantPath(ComplexMatrix start, ComplexMatrix end)
      : start_(std::move(start)), end_(std::move(end)) {}

  Complex phase(double t) const { return det_phase((1.0 - t) * start_ + t * end_); }

  // Total argument change on [a, b], bisecting until every piece moves the
  // argument by less than pi/4.
  double argument_change(double a, double b, Complex pa, Complex pb, int depth) const {
    const double step = std::arg(pb / pa);
    if (std::abs(step) < std::numbers::pi / 4) return step;
    if (depth >= kMaxDepth) {
      throw Error(Errc::kMethodDisagreement, "argument tracking failed to resolve the path");
    }
    const double mid = 0.5 * (a + b);
    const Complex pm = phase(mid);
    return argument_change(a, mid, pa, pm, depth + 1) + argument_change(mid, b, pm, pb, depth + 1);
  }

 private:
  ComplexMatrix start_, end_;
};

double trace_turns(const ComplexMatrix& unitary) {
  const NormalEigen eig = eigen_normal(unitary);
  double total = 0.0;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) total += std::arg(eig.values(j));
  return total / kTwoPi;
}

}  // namespace

WindingResult winding_number(const UnitaryMatrix& u, const UnitaryMatrix& v, Complex lambda) {
  if (u.size() != v.size()) throw Error(Errc::kDimensionMismatch, "pair sizes differ");
  if (std::abs(std::abs(lambda) - 1.0) > kScalarTolerance) {
    throw Error(Errc::kInvalidArgument, "lambda must have modulus 1");
  }
  const Eigen::Index n = u.size();
  const ComplexMatrix uv = u.matrix() * v.matrix();
  const ComplexMatrix vu = v.matrix() * u.matrix();
  WindingResult result;
  result.defect = operator_norm(lambda * uv - vu);
  if (result.defect >= 2.0 - kHypothesisMargin) {
    throw Error(Errc::kHypothesisViolated,
                "||lambda UV - VU|| = " + std::to_string(result.defect) + " is not below 2");
  }
  if (std::abs(std::pow(lambda, static_cast<double>(n)) - 1.0) > kScalarTolerance) {
    throw Error(Errc::kHypothesisViolated, "lambda^n != 1: the determinant path is not closed");
  }

  const DeterminantPath path(lambda * uv, vu);
  double turns = 0.0;
  Complex prev = path.phase(0.0);
  for (int s = 1; s <= kInitialSegments; ++s) {
    const double a = static_cast<double>(s - 1) / kInitialSegments;
    const double b = static_cast<double>(s) / kInitialSegments;
    const Complex next = path.phase(b);
    turns += path.argument_change(a, b, prev, next, 0);
    prev = next;
  }
  turns /= kTwoPi;

  const ComplexMatrix commutator = (vu * uv.adjoint()) / lambda;  // lambda^-1 V U V* U*
  const double trace = trace_turns(commutator);

  const double path_value = std::round(turns);
  const double trace_value = std::round(trace);
  if (std::abs(turns - path_value) > kIntegerTolerance ||
      std::abs(trace - trace_value) > kIntegerTolerance || path_value != trace_value) {
    throw Error(Errc::kMethodDisagreement, "path winding " + std::to_string(turns) +
                                               " vs trace formula " + std::to_string(trace));
  }
  result.value = static_cast<std::int64_t>(path_value);
  result.method_agreement = true;
  return result;
}

UnitaryPath::UnitaryPath(std::vector<double> times, std::vector<UnitaryMatrix> samples)
    : times_(std::move(times)), samples_(std::move(samples)) {
  if (samples_.empty() || samples_.size() != times_.size()) {
    throw Error(Errc::kInvalidArgument, "a path needs one time per sample");
  }
  if (times_.front() != 0.0 || times_.back() != 1.0) {
    throw Error(Errc::kInvalidArgument, "path parameter must run from 0 to 1");
  }
  for (std::size_t j = 1; j < samples_.size(); ++j) {
    if (!(times_[j] > times_[j - 1])) {
      throw Error(Errc::kInvalidArgument, "path times must increase strictly");
    }
    if (samples_[j].size() != samples_[0].size()) {
      throw Error(Errc::kDimensionMismatch, "path samples have different sizes");
    }
    const double step = operator_norm(samples_[j].matrix() - samples_[j - 1].matrix());
    if (step >= kMaxPathStep) {
      throw Error(Errc::kStepTooLarge,
                  "step " + std::to_string(j) + " has norm " + std::to_string(step));
    }
  }
}

UnitaryPath UnitaryPath::concatenate(const UnitaryPath& a, const UnitaryPath& b) {
  if (a.size() != b.size()) throw Error(Errc::kDimensionMismatch, "paths have different sizes");
  if (operator_norm(a.samples_.back().matrix() - b.samples_.front().matrix()) > 1e-9) {
    throw Error(Errc::kInvalidArgument, "first path must end where the second starts");
  }
  std::vector<double> times;
  std::vector<UnitaryMatrix> samples;
  for (std::size_t j = 0; j < a.samples_.size(); ++j) {
    times.push_back(0.5 * a.times_[j]);
    samples.push_back(a.samples_[j]);
  }
  for (std::size_t j = 1; j < b.samples_.size(); ++j) {
    times.push_back(0.5 + 0.5 * b.times_[j]);
    samples.push_back(b.samples_[j]);
  }
  times.back() = 1.0;
  return UnitaryPath(std::move(times), std::move(samples));
}

UnitaryPath UnitaryPath::left_multiply(const UnitaryMatrix& x) const {
  std::vector<UnitaryMatrix> samples;
  samples.reserve(samples_.size());
  for (const auto& s : samples_) samples.push_back(x * s);
  return UnitaryPath(times_, std::move(samples));
}

HSValue reduce_hs(double raw, std::int64_t denominator) {
  const auto d = static_cast<double>(denominator);
  double reduced = raw - std::floor(raw * d) / d;
  if (reduced < 0.0 || reduced >= 1.0 / d) reduced = 0.0;
  return {raw, denominator, reduced};
}

HSValue hs_determinant(const UnitaryPath& path, bool normalized) {
  const auto& samples = path.samples();
  double raw = 0.0;
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    raw += trace_turns(samples[j].matrix().adjoint() * samples[j + 1].matrix());
  }
  const std::int64_t d = normalized ? path.size() : 1;
  return reduce_hs(normalized ? raw / static_cast<double>(d) : raw, d);
}

HSValue hs_small(const UnitaryMatrix& x, bool normalized) {
  const Eigen::Index n = x.size();
  const double distance = operator_norm(x.matrix() - ComplexMatrix::Identity(n, n));
  if (distance >= 1.0) {
    throw Error(Errc::kTooFarFromIdentity,
                "||x - 1|| = " + std::to_string(distance) + " is not below 1");
  }
  const double raw = trace_turns(x.matrix());
  const std::int64_t d = normalized ? n : 1;
  return reduce_hs(normalized ? raw / static_cast<double>(n) : raw, d);
}

Complex cocycle_obstruction(const UnitaryMatrix& u1, const UnitaryMatrix& u2,
                            const UnitaryMatrix& a1, const UnitaryMatrix& a2) {
  const Eigen::Index n = u1.size();
  if (u2.size() != n || a1.size() != n || a2.size() != n) {
    throw Error(Errc::kDimensionMismatch, "all four unitaries must have the same size");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix& A1 = a1.matrix();
  const ComplexMatrix& A2 = a2.matrix();
  const ComplexMatrix group = A1 * A2 * A1.adjoint() * A2.adjoint();
  const Complex mu = group.trace() / static_cast<double>(n);
  if (operator_norm(group - mu * id) > kScalarTolerance) {
    throw Error(Errc::kHypothesisViolated, "Ad a1 and Ad a2 do not commute");
  }
  const ComplexMatrix& U1 = u1.matrix();
  const ComplexMatrix& U2 = u2.matrix();
  const ComplexMatrix x = (U2 * A2 * U1 * A2.adjoint()).adjoint() * U1 * (A1 * U2 * A1.adjoint());
  const Complex lambda = x.trace() / static_cast<double>(n);
  if (operator_norm(x - lambda * id) > kScalarTolerance) {
    throw Error(Errc::kNotScalar, "the cocycle expression is not a multiple of the identity");
  }
  return lambda;
}

}  // namespace rohlin
