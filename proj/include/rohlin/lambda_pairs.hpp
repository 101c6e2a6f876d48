#pragma once

#include <vector>

#include "rohlin/linalg.hpp"
#include "rohlin/torus.hpp"
#include "rohlin/turns.hpp"

namespace rohlin {

inline constexpr double kCommutatorTolerance = 1e-8;
inline constexpr double kSnapTolerance = 1e-6;

/// lambda = (1/n) Tr(U V U* V*), accepted only when U V U* V* = lambda I
/// within kCommutatorTolerance. Throws kNotScalarCommutator otherwise.
Complex commutation_scalar(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Nearest exp(2 pi i k / n) to z, as the reduced fraction k/n in [0, 1).
/// Throws kSnapFailure when that root is farther than `tolerance`.
Turns snap_root_of_unity(Complex z, std::int64_t n, double tolerance = kSnapTolerance);

/// Unitaries with U V = lambda V U, lambda an n-th root of unity.
class LambdaPair {
 public:
  /// Computes and snaps the commutation scalar.
  static LambdaPair from(UnitaryMatrix u, UnitaryMatrix v);

  const UnitaryMatrix& u() const noexcept { return u_; }
  const UnitaryMatrix& v() const noexcept { return v_; }
  /// lambda = exp(2 pi i angle), angle reduced in [0, 1).
  Turns angle() const noexcept { return angle_; }
  Complex lambda() const { return angle_.phase(); }
  Eigen::Index size() const noexcept { return u_.size(); }

 private:
  LambdaPair(UnitaryMatrix u, UnitaryMatrix v, Turns angle)
      : u_(std::move(u)), v_(std::move(v)), angle_(angle) {}

  UnitaryMatrix u_;
  UnitaryMatrix v_;
  Turns angle_;
};

/// Eigenvalue pairs (kappa, mu) of commuting unitaries, with the common
/// orthonormal eigenbasis that produced them (column j belongs to point j).
struct JointSpectrum {
  TorusSequence pairs;
  ComplexMatrix basis;
};

/// Throws kNonCommuting unless ||UV - VU|| <= kCommutatorTolerance.
JointSpectrum joint_spectrum(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// U = W* (S(p) (x) diag(omegas)) W and V = W* (Omega(p, 1/lambda) (x) diag(mus)) W.
/// Row a*m + i of W is the a-th vector of the i-th orbit (m = n/p).
struct CanonicalDecomposition {
  std::int64_t p = 1;
  Turns angle;  // lambda = exp(2 pi i angle), denominator p
  std::vector<Complex> omegas;
  std::vector<Complex> mus;
  UnitaryMatrix w = UnitaryMatrix::identity(1);

  Complex lambda() const { return angle.phase(); }
};

/// Splits a lambda-commuting pair into orbits of the clock-and-shift pair.
/// Each orbit starts from a common eigenvector xi of (U^p, V); omega is the
/// principal p-th root of U^p's eigenvalue. Throws kDegenerateOrbit when no
/// candidate in the current subspace yields an orthonormal orbit.
CanonicalDecomposition decompose_pair(const UnitaryMatrix& u, const UnitaryMatrix& v);

LambdaPair reconstruct(const CanonicalDecomposition& d);

/// Generators of the canonical form, before conjugation by W.
ComplexMatrix canonical_u(const CanonicalDecomposition& d);
ComplexMatrix canonical_v(const CanonicalDecomposition& d);

}  // namespace rohlin
