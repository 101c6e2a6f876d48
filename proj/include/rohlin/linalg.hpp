#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "rohlin/turns.hpp"

namespace rohlin {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kUnitarityTolerance = 1e-9;

/// A square complex matrix certified unitary at construction:
/// ||U*U - I|| <= kUnitarityTolerance (operator norm).
class UnitaryMatrix {
 public:
  /// Throws Error(kNotUnitary) when the certificate fails.
  static UnitaryMatrix from(ComplexMatrix m, double tolerance = kUnitarityTolerance);
  static UnitaryMatrix identity(Eigen::Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index size() const noexcept { return m_.rows(); }
  double unitarity_defect() const noexcept { return defect_; }

  UnitaryMatrix adjoint() const;
  UnitaryMatrix scaled(Complex phase) const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  UnitaryMatrix(ComplexMatrix m, double defect) : m_(std::move(m)), defect_(defect) {}

  ComplexMatrix m_;
  double defect_ = 0.0;
};

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Unitary factor u of X = u|X| (X square, smallest singular value > 1e-12).
/// Computed by scaled Newton iteration.
UnitaryMatrix polar_unitary(const ComplexMatrix& x);

/// Principal logarithm: returns L = i*H with H Hermitian, spectrum of H in
/// (-pi, pi] and exp(L) = U. An eigenvalue within 1e-9 of -1 throws
/// kBranchCut unless allow_boundary is set, in which case it maps to +pi.
ComplexMatrix log_unitary(const UnitaryMatrix& u, bool allow_boundary = false);

/// exp(i*s*H) for Hermitian H.
UnitaryMatrix exp_i_hermitian(const ComplexMatrix& h, double s = 1.0);

/// Spectral decomposition of a normal matrix, A = vectors * diag(values) * vectors^*.
struct NormalEigen {
  ComplexMatrix vectors;
  ComplexVector values;
};

/// Uses the complex Schur form, which is diagonal for normal input.
NormalEigen eigen_normal(const ComplexMatrix& a);

/// Simultaneous diagonalization of commuting normal matrices: diagonalize A,
/// then diagonalize B restricted to each eigenvalue cluster of A (single
/// linkage with the given gap).
struct JointEigen {
  ComplexMatrix vectors;
  std::vector<Complex> first;
  std::vector<Complex> second;
};

JointEigen joint_diagonalize(const ComplexMatrix& a, const ComplexMatrix& b,
                             double cluster_gap = 1e-8);

/// Groups values by single linkage: |z_i - z_j| <= gap puts i and j together.
/// Each group lists indices in increasing order; groups are ordered by their
/// smallest index.
std::vector<std::vector<std::size_t>> cluster_values(const std::vector<Complex>& values,
                                                     double gap);

// Canonical generators.

/// Cyclic shift: e_i -> e_{i+1 mod n}.
ComplexMatrix shift_matrix(Eigen::Index n);
/// diag(1, lambda, ..., lambda^{n-1}) with lambda = exp(2 pi i t).
ComplexMatrix clock_matrix(Eigen::Index n, Turns t);
ComplexMatrix phase_diagonal(const std::vector<Turns>& angles);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace rohlin
