#include "rohlin/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rohlin/error.hpp"

namespace rohlin {

namespace {

double unitarity_defect_of(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return operator_norm(gram);
}

}  // namespace

UnitaryMatrix UnitaryMatrix::from(ComplexMatrix m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(Errc::kNotUnitary, "unitary matrix must be square and nonempty");
  }
  if (!m.allFinite()) throw Error(Errc::kNotUnitary, "matrix has non-finite entries");
  const double defect = unitarity_defect_of(m);
  if (!(defect <= tolerance)) {
    throw Error(Errc::kNotUnitary,
                "unitarity defect " + std::to_string(defect) + " exceeds tolerance");
  }
  return UnitaryMatrix(std::move(m), defect);
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index n) {
  return UnitaryMatrix(ComplexMatrix::Identity(n, n), 0.0);
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint(), defect_); }

UnitaryMatrix UnitaryMatrix::scaled(Complex phase) const {
  return UnitaryMatrix::from(m_ * phase);
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.size() != b.size()) throw Error(Errc::kDimensionMismatch, "unitary product size mismatch");
  return UnitaryMatrix::from(a.m_ * b.m_);
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const ComplexMatrix gram = m.cols() <= m.rows() ? ComplexMatrix(m.adjoint() * m)
                                                  : ComplexMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

UnitaryMatrix polar_unitary(const ComplexMatrix& x) {
  if (x.rows() != x.cols() || x.rows() == 0) {
    throw Error(Errc::kDimensionMismatch, "polar decomposition needs a square matrix");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  const double smallest = svd.singularValues().minCoeff();
  if (!(smallest > 1e-12)) {
    throw Error(Errc::kSingularInput, "matrix is numerically singular (smallest singular value " +
                                          std::to_string(smallest) + ")");
  }

  ComplexMatrix current = x;
  bool scaling = true;
  for (int iter = 0; iter < 100; ++iter) {
    const ComplexMatrix inverse = current.partialPivLu().inverse();
    double mu = 1.0;
    if (scaling) mu = std::sqrt(inverse.norm() / current.norm());
    ComplexMatrix next = 0.5 * (mu * current + inverse.adjoint() / mu);
    const double change = (next - current).norm() / next.norm();
    current = std::move(next);
    if (change < 1e-2) scaling = false;
    if (change < 1e-14) break;
  }
  return UnitaryMatrix::from(std::move(current));
}

NormalEigen eigen_normal(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::kDimensionMismatch, "eigen_normal needs a square matrix");
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  return {schur.matrixU(), schur.matrixT().diagonal()};
}

ComplexMatrix log_unitary(const UnitaryMatrix& u, bool allow_boundary) {
  const NormalEigen eig = eigen_normal(u.matrix());
  const Eigen::Index n = u.size();
  ComplexVector log_values(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex z = eig.values[j] / std::abs(eig.values[j]);
    if (std::abs(z + 1.0) < 1e-9) {
      if (!allow_boundary) {
        throw Error(Errc::kBranchCut, "eigenvalue at -1 lies on the branch cut of the principal log");
      }
      log_values[j] = Complex(0.0, std::numbers::pi);
    } else {
      log_values[j] = Complex(0.0, std::arg(z));
    }
  }
  return eig.vectors * log_values.asDiagonal() * eig.vectors.adjoint();
}

UnitaryMatrix exp_i_hermitian(const ComplexMatrix& h, double s) {
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::VectorXd& lambdas = solver.eigenvalues();
  ComplexVector phases(lambdas.size());
  for (Eigen::Index j = 0; j < lambdas.size(); ++j) phases[j] = std::polar(1.0, s * lambdas[j]);
  const ComplexMatrix& v = solver.eigenvectors();
  return UnitaryMatrix::from(v * phases.asDiagonal() * v.adjoint());
}

std::vector<std::vector<std::size_t>> cluster_values(const std::vector<Complex>& values,
                                                     double gap) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= gap) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return groups;
}

JointEigen joint_diagonalize(const ComplexMatrix& a, const ComplexMatrix& b, double cluster_gap) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw Error(Errc::kDimensionMismatch, "joint diagonalization needs equal square matrices");
  }
  NormalEigen first = eigen_normal(a);
  ComplexMatrix q = std::move(first.vectors);
  std::vector<Complex> a_values(first.values.data(), first.values.data() + first.values.size());

  for (const auto& group : cluster_values(a_values, cluster_gap)) {
    if (group.size() < 2) continue;
    const auto m = static_cast<Eigen::Index>(group.size());
    ComplexMatrix block(q.rows(), m);
    for (Eigen::Index c = 0; c < m; ++c) block.col(c) = q.col(static_cast<Eigen::Index>(group[c]));
    const ComplexMatrix restricted = block.adjoint() * b * block;
    const NormalEigen inner = eigen_normal(restricted);
    const ComplexMatrix rotated = block * inner.vectors;
    for (Eigen::Index c = 0; c < m; ++c) q.col(static_cast<Eigen::Index>(group[c])) = rotated.col(c);
  }

  JointEigen out;
  const Eigen::Index n = a.rows();
  out.first.resize(static_cast<std::size_t>(n));
  out.second.resize(static_cast<std::size_t>(n));
  const ComplexMatrix aq = a * q;
  const ComplexMatrix bq = b * q;
  for (Eigen::Index j = 0; j < n; ++j) {
    out.first[static_cast<std::size_t>(j)] = q.col(j).dot(aq.col(j));
    out.second[static_cast<std::size_t>(j)] = q.col(j).dot(bq.col(j));
  }
  out.vectors = std::move(q);
  return out;
}

ComplexMatrix shift_matrix(Eigen::Index n) {
  if (n <= 0) throw Error(Errc::kInvalidArgument, "S(n) needs n >= 1");
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) s((i + 1) % n, i) = 1.0;
  return s;
}

ComplexMatrix clock_matrix(Eigen::Index n, Turns t) {
  if (n <= 0) throw Error(Errc::kInvalidArgument, "Omega(n, t) needs n >= 1");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const __int128 power = static_cast<__int128>(j) * t.num();
    const auto reduced = static_cast<std::int64_t>(power % t.den());
    m(j, j) = root_of_unity(reduced, t.den());
  }
  return m;
}

ComplexMatrix phase_diagonal(const std::vector<Turns>& angles) {
  if (angles.empty()) throw Error(Errc::kInvalidArgument, "diag() needs at least one angle");
  const auto n = static_cast<Eigen::Index>(angles.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m(j, j) = angles[static_cast<std::size_t>(j)].phase();
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace rohlin
