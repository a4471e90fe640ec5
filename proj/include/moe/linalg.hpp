#pragma once

// Dense complex matrix substrate shared by every module.
//
// Conventions
//  * Kronecker products are left-slow / right-fast:
//      (a (x) b)(i*rows_b + k, j*cols_b + l) = a(i,j) * b(k,l)
//  * Partial traces use the same ordering: a composite index is
//    (first * dim_second + second).
//  * eig_hermitian returns eigenvalues in descending order.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace moe {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when an input violates a mathematical precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a computation would exceed a configured size budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Numerical tolerances. Every check in the library takes one of these.
struct Tolerances {
  double hermitian = 1e-12;   // relative, entrywise
  double trace = 1e-10;       // trace normalisation of states
  double positivity = 1e-10;  // smallest admissible eigenvalue is -positivity
  double channel = 1e-10;     // Frobenius residual for TP / unital checks
  double eig_group = 1e-8;    // relative eigenvalue multiplicity grouping
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

/// Largest entry modulus.
inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double rel_tol = default_tolerances().hermitian) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DomainError(std::string(what) + ": expected a non-empty square matrix, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

inline void require_hermitian(const ComplexMatrix& m, const char* what,
                              double rel_tol = default_tolerances().hermitian) {
  require_square(m, what);
  if (!is_hermitian(m, rel_tol)) {
    throw DomainError(std::string(what) + ": matrix is not Hermitian");
  }
}

/// Hilbert-Schmidt inner product <a, b> = Tr(a^dagger b).
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.conjugate().cwiseProduct(b).sum();
}

/// Tr(a b) without forming the product.
inline cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

inline HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m, "eig_hermitian");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw DomainError("eig_hermitian: solver failed");
  const auto n = sym.rows();
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

/// Eigenvalues only, descending.
inline RealVector eigvals_hermitian(const ComplexMatrix& m) {
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

struct SymmetricEigen {
  RealVector values;    // descending
  RealMatrix vectors;
};

inline SymmetricEigen eig_symmetric(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("eig_symmetric: matrix is not square");
  const double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (m.size() && (m - m.transpose()).cwiseAbs().maxCoeff() > default_tolerances().hermitian * scale) {
    throw DomainError("eig_symmetric: matrix is not symmetric");
  }
  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw DomainError("eig_symmetric: solver failed");
  const auto n = sym.rows();
  SymmetricEigen out{RealVector(n), RealMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

/// Number of leading (descending) eigenvalues that belong to the top eigenspace.
inline std::size_t top_multiplicity(const RealVector& descending,
                                    double rel_tol = default_tolerances().eig_group) {
  if (descending.size() == 0) return 0;
  const double top = descending(0);
  const double tol = rel_tol * std::max(1.0, std::abs(top));
  std::size_t count = 1;
  while (count < static_cast<std::size_t>(descending.size()) && top - descending(count) <= tol) ++count;
  return count;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

enum class TraceOut { first, second };

/// Partial trace of an operator on C^first (x) C^second.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::pair<int, int> dims, TraceOut side) {
  const auto [d1, d2] = dims;
  if (d1 <= 0 || d2 <= 0 || m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
    throw DomainError("partial_trace: operator dimension does not match the factorisation " +
                      std::to_string(d1) + "x" + std::to_string(d2));
  }
  if (side == TraceOut::first) {
    ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
    for (int i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
    return out;
  }
  ComplexMatrix out(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
  return out;
}

/// Checks the density-matrix contract: Hermitian, unit trace, positive semidefinite.
/// Returns an empty string when valid, otherwise the violated invariant.
inline std::string density_violation(const ComplexMatrix& rho, const Tolerances& tol = default_tolerances()) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return "square";
  if (!is_hermitian(rho, tol.hermitian)) return "hermitian";
  if (std::abs(rho.trace() - 1.0) > tol.trace) return "unit_trace";
  if (eigvals_hermitian(rho).minCoeff() < -tol.positivity) return "positive_semidefinite";
  return {};
}

inline void require_density(const ComplexMatrix& rho, const char* what,
                            const Tolerances& tol = default_tolerances()) {
  if (auto v = density_violation(rho, tol); !v.empty()) {
    throw DomainError(std::string(what) + ": not a density matrix (" + v + ")");
  }
}

inline ComplexMatrix projector(const ComplexVector& psi) { return psi * psi.adjoint(); }

}  // namespace moe
