#pragma once

// Orthonormal bases of the traceless Hermitian matrices H_{n,0}:
// Pauli (n = 2), generalized Gell-Mann, and the basis built from
// discrete Weyl operators W_{x,y} = U^x V^y.

#include "moe/linalg.hpp"

#include <array>
#include <numbers>
#include <string>
#include <vector>

namespace moe {

enum class LabelKind { pauli, gellmann, F, G, H };

struct BasisLabel {
  LabelKind kind;
  int index = 0;  // pauli / gellmann position
  int x = 0;      // Weyl labels
  int y = 0;

  std::string str() const {
    switch (kind) {
      case LabelKind::pauli: return "pauli_" + std::to_string(index);
      case LabelKind::gellmann: return "gellmann_" + std::to_string(index);
      case LabelKind::F: return "F(" + std::to_string(x) + "," + std::to_string(y) + ")";
      case LabelKind::G: return "G(" + std::to_string(x) + "," + std::to_string(y) + ")";
      case LabelKind::H: return "H(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
    return "?";
  }
};

struct TracelessBasis {
  int dim = 0;
  std::vector<ComplexMatrix> elements;
  std::vector<BasisLabel> labels;

  std::size_t size() const { return elements.size(); }
};

/// max |Tr(M_i M_j) - delta_ij| over the basis.
inline double gram_residual(const TracelessBasis& basis) {
  double worst = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const cplx g = trace_product(basis.elements[i], basis.elements[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

/// Largest |Tr M_i| and largest Hermiticity defect over the basis.
inline double traceless_residual(const TracelessBasis& basis) {
  double worst = 0;
  for (const auto& m : basis.elements) worst = std::max(worst, std::abs(m.trace()));
  return worst;
}

inline double hermiticity_residual(const TracelessBasis& basis) {
  double worst = 0;
  for (const auto& m : basis.elements) worst = std::max(worst, max_abs(m - m.adjoint()));
  return worst;
}

/// Coefficients Tr(M_i X) of X in the basis; real for Hermitian X.
inline ComplexVector expand(const TracelessBasis& basis, const ComplexMatrix& x) {
  ComplexVector c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) c(static_cast<Eigen::Index>(i)) = trace_product(basis.elements[i], x);
  return c;
}

/// X = (Tr X / n) I + sum_i Tr(M_i X) M_i.
inline ComplexMatrix reconstruct(const TracelessBasis& basis, cplx trace, const ComplexVector& coeffs) {
  ComplexMatrix x = (trace / static_cast<double>(basis.dim)) * ComplexMatrix::Identity(basis.dim, basis.dim);
  for (std::size_t i = 0; i < basis.size(); ++i) x += coeffs(static_cast<Eigen::Index>(i)) * basis.elements[i];
  return x;
}

// ---------------------------------------------------------------------------
// Discrete Weyl operators

inline int mod(int a, int n) { return ((a % n) + n) % n; }

/// Cyclic shift U|m> = |m+1 mod n>.
inline ComplexMatrix weyl_shift(int n) {
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int m = 0; m < n; ++m) u(mod(m + 1, n), m) = 1.0;
  return u;
}

/// Phase V|m> = exp(2 pi i m / n)|m>.
inline ComplexMatrix weyl_phase(int n) {
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int m = 0; m < n; ++m) v(m, m) = std::polar(1.0, 2.0 * std::numbers::pi * m / n);
  return v;
}

/// W_{x,y} = U^x V^y, built entrywise: W|m> = omega^{y m} |m + x>.
inline ComplexMatrix weyl_operator(int n, int x, int y) {
  if (n < 1) throw DomainError("weyl_operator: n must be positive");
  if (x < 0 || x >= n || y < 0 || y >= n) throw DomainError("weyl_operator: index outside Z_n");
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    const int phase = (y * m) % n;
    w(mod(m + x, n), m) = std::polar(1.0, 2.0 * std::numbers::pi * phase / n);
  }
  return w;
}

/// exp(2 pi i (a y - x b) / n): W_{x,y} W_{a,b} = phase * W_{a,b} W_{x,y}.
inline cplx weyl_commutation_phase(int n, int x, int y, int a, int b) {
  return std::polar(1.0, 2.0 * std::numbers::pi * mod(a * y - x * b, n) / n);
}

struct WeylIndex {
  int x;
  int y;
  LabelKind cls;  // F, G or H
};

/// (x, y) in S_n^F = {(n/2,n/2), (0,n/2), (n/2,0)} for even n.
inline bool in_weyl_f_set(int n, int x, int y) {
  if (n % 2 != 0) return false;
  const int h = n / 2;
  return (x == h && y == h) || (x == 0 && y == h) || (x == h && y == 0);
}

/// The index set S_n in its fixed order: (i) 1<=x<y<=n-1, (ii) 1<=x=y<=n/2,
/// (iii) x=0, 1<=y<=n/2, (iv) y=0, 1<=x<=n/2; lexicographic inside each group.
inline std::vector<std::pair<int, int>> weyl_pair_set(int n) {
  if (n < 2) throw DomainError("weyl_pair_set: n must be >= 2");
  std::vector<std::pair<int, int>> out;
  for (int x = 1; x <= n - 1; ++x)
    for (int y = x + 1; y <= n - 1; ++y) out.emplace_back(x, y);
  for (int x = 1; x <= n / 2; ++x) out.emplace_back(x, x);
  for (int y = 1; y <= n / 2; ++y) out.emplace_back(0, y);
  for (int x = 1; x <= n / 2; ++x) out.emplace_back(x, 0);
  return out;
}

/// S_n expanded into basis labels: each S_n^GH pair gives G then H, each S_n^F pair gives F.
inline std::vector<WeylIndex> weyl_index_set(int n) {
  std::vector<WeylIndex> out;
  for (auto [x, y] : weyl_pair_set(n)) {
    if (in_weyl_f_set(n, x, y)) {
      out.push_back({x, y, LabelKind::F});
    } else {
      out.push_back({x, y, LabelKind::G});
      out.push_back({x, y, LabelKind::H});
    }
  }
  return out;
}

inline TracelessBasis weyl_basis(int n) {
  TracelessBasis basis{n, {}, {}};
  const double sn = std::sqrt(static_cast<double>(n));
  const double s2n = std::sqrt(2.0 * n);
  const cplx i(0.0, 1.0);
  for (const auto& idx : weyl_index_set(n)) {
    const ComplexMatrix w = weyl_operator(n, idx.x, idx.y);
    ComplexMatrix m;
    switch (idx.cls) {
      case LabelKind::F:
        // W_{n/2,n/2} is anti-Hermitian when n/2 is odd (n = 2: UV = -i sigma_y);
        // the extra phase i restores Hermiticity without changing orthonormality.
        m = w / sn;
        if (max_abs(m - m.adjoint()) > 1e-12) m *= i;
        break;
      case LabelKind::G: m = (w + w.adjoint()) / s2n; break;
      default: m = (w - w.adjoint()) / (s2n * i); break;
    }
    basis.elements.push_back(0.5 * (m + m.adjoint()));
    basis.labels.push_back({idx.cls, 0, idx.x, idx.y});
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Gell-Mann and Pauli

/// Generalized Gell-Mann matrices normalised to Tr(M_i M_j) = delta_ij.
/// Order: for each j<k the symmetric then antisymmetric element, then the n-1 diagonal ones.
inline TracelessBasis gellmann_basis(int n) {
  if (n < 2) throw DomainError("gellmann_basis: n must be >= 2");
  TracelessBasis basis{n, {}, {}};
  const double r2 = std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  int label = 0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = s(k, j) = 1.0 / r2;
      basis.elements.push_back(s);
      basis.labels.push_back({LabelKind::gellmann, label++});
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(j, k) = -i / r2;
      a(k, j) = i / r2;
      basis.elements.push_back(a);
      basis.labels.push_back({LabelKind::gellmann, label++});
    }
  for (int l = 1; l < n; ++l) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) d(j, j) = norm;
    d(l, l) = -l * norm;
    basis.elements.push_back(d);
    basis.labels.push_back({LabelKind::gellmann, label++});
  }
  return basis;
}

/// Un-normalised Pauli matrices sigma_x, sigma_y, sigma_z.
inline std::array<ComplexMatrix, 3> pauli_matrices() {
  const cplx i(0.0, 1.0);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return {x, y, z};
}

inline TracelessBasis pauli_basis() {
  TracelessBasis basis{2, {}, {}};
  const auto p = pauli_matrices();
  for (int j = 0; j < 3; ++j) {
    basis.elements.push_back(p[static_cast<std::size_t>(j)] / std::sqrt(2.0));
    basis.labels.push_back({LabelKind::pauli, j});
  }
  return basis;
}

/// Orthonormal basis of all of H_n: I/sqrt(n) followed by the traceless basis.
inline std::vector<ComplexMatrix> full_hermitian_basis(const TracelessBasis& traceless) {
  std::vector<ComplexMatrix> out;
  out.reserve(traceless.size() + 1);
  const int n = traceless.dim;
  out.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  out.insert(out.end(), traceless.elements.begin(), traceless.elements.end());
  return out;
}

}  // namespace moe
