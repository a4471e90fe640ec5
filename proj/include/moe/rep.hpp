#pragma once

// Real matrix representation of a trace-preserving map on the traceless sector.
//
//   B_ij = Tr[N_i Phi(M_j)]          (output basis N, input basis M)
//   A_ij = Tr[Phi(M_i) Phi(M_j)]     (= B^T B for unital maps)
//
// gamma(Phi) = 1/k + (1 - 1/n) ||A||   if n >= k ||A||
//            = ||A||                   otherwise,
// bounds ||Phi (x) Omega||_{1->2}^2 <= gamma(Phi) ||Omega||_{1->2}^2 for completely positive Omega.

#include "moe/bases.hpp"
#include "moe/channels.hpp"
#include "moe/linalg.hpp"

#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace moe {

struct ChannelRep {
  TracelessBasis in_basis;
  TracelessBasis out_basis;
  RealMatrix B;  // (k^2 - 1) x (n^2 - 1)
  RealMatrix A;  // (n^2 - 1) x (n^2 - 1), symmetric PSD
  double a_norm = 0;
  bool unital = false;
  bool trace_preserving = false;
  /// Set when the map is not unital: A still follows the Tr[Phi(M_i) Phi(M_j)] formula but
  /// no longer equals B^T B, and gamma() refuses the rep.
  bool non_unital_warning = false;

  int in_dim() const { return in_basis.dim; }
  int out_dim() const { return out_basis.dim; }
};

inline ChannelRep build_rep(const Map& phi, const TracelessBasis& in_basis, const TracelessBasis& out_basis) {
  if (in_basis.dim != in_dim(phi) || out_basis.dim != out_dim(phi))
    throw DomainError("build_rep: basis dimensions do not match the map");
  const auto ni = static_cast<Eigen::Index>(in_basis.size());
  const auto no = static_cast<Eigen::Index>(out_basis.size());
  std::vector<ComplexMatrix> images;
  images.reserve(in_basis.size());
  for (const auto& m : in_basis.elements) images.push_back(moe::apply(phi, m));

  ChannelRep rep{in_basis, out_basis, RealMatrix(no, ni), RealMatrix(ni, ni)};
  for (Eigen::Index j = 0; j < ni; ++j)
    for (Eigen::Index i = 0; i < no; ++i)
      rep.B(i, j) = trace_product(out_basis.elements[static_cast<std::size_t>(i)],
                                  images[static_cast<std::size_t>(j)]).real();
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = i; j < ni; ++j)
      rep.A(i, j) = rep.A(j, i) =
          trace_product(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]).real();
  rep.unital = flags(phi).unital;
  rep.trace_preserving = flags(phi).trace_preserving;
  rep.non_unital_warning = !rep.unital;
  rep.a_norm = ni > 0 ? std::max(0.0, eig_symmetric(rep.A).values(0)) : 0.0;
  return rep;
}

/// Convenience: Gell-Mann bases on both sides (Pauli for qubits).
inline ChannelRep build_rep(const Map& phi) {
  auto basis_for = [](int d) { return d == 2 ? pauli_basis() : gellmann_basis(d); };
  return build_rep(phi, basis_for(in_dim(phi)), basis_for(out_dim(phi)));
}

enum class GammaBranch { small, large };

struct GammaResult {
  double gamma = 0;
  GammaBranch branch = GammaBranch::small;  // small: n >= k * a_norm
  double a_norm = 0;
};

inline GammaResult gamma_from_norm(double a_norm, int n, int k) {
  GammaResult g{0.0, GammaBranch::small, a_norm};
  // Both branches agree at n = k ||A||; the slack keeps rounding from flipping the label there.
  if (static_cast<double>(n) >= k * a_norm - 1e-12 * n) {
    g.gamma = 1.0 / k + (1.0 - 1.0 / n) * a_norm;
  } else {
    g.branch = GammaBranch::large;
    g.gamma = a_norm;
  }
  return g;
}

inline GammaResult gamma(const ChannelRep& rep) {
  if (!rep.unital || !rep.trace_preserving) throw DomainError("gamma: map must be unital and trace-preserving");
  return gamma_from_norm(rep.a_norm, rep.in_dim(), rep.out_dim());
}

// ---------------------------------------------------------------------------
// Discrete Weyl covariant channels

/// c_{a,b} = sum_{x,y} p_{x,y} exp(2 pi i (a y - x b) / n).
inline cplx dwcc_phase_average(int n, const std::vector<WeylWeight>& p, int a, int b) {
  cplx c = 0;
  for (const auto& w : p) c += w.weight * weyl_commutation_phase(n, w.x, w.y, a, b);
  return c;
}

struct DwccGamma {
  GammaResult result;
  std::map<std::pair<int, int>, double> c_abs2;  // |c_{a,b}|^2 on S_n
  bool large_branch_reachable = false;           // max |c| > 1 cannot happen for convex weights
};

/// gamma of a DWCC from the phase averages: ||A|| = max_{S_n} |c_{a,b}|^2.
inline DwccGamma gamma_dwcc(int n, const std::vector<WeylWeight>& p) {
  double total = 0;
  for (const auto& w : p) {
    if (w.x < 0 || w.x >= n || w.y < 0 || w.y >= n) throw DomainError("gamma_dwcc: Weyl index outside Z_n");
    if (w.weight < 0) throw DomainError("gamma_dwcc: negative weight");
    total += w.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("gamma_dwcc: weights must sum to 1");
  DwccGamma out;
  double best = 0;
  for (auto [a, b] : weyl_pair_set(n)) {
    const double v = std::norm(dwcc_phase_average(n, p, a, b));
    out.c_abs2[{a, b}] = v;
    best = std::max(best, v);
  }
  out.large_branch_reachable = std::sqrt(best) > 1.0;
  if (out.large_branch_reachable) {
    out.result = {best, GammaBranch::large, best};
  } else {
    out.result = {1.0 / n + (1.0 - 1.0 / n) * best, GammaBranch::small, best};
  }
  return out;
}

/// N(a,b) = #{(l,m): (x_m - x_l, y_m - y_l) = (a,b)} + #{(l,m): ... = (-a,-b)}, for every (a,b) in Z_n^2.
inline std::map<std::pair<int, int>, int> n_table(int n, const std::vector<std::pair<int, int>>& pairs) {
  require_distinct_pairs(pairs, n);
  std::map<std::pair<int, int>, int> table;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[{a, b}] = 0;
  for (const auto& l : pairs)
    for (const auto& m : pairs) {
      const int dx = mod(m.first - l.first, n);
      const int dy = mod(m.second - l.second, n);
      table[{dx, dy}] += 1;
      table[{mod(-dx, n), mod(-dy, n)}] += 1;
    }
  return table;
}

struct ComplementGamma {
  GammaResult result;
  int max_n = 0;  // max over S_n of N(a,b)
};

/// gamma of the complement of the uniform Weyl mixture over `pairs` (k = |pairs|):
/// ||A|| = (n / (2 k^2)) max_{S_n} N(a,b), branch chosen by n >= k ||A||.
inline ComplementGamma gamma_complement(int n, const std::vector<std::pair<int, int>>& pairs) {
  const auto table = n_table(n, pairs);
  const int k = static_cast<int>(pairs.size());
  int best = 0;
  for (auto ab : weyl_pair_set(n)) best = std::max(best, table.at(ab));
  const double a_norm = static_cast<double>(n) * best / (2.0 * k * k);
  return {gamma_from_norm(a_norm, n, k), best};
}

}  // namespace moe
