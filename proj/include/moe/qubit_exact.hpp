#pragma once

// Exact maximum output purity for qubit-input maps.
//
// A pure qubit input is rho = (I + r . sigma)/2 with |r| = 1, so
//   Tr Phi(rho)^2 = (Tr Phi(I)^2 + max_{|r|=1} sum_j (2 b_j r_j + a_j r_j^2)) / 4
// in the eigenbasis of A_jk = Tr Phi(sigma_j) Phi(sigma_k), with b_j = Tr Phi(I) Phi(sigma_j).
// The sphere maximisation is a trust-region subproblem; its maximiser is the stationary
// point with multiplier mu >= max_j a_j, found from the secular equation
//   sum_j b_j^2 / (mu - a_j)^2 = 1.

#include "moe/bases.hpp"
#include "moe/channels.hpp"
#include "moe/entropy.hpp"
#include "moe/linalg.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace moe {

using Vec3 = Eigen::Vector3d;

struct SecularSolution {
  double mu = 0;      // Lagrange multiplier
  Vec3 r = Vec3::Zero();
  double value = 0;   // sum_j 2 b_j r_j + a_j r_j^2
  bool hard_case = false;
};

inline double sphere_quadratic(const Vec3& a, const Vec3& b, const Vec3& r) {
  return (2.0 * b.array() * r.array() + a.array() * r.array().square()).sum();
}

namespace detail {

/// Root of sum_{j in mask} b_j^2/(mu - a_j)^2 = 1 on (lo, hi], where the left side is convex and
/// strictly decreasing. Safeguarded Newton with bisection fallback.
inline double secular_root(const Vec3& a, const Vec3& b, const std::array<bool, 3>& mask, double lo, double hi) {
  auto s = [&](double mu, double* ds) {
    double v = -1.0, d = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (!mask[static_cast<std::size_t>(j)]) continue;
      const double gap = mu - a(j);
      const double q = b(j) * b(j) / (gap * gap);
      v += q;
      d -= 2.0 * q / gap;
    }
    if (ds) *ds = d;
    return v;
  };
  double mu = lo;
  for (int it = 0; it < 200; ++it) {
    double d = 0;
    const double v = s(mu, &d);
    if (std::abs(v) <= 1e-13) return mu;
    if (v > 0) lo = mu; else hi = mu;
    double next = mu - v / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(hi))) return next;
    mu = next;
  }
  return mu;
}

}  // namespace detail

/// Maximises sum_j (2 b_j r_j + a_j r_j^2) over the unit sphere in R^3.
inline SecularSolution solve_secular(const Vec3& a, const Vec3& b, double eig_tol = default_tolerances().eig_group) {
  const double a_max = a.maxCoeff();
  const double tol = eig_tol * std::max(1.0, std::abs(a_max));
  std::array<bool, 3> top{}, rest{};
  int first_top = -1;
  for (int j = 0; j < 3; ++j) {
    top[static_cast<std::size_t>(j)] = a_max - a(j) <= tol;
    rest[static_cast<std::size_t>(j)] = !top[static_cast<std::size_t>(j)];
    if (top[static_cast<std::size_t>(j)] && first_top < 0) first_top = j;
  }
  double b_top = 0;
  for (int j = 0; j < 3; ++j)
    if (top[static_cast<std::size_t>(j)]) b_top += b(j) * b(j);
  b_top = std::sqrt(b_top);

  SecularSolution sol;
  const double lower = a_max + 1e-14 * std::max(1.0, std::abs(a_max));
  const double upper = a_max + b.norm() + 1e-300;
  const std::array<bool, 3> all{true, true, true};

  auto secular_at = [&](double mu) {
    double v = -1.0;
    for (int j = 0; j < 3; ++j) v += b(j) * b(j) / ((mu - a(j)) * (mu - a(j)));
    return v;
  };

  if (b_top > 1e-12 * std::max(1.0, b.norm()) && secular_at(lower) > 0) {
    sol.mu = detail::secular_root(a, b, all, lower, upper);
    for (int j = 0; j < 3; ++j) sol.r(j) = b(j) / (sol.mu - a(j));
    sol.r.normalize();
    sol.value = sphere_quadratic(a, b, sol.r);
    return sol;
  }

  // Hard case: the linear term vanishes on the top eigenspace.
  sol.hard_case = true;
  double interior = 0;
  Vec3 r = Vec3::Zero();
  for (int j = 0; j < 3; ++j)
    if (rest[static_cast<std::size_t>(j)]) {
      r(j) = b(j) / (a_max - a(j));
      interior += r(j) * r(j);
    }
  if (interior <= 1.0) {
    const double fill = std::sqrt(1.0 - interior);
    if (b_top > 0) {
      for (int j = 0; j < 3; ++j)
        if (top[static_cast<std::size_t>(j)]) r(j) = fill * b(j) / b_top;
    } else {
      r(first_top) = fill;
    }
    sol.mu = a_max;
    sol.r = r;
  } else {
    // Residual norm is negative: the reduced secular function has its root beyond a_max.
    sol.mu = detail::secular_root(a, b, rest, lower, upper);
    for (int j = 0; j < 3; ++j) sol.r(j) = rest[static_cast<std::size_t>(j)] ? b(j) / (sol.mu - a(j)) : 0.0;
    sol.r.normalize();
  }
  sol.value = sphere_quadratic(a, b, sol.r);
  return sol;
}

struct QubitNormResult {
  double norm12 = 0;
  double trace_term = 0;  // Tr Phi(I)^2
  Vec3 a = Vec3::Zero();  // eigenvalues of A_jk, descending
  Vec3 b = Vec3::Zero();  // b rotated into A's eigenbasis
  Eigen::Matrix3d eigvecs = Eigen::Matrix3d::Identity();
  SecularSolution solution;
  Vec3 bloch = Vec3::Zero();  // maximising Bloch vector in Pauli coordinates

  /// The closed form (1/2) sqrt(Tr Phi(I)^2 + sum_j (2 mu - a_j)/(mu - a_j)^2 b_j^2), valid off the hard case.
  double closed_form() const {
    double s = trace_term;
    for (int j = 0; j < 3; ++j) {
      const double gap = solution.mu - a(j);
      s += (2.0 * solution.mu - a(j)) / (gap * gap) * b(j) * b(j);
    }
    return 0.5 * std::sqrt(std::max(0.0, s));
  }
};

/// Pure qubit state with Bloch vector r.
inline ComplexMatrix bloch_state(const Vec3& r) {
  const auto p = pauli_matrices();
  return 0.5 * (ComplexMatrix::Identity(2, 2) + r(0) * p[0] + r(1) * p[1] + r(2) * p[2]);
}

/// ||Phi||_{1->2} for a trace-preserving map with qubit input.
inline QubitNormResult qubit_norm12(const Map& phi) {
  if (in_dim(phi) != 2) throw DomainError("qubit_norm12: input dimension must be 2");
  if (!flags(phi).trace_preserving) throw DomainError("qubit_norm12: map is not trace-preserving");
  const auto p = pauli_matrices();
  const ComplexMatrix phi_i = moe::apply(phi, ComplexMatrix::Identity(2, 2));
  std::array<ComplexMatrix, 3> phi_s;
  for (std::size_t j = 0; j < 3; ++j) phi_s[j] = moe::apply(phi, p[j]);

  Eigen::Matrix3d amat;
  Vec3 b0;
  for (int j = 0; j < 3; ++j) {
    b0(j) = trace_product(phi_i, phi_s[static_cast<std::size_t>(j)]).real();
    for (int k = 0; k < 3; ++k)
      amat(j, k) = trace_product(phi_s[static_cast<std::size_t>(j)], phi_s[static_cast<std::size_t>(k)]).real();
  }
  amat = 0.5 * (amat + amat.transpose()).eval();
  const auto eig = eig_symmetric(amat);

  QubitNormResult out;
  out.trace_term = trace_product(phi_i, phi_i).real();
  out.a = eig.values;
  out.eigvecs = eig.vectors;
  out.b = eig.vectors.transpose() * b0;
  out.solution = solve_secular(out.a, out.b);
  out.bloch = eig.vectors * out.solution.r;
  out.norm12 = 0.5 * std::sqrt(std::max(0.0, out.trace_term + out.solution.value));
  return out;
}

/// Exact S_min,alpha of a qubit channel: h_{2,alpha}(f(||Phi||_{1->2})).
inline double qubit_smin_alpha(const Map& phi, double alpha) {
  if (out_dim(phi) != 2) throw DomainError("qubit_smin_alpha: output dimension must be 2");
  const double norm = qubit_norm12(phi).norm12;
  return binary_renyi(qubit_f(std::clamp(norm, 1.0 / std::sqrt(2.0), 1.0)), alpha);
}

struct LowerBound {
  double value;  // bits
  bool exact;    // equality holds for qubit outputs
};

/// S_min,alpha(Phi) >= g_alpha(||Phi||_{1->2}^2), exact for qubit outputs.
inline LowerBound smin_lower_bound(const Map& phi, double alpha, double norm12) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw DomainError("smin_lower_bound: alpha outside [1, 2]");
  return {g_alpha(std::clamp(norm12 * norm12, 1e-300, 1.0), alpha).value, out_dim(phi) == 2};
}

/// chi(Phi) <= log2(out_dim) - g(||Phi||_{1->2}^2) for qubit-input channels.
inline double holevo_upper_bound(const Map& phi) {
  const double norm = qubit_norm12(phi).norm12;
  return std::log2(static_cast<double>(out_dim(phi))) - g_alpha(std::clamp(norm * norm, 1e-300, 1.0), 1.0).value;
}

}  // namespace moe
