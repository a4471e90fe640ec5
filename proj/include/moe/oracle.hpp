#pragma once

// Seeded brute-force optimisation over pure input states.
//
// Every restart is an independent Riemannian ascent on the complex unit sphere from a
// Haar-random start (stream = restart index), with Barzilai-Borwein trial steps and Armijo
// backtracking. Qubit inputs additionally get an exhaustive (theta, phi) Bloch grid followed
// by a local polish. The reduction is a max with lowest-index tie-break, so results do not
// depend on the worker count.

#include "moe/bases.hpp"
#include "moe/channels.hpp"
#include "moe/entropy.hpp"
#include "moe/linalg.hpp"
#include "moe/random.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace moe {

struct OracleOptions {
  std::uint64_t seed = 42;
  int restarts = 200;
  int max_iters = 500;
  double grad_tol = 1e-10;
  bool bloch_grid = true;
  int grid_theta = 721;
  int grid_phi = 1441;
  unsigned threads = 0;  // 0: MOE_THREADS, else hardware concurrency
};

inline OracleOptions tensor_oracle_defaults() {
  OracleOptions o;
  o.restarts = 500;
  return o;
}

struct OracleResult {
  double value = 0;
  ComplexVector arg;
  int restarts = 0;
  double converged_fraction = 0;
  std::uint64_t seed = 0;
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MOE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Objectives (maximised). Each exposes the value as a function of the output state so the
// Bloch grid can evaluate it from a precomputed affine output map.

/// Tr[Phi(psi psi^dagger)^2]; gradient 4 Phi^dagger(sigma) psi.
class PurityObjective {
 public:
  explicit PurityObjective(const Map& phi) : phi_(phi) {}
  int in_dim() const { return moe::in_dim(phi_); }
  const Map& map() const { return phi_; }

  double output_value(const ComplexMatrix& sigma) const { return trace_product(sigma, sigma).real(); }
  double value(const ComplexVector& psi) const { return output_value(apply_pure(phi_, psi)); }
  double value_grad(const ComplexVector& psi, ComplexVector& grad) const {
    const ComplexMatrix sigma = apply_pure(phi_, psi);
    grad = 4.0 * adjoint_times(phi_, sigma, psi);
    return output_value(sigma);
  }

 private:
  const Map& phi_;
};

namespace detail {

inline RealVector spectrum(const ComplexMatrix& s) {
  if (s.rows() == 2) {
    const double tr = 0.5 * (s(0, 0).real() + s(1, 1).real());
    const double d = 0.5 * (s(0, 0).real() - s(1, 1).real());
    const double r = std::sqrt(d * d + std::norm(s(0, 1)));
    RealVector v(2);
    v << tr + r, tr - r;
    return v;
  }
  return eigvals_hermitian(s);
}

/// Derivative of S_alpha with respect to an eigenvalue; eigenvalues floored for the gradient only.
inline double entropy_slope(double lambda, double alpha, double power_sum, double lambda_max) {
  constexpr double floor = 1e-16;
  const double l = std::max(lambda, floor);
  if (alpha == 1.0) return -(std::log2(l) + 1.0 / std::numbers::ln2);
  if (alpha == 0.0) return 0.0;
  if (std::isinf(alpha)) return lambda == lambda_max ? -1.0 / (std::max(lambda_max, floor) * std::numbers::ln2) : 0.0;
  return alpha * std::pow(l, alpha - 1.0) / ((1.0 - alpha) * std::numbers::ln2 * power_sum);
}

}  // namespace detail

/// -S_alpha(Phi(psi psi^dagger)); gradient -2 Phi^dagger(dS/dsigma) psi.
class NegEntropyObjective {
 public:
  NegEntropyObjective(const Map& phi, double alpha) : phi_(phi), alpha_(alpha) {
    if (!(alpha > 0)) throw DomainError("oracle_smin_alpha: alpha must be > 0");
  }
  int in_dim() const { return moe::in_dim(phi_); }

  double output_value(const ComplexMatrix& sigma) const {
    RealVector ev = detail::spectrum(sigma);
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
    ev /= ev.sum();
    return -renyi_entropy_spectrum(ev, alpha_);
  }
  double value(const ComplexVector& psi) const { return output_value(apply_pure(phi_, psi)); }
  double value_grad(const ComplexVector& psi, ComplexVector& grad) const {
    const ComplexMatrix sigma = apply_pure(phi_, psi);
    const auto eig = eig_hermitian(0.5 * (sigma + sigma.adjoint()));
    RealVector ev = eig.values.cwiseMax(0.0);
    ev /= ev.sum();
    double power_sum = 0;
    if (alpha_ != 1.0 && !std::isinf(alpha_))
      for (Eigen::Index i = 0; i < ev.size(); ++i) power_sum += ev(i) > 0 ? std::pow(ev(i), alpha_) : 0.0;
    RealVector slope(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      slope(i) = detail::entropy_slope(ev(i), alpha_, power_sum, ev(0));
    if (std::isinf(alpha_))
      for (Eigen::Index i = 1; i < ev.size(); ++i) slope(i) = 0.0;
    const ComplexMatrix d = eig.vectors * slope.asDiagonal() * eig.vectors.adjoint();
    grad = -2.0 * adjoint_times(phi_, d, psi);
    return -renyi_entropy_spectrum(ev, alpha_);
  }

 private:
  const Map& phi_;
  double alpha_;
};

// ---------------------------------------------------------------------------
// Ascent on the unit sphere

struct AscentOutcome {
  ComplexVector psi;
  double value;
  bool converged;
};

template <class Objective>
AscentOutcome sphere_ascent(const Objective& obj, ComplexVector psi, const OracleOptions& opts) {
  psi.normalize();
  ComplexVector grad;
  double f = obj.value_grad(psi, grad);
  auto tangent = [](const ComplexVector& p, const ComplexVector& g) -> ComplexVector {
    return g - p.dot(g).real() * p;
  };
  ComplexVector gt = tangent(psi, grad);
  double tau = 0;
  bool converged = false;
  for (int it = 0; it < opts.max_iters; ++it) {
    const double gnorm = gt.norm();
    if (!(gnorm > opts.grad_tol)) {
      converged = true;
      break;
    }
    if (!(tau > 0) || !std::isfinite(tau)) tau = 0.1 / gnorm;
    bool accepted = false;
    ComplexVector next;
    double f_next = f;
    for (int ls = 0; ls < 60; ++ls) {
      next = (psi + tau * gt).normalized();
      f_next = obj.value(next);
      if (f_next >= f + 1e-4 * tau * gnorm * gnorm) {
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) {
      // No representable improvement: numerically stationary.
      converged = gnorm <= 1e-6;
      break;
    }
    ComplexVector grad_next;
    f_next = obj.value_grad(next, grad_next);
    const ComplexVector gt_next = tangent(next, grad_next);
    const ComplexVector s = next - psi;
    const double sy = -s.dot(gt_next - gt).real();
    tau = sy > 0 ? s.squaredNorm() / sy : 2.0 * tau;
    psi = next;
    f = f_next;
    gt = gt_next;
  }
  return {psi, obj.value(psi), converged};
}

/// Exhaustive (theta, phi) grid for qubit inputs using the affine output map
/// Phi(rho(r)) = (Phi(I) + sum_j r_j Phi(sigma_j)) / 2.
template <class Objective>
ComplexVector bloch_grid_best(const Objective& obj, const Map& phi, const OracleOptions& opts) {
  const auto p = pauli_matrices();
  const ComplexMatrix p0 = 0.5 * moe::apply(phi, ComplexMatrix::Identity(2, 2));
  const ComplexMatrix p1 = 0.5 * moe::apply(phi, p[0]);
  const ComplexMatrix p2 = 0.5 * moe::apply(phi, p[1]);
  const ComplexMatrix p3 = 0.5 * moe::apply(phi, p[2]);
  ComplexMatrix sigma(p0.rows(), p0.cols());
  double best = -kInfinity;
  double best_t = 0, best_p = 0;
  const int nt = std::max(opts.grid_theta, 2);
  const int np = std::max(opts.grid_phi, 2);
  for (int i = 0; i < nt; ++i) {
    const double theta = std::numbers::pi * i / (nt - 1);
    const double st = std::sin(theta), ct = std::cos(theta);
    for (int j = 0; j < np; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / (np - 1);
      sigma = p0;
      sigma += (st * std::cos(ph)) * p1;
      sigma += (st * std::sin(ph)) * p2;
      sigma += ct * p3;
      const double v = obj.output_value(sigma);
      if (v > best) {
        best = v;
        best_t = theta;
        best_p = ph;
      }
      if (i == 0 || i == nt - 1) break;  // poles
    }
  }

  // Derivative-free polish in (theta, phi); robust where the entropy gradient is singular.
  auto state = [](double t, double ph) {
    ComplexVector v(2);
    v << std::cos(t / 2), std::polar(1.0, ph) * std::sin(t / 2);
    return v;
  };
  double step = std::numbers::pi / (nt - 1);
  double t = best_t, ph = best_p;
  double f = obj.value(state(t, ph));
  while (step > 1e-11) {
    bool moved = false;
    for (auto [dt, dp] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0},
                          {1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}) {
      const double v = obj.value(state(t + dt * step, ph + dp * step));
      if (v > f) {
        f = v;
        t += dt * step;
        ph += dp * step;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return state(t, ph);
}

template <class Objective>
OracleResult maximize_pure(const Objective& obj, const Map& phi, const OracleOptions& opts) {
  const int n = obj.in_dim();
  const int restarts = std::max(opts.restarts, 1);
  std::vector<std::optional<AscentOutcome>> outcomes(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < restarts; i = next++) {
      Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(i) + 1);
      outcomes[static_cast<std::size_t>(i)] = sphere_ascent(obj, random_pure_state(n, rng), opts);
    }
  };
  const unsigned threads = std::min<unsigned>(resolve_threads(opts.threads), static_cast<unsigned>(restarts));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  OracleResult res;
  res.seed = opts.seed;
  res.restarts = restarts;
  res.value = -kInfinity;
  int converged = 0;
  for (const auto& o : outcomes) {
    converged += o->converged ? 1 : 0;
    if (o->value > res.value) {
      res.value = o->value;
      res.arg = o->psi;
    }
  }
  res.converged_fraction = static_cast<double>(converged) / restarts;

  if (n == 2 && opts.bloch_grid) {
    ComplexVector start = bloch_grid_best(obj, phi, opts);
    const double grid_value = obj.value(start);
    const auto polished = sphere_ascent(obj, start, opts);
    const ComplexVector& cand = polished.value > grid_value ? polished.psi : start;
    const double cand_value = obj.value(cand);
    if (cand_value > res.value) {
      res.value = cand_value;
      res.arg = cand;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Public oracles

/// max over pure psi of ||Phi(psi psi^dagger)||_2.
inline OracleResult oracle_norm_1to2(const Map& phi, const OracleOptions& opts = {}) {
  const PurityObjective obj(phi);
  OracleResult r = maximize_pure(obj, phi, opts);
  r.value = std::sqrt(std::max(0.0, r.value));
  return r;
}

/// min over pure psi of S_alpha(Phi(psi psi^dagger)), bits. alpha = 2 goes through the norm oracle.
inline OracleResult oracle_smin_alpha(const Map& phi, double alpha, const OracleOptions& opts = {}) {
  if (!(alpha > 0)) throw DomainError("oracle_smin_alpha: alpha must be > 0");
  if (alpha == 2.0) {
    OracleResult r = oracle_norm_1to2(phi, opts);
    r.value = -std::log2(r.value * r.value);
    return r;
  }
  const NegEntropyObjective obj(phi, alpha);
  OracleResult r = maximize_pure(obj, phi, opts);
  r.value = -r.value;
  return r;
}

/// Largest singular value of the map on the Hilbert-Schmidt space: |Phi|_{2->2}.
inline double hs_operator_norm(const Map& phi) {
  const int n = in_dim(phi), k = out_dim(phi);
  ComplexMatrix t(k * k, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(a, b) = 1.0;
      const ComplexMatrix img = moe::apply(phi, e);
      t.col(a * n + b) = Eigen::Map<const ComplexVector>(img.data(), img.size());
    }
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  return svd.singularValues()(0);
}

namespace detail {

/// argmax of Re<g, y> over ||y||_p <= 1: y = U diag(s) V^dagger with s on the p-norm sphere.
inline ComplexMatrix schatten_dual_direction(const ComplexMatrix& g, double p) {
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  RealVector s = RealVector::Zero(sv.size());
  if (sv.size() == 0 || sv(0) <= 0) return ComplexMatrix::Zero(g.rows(), g.cols());
  if (p <= 1.0 + 1e-12) {
    s(0) = 1.0;
  } else {
    const double q = p / (p - 1.0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) s(i) = std::pow(sv(i) / sv(0), q - 1.0);
    double norm = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) norm += std::pow(s(i), p);
    s /= std::pow(norm, 1.0 / p);
  }
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

inline double schatten_norm(const ComplexMatrix& x, double p) {
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  double s = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) s += std::pow(svd.singularValues()(i), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace detail

/// Lower estimate of |Phi|_{p->2} = max ||Phi(X)||_2 / ||X||_p over complex X, 1 <= p <= 2.
/// Each restart iterates X <- argmax_{||Y||_p = 1} Re<Phi^dagger Phi(X), Y>, which never
/// decreases the convex objective ||Phi(X)||_2^2.
inline OracleResult oracle_norm_p2_complex(const Map& phi, double p, const OracleOptions& opts = {}) {
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("oracle_norm_p2_complex: p outside [1, 2]");
  const int n = in_dim(phi);
  const int restarts = std::max(opts.restarts, 1);
  OracleResult res;
  res.seed = opts.seed;
  res.restarts = restarts;
  res.value = -1;
  int converged = 0;
  ComplexMatrix best_x;
  for (int i = 0; i < restarts; ++i) {
    Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(i) + 1);
    ComplexMatrix x = random_ginibre(n, n, rng);
    x /= detail::schatten_norm(x, p);
    double f = moe::apply(phi, x).squaredNorm();
    bool done = false;
    for (int it = 0; it < std::max(opts.max_iters, 1) * 4; ++it) {
      const ComplexMatrix g = apply_adjoint(phi, moe::apply(phi, x));
      const ComplexMatrix y = detail::schatten_dual_direction(g, p);
      const double fy = moe::apply(phi, y).squaredNorm();
      if (fy <= f * (1.0 + 1e-15)) {
        if (fy > f) x = y, f = fy;
        done = true;
        break;
      }
      x = y;
      f = fy;
    }
    converged += done ? 1 : 0;
    if (std::sqrt(f) > res.value) {
      res.value = std::sqrt(f);
      best_x = x;
    }
  }
  res.converged_fraction = static_cast<double>(converged) / restarts;
  // The maximiser is a matrix; arg carries it column-stacked.
  res.arg = Eigen::Map<const ComplexVector>(best_x.data(), best_x.size());
  return res;
}

enum class TensorObjective { norm12, smin };

struct TensorOracleResult {
  OracleResult best;          // better of the joint search and the product state
  double joint_value = 0;     // unrestricted search over the joint input
  double product_value = 0;   // objective at (argmax Phi) (x) (argmax Omega)
  double gap = 0;             // joint - product for norm12, product - joint for smin (> 0: entangled input wins)
  OracleResult phi;
  OracleResult omega;
};

inline constexpr int kTensorDimBudget = 32;

inline TensorOracleResult oracle_tensor(const Map& phi, const Map& omega, TensorObjective objective, double alpha = 2.0,
                                        const OracleOptions& opts = tensor_oracle_defaults()) {
  const int dim = in_dim(phi) * in_dim(omega);
  if (dim > kTensorDimBudget)
    throw BudgetError("oracle_tensor: joint input dimension " + std::to_string(dim) + " exceeds " +
                      std::to_string(kTensorDimBudget));
  const Map joint = tensor(phi, omega);
  OracleOptions single = opts;
  single.restarts = std::min(opts.restarts, 200);

  TensorOracleResult out;
  auto run = [&](const Map& m, const OracleOptions& o) {
    return objective == TensorObjective::norm12 ? oracle_norm_1to2(m, o) : oracle_smin_alpha(m, alpha, o);
  };
  out.phi = run(phi, single);
  out.omega = run(omega, single);
  const OracleResult j = run(joint, opts);
  out.joint_value = j.value;

  const ComplexVector product = kron(out.phi.arg, out.omega.arg);
  const ComplexMatrix sigma = apply_pure(joint, product);
  if (objective == TensorObjective::norm12) {
    out.product_value = std::sqrt(std::max(0.0, trace_product(sigma, sigma).real()));
    out.gap = out.joint_value - out.product_value;
  } else {
    out.product_value = -NegEntropyObjective(joint, alpha).output_value(sigma);
    out.gap = out.product_value - out.joint_value;
  }
  out.best = j;
  if (out.gap < 0) {
    out.best.value = out.product_value;
    out.best.arg = product;
  }
  return out;
}

}  // namespace moe
