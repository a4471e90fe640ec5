#pragma once

// Renyi entropies (base 2), the qubit spectral map, the binary Renyi entropy and the
// minimal entropy at fixed index of coincidence.

#include "moe/linalg.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <vector>

namespace moe {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace detail {
inline double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }
}  // namespace detail

/// S_alpha of a probability spectrum, in bits. Entries in [-1e-10, 0) are treated as zero.
inline double renyi_entropy_spectrum(const RealVector& p, double alpha) {
  if (!(alpha >= 0)) throw DomainError("renyi_entropy: alpha must be >= 0");
  RealVector q = p;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (q(i) < -1e-10) throw DomainError("renyi_entropy: negative eigenvalue");
    if (q(i) < 0) q(i) = 0;
  }
  if (alpha == 0) {
    int rank = 0;
    for (Eigen::Index i = 0; i < q.size(); ++i) rank += q(i) > 1e-12 ? 1 : 0;
    return std::log2(static_cast<double>(std::max(rank, 1)));
  }
  if (alpha == 1) {
    double s = 0;
    for (Eigen::Index i = 0; i < q.size(); ++i) s -= detail::xlog2x(q(i));
    return std::max(0.0, s);
  }
  if (std::isinf(alpha)) return std::max(0.0, -std::log2(q.maxCoeff()));
  double sum = 0;
  for (Eigen::Index i = 0; i < q.size(); ++i) sum += q(i) > 0 ? std::pow(q(i), alpha) : 0.0;
  return std::max(0.0, std::log2(sum) / (1.0 - alpha));
}

inline double renyi_entropy(const ComplexMatrix& rho, double alpha) {
  if (!(alpha >= 0)) throw DomainError("renyi_entropy: alpha must be >= 0");
  require_density(rho, "renyi_entropy");
  return renyi_entropy_spectrum(eigvals_hermitian(rho), alpha);
}

/// Largest eigenvalue of a qubit state with Schatten 2-norm x: (1 + sqrt(2x^2 - 1)) / 2.
inline double qubit_f(double x) {
  const double lo = 1.0 / std::sqrt(2.0);
  if (x < lo - 1e-12 || x > 1.0 + 1e-12) throw DomainError("qubit_f: argument outside [1/sqrt(2), 1]");
  x = std::clamp(x, lo, 1.0);
  // At x = 1/sqrt(2) the radicand is a few ulps of rounding, which the square root would magnify.
  const double radicand = 2.0 * x * x - 1.0;
  return 0.5 * (1.0 + (radicand > 8 * std::numeric_limits<double>::epsilon() ? std::sqrt(radicand) : 0.0));
}

/// (1/(1-alpha)) log2(x^alpha + (1-x)^alpha), with the Shannon, min-entropy and
/// Hartley limits at alpha = 1, infinity, 0.
inline double binary_renyi(double x, double alpha) {
  if (x < -1e-12 || x > 1.0 + 1e-12) throw DomainError("binary_renyi: x outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  RealVector p(2);
  p << x, 1.0 - x;
  return renyi_entropy_spectrum(p, alpha);
}

/// Binary Shannon entropy h_2.
inline double binary_shannon(double x) { return binary_renyi(x, 1.0); }

struct MinEntropyAtCoincidence {
  double value;                      // bits
  int k;                             // floor(1/c)
  double delta;
  std::vector<double> distribution;  // k copies of (1+delta)/(1+k), then (1-k delta)/(1+k)
};

/// Lowest Renyi alpha-entropy among distributions with index of coincidence c, alpha in [1, 2].
/// alpha = 2 returns -log2 c, which the minimiser attains exactly.
inline MinEntropyAtCoincidence g_alpha(double c, double alpha = 1.0) {
  if (!(c > 0.0) || c > 1.0 + 1e-12) throw DomainError("g_alpha: c outside (0, 1]");
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw DomainError("g_alpha: alpha outside [1, 2]");
  c = std::min(c, 1.0);
  // 1/c can land a rounding step below an integer at c = 1/k.
  int k = static_cast<int>(std::floor(1.0 / c + 1e-12));
  k = std::max(k, 1);
  double radicand = c - (1.0 - c) / k;
  if (radicand < 0) {
    if (radicand < -1e-12) {
      --k;  // the nudge above overshot
      radicand = c - (1.0 - c) / k;
    }
    radicand = std::max(radicand, 0.0);
  }
  const double delta = std::sqrt(radicand);
  const double big = (1.0 + delta) / (1.0 + k);
  const double small = std::max(0.0, (1.0 - k * delta) / (1.0 + k));
  MinEntropyAtCoincidence out{0.0, k, delta, std::vector<double>(static_cast<std::size_t>(k), big)};
  out.distribution.push_back(small);

  if (alpha == 2.0) {
    out.value = -std::log2(c);
  } else if (alpha == 1.0) {
    const double l1 = std::log2(1.0 + delta);
    const double l2 = 1.0 - k * delta > 0 ? std::log2(1.0 - k * delta) : 0.0;
    out.value = std::log2(k + 1.0) - (k * (1.0 + delta) * l1 + (1.0 - k * delta) * l2) / (1.0 + k);
  } else {
    const double sum = k * std::pow(big, alpha) + (small > 0 ? std::pow(small, alpha) : 0.0);
    out.value = std::log2(sum) / (1.0 - alpha);
  }
  // S_alpha >= S_2 = -log2 c for alpha <= 2; at c = 1/k rounding would land an ulp below.
  out.value = std::max({0.0, out.value, -std::log2(c)});
  return out;
}

struct GCurvePoint {
  double c;
  double g;
  double neg_log2_c;
};

inline std::vector<GCurvePoint> g_curve(double alpha, const std::vector<double>& grid) {
  std::vector<GCurvePoint> out;
  out.reserve(grid.size());
  for (double c : grid) out.push_back({c, g_alpha(c, alpha).value, -std::log2(c)});
  return out;
}

/// Uniform grid from..to with `steps` intervals (steps + 1 points).
inline std::vector<double> linear_grid(double from, double to, int steps) {
  if (steps < 1) throw DomainError("linear_grid: steps must be >= 1");
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(from + (to - from) * i / steps);
  return g;
}

}  // namespace moe
