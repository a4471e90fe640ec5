#include "moe/entropy.hpp"

#include "helpers.hpp"

#include <numbers>

using namespace moe;

namespace {

/// Minimum of S_alpha over 3-point distributions with sum p^2 = c (c > 1/3): the constraint set is
/// a circle of radius sqrt(c - 1/3) around the uniform point in the simplex plane.
std::pair<double, RealVector> brute_min_three_point(double c, double alpha, int samples) {
  const double r = std::sqrt(c - 1.0 / 3.0);
  const Eigen::Vector3d e1 = Eigen::Vector3d(1, -1, 0).normalized();
  const Eigen::Vector3d e2 = Eigen::Vector3d(1, 1, -2).normalized();
  double best = kInfinity;
  RealVector arg;
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * std::numbers::pi * i / samples;
    const Eigen::Vector3d p = Eigen::Vector3d::Constant(1.0 / 3.0) + r * (std::cos(th) * e1 + std::sin(th) * e2);
    if (p.minCoeff() < 0) continue;
    const double s = renyi_entropy_spectrum(p, alpha);
    if (s < best) {
      best = s;
      arg = p;
    }
  }
  return {best, arg};
}

}  // namespace

TEST(Entropy, MaximallyMixed) {
  for (double a : {0.0, 0.5, 1.0, 2.0, kInfinity})
    EXPECT_NEAR(renyi_entropy(ComplexMatrix::Identity(4, 4) / 4.0, a), 2.0, 1e-12);
}

TEST(Entropy, PureStateIsZero) {
  Rng rng = make_rng(41);
  const ComplexMatrix rho = projector(random_pure_state(3, rng));
  for (double a : {0.0, 0.5, 1.0, 2.0, kInfinity}) EXPECT_NEAR(renyi_entropy(rho, a), 0.0, 1e-10);
}

TEST(Entropy, CollisionEntropyOfThreeQuarters) {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.75;
  rho(1, 1) = 0.25;
  EXPECT_NEAR(renyi_entropy(rho, 2.0), -std::log2(10.0 / 16.0), 1e-14);
  EXPECT_NEAR(renyi_entropy(rho, 2.0), 0.678071905112638, 1e-12);
  // alpha -> 1 limit by secant.
  const double secant = 0.5 * (renyi_entropy(rho, 1.0 + 1e-6) + renyi_entropy(rho, 1.0 - 1e-6));
  EXPECT_NEAR(secant, renyi_entropy(rho, 1.0), 1e-9);
}

TEST(Entropy, NegativeAlphaRejected) {
  EXPECT_THROW(renyi_entropy(ComplexMatrix::Identity(2, 2) / 2.0, -0.5), DomainError);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(renyi_entropy(bad, 1.0), DomainError);
}

TEST(Entropy, NonIncreasingInAlpha) {
  Rng rng = make_rng(42);
  for (int t = 0; t < 30; ++t) {
    const ComplexMatrix rho = random_density(4, rng);
    double prev = kInfinity;
    for (double a : {0.5, 1.0, 2.0, 5.0, kInfinity}) {
      const double s = renyi_entropy(rho, a);
      EXPECT_LE(s, prev + 1e-12);
      prev = s;
    }
    EXPECT_NEAR(renyi_entropy(rho, 2.0), -std::log2(trace_product(rho, rho).real()), 1e-12);
  }
}

TEST(Entropy, QubitF) {
  EXPECT_DOUBLE_EQ(qubit_f(1.0), 1.0);
  EXPECT_NEAR(qubit_f(1.0 / std::sqrt(2.0)), 0.5, 1e-12);
  EXPECT_NEAR(qubit_f(std::sqrt(5.0 / 8.0)), 0.75, 1e-14);
  EXPECT_THROW(qubit_f(0.5), DomainError);
  EXPECT_THROW(qubit_f(1.1), DomainError);
}

TEST(Entropy, BinaryRenyi) {
  for (double a : {0.5, 1.0, 2.0, kInfinity}) {
    EXPECT_NEAR(binary_renyi(0.5, a), 1.0, 1e-14);
    EXPECT_NEAR(binary_renyi(1.0, a), 0.0, 1e-14);
  }
  EXPECT_NEAR(binary_renyi(0.75, 2.0), -std::log2(5.0 / 8.0), 1e-14);
}

TEST(Entropy, QubitBridge) {
  Rng rng = make_rng(43);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix rho = random_density(2, rng);
    const double x = std::sqrt(trace_product(rho, rho).real());
    for (double a : {0.5, 1.0, 1.5, 2.0, kInfinity})
      EXPECT_NEAR(renyi_entropy(rho, a), binary_renyi(qubit_f(x), a), 1e-10);
  }
}

TEST(Entropy, GEndpoints) {
  EXPECT_NEAR(g_alpha(1.0).value, 0.0, 1e-15);
  EXPECT_NEAR(g_alpha(0.5).value, 1.0, 1e-12);
  EXPECT_NEAR(g_alpha(1.0 / 3.0).value, std::log2(3.0), 1e-12);
  EXPECT_NEAR(g_alpha(0.25).value, 2.0, 1e-12);
}

TEST(Entropy, GAtPointFourMatchesBruteForce) {
  const auto g = g_alpha(0.4);
  EXPECT_EQ(g.k, 2);
  EXPECT_NEAR(g.delta, std::sqrt(0.1), 1e-15);
  ASSERT_EQ(g.distribution.size(), 3u);
  EXPECT_NEAR(g.distribution[0], 0.43874, 1e-5);
  EXPECT_NEAR(g.distribution[1], 0.43874, 1e-5);
  EXPECT_NEAR(g.distribution[2], 0.12251, 1e-5);
  EXPECT_NEAR(g.value, 1.414031879416184, 1e-12);
  const auto [brute, arg] = brute_min_three_point(0.4, 1.0, 2000000);
  EXPECT_NEAR(g.value, brute, 1e-9);
  double c = 0;
  for (double p : g.distribution) c += p * p;
  EXPECT_NEAR(c, 0.4, 1e-14);
}

TEST(Entropy, GForRenyiOrdersMatchesBruteForce) {
  for (double alpha : {1.25, 1.5, 1.75})
    for (double c : {0.36, 0.4, 0.45}) {
      const auto [brute, arg] = brute_min_three_point(c, alpha, 400000);
      EXPECT_NEAR(g_alpha(c, alpha).value, brute, 1e-8) << alpha << ' ' << c;
    }
}

TEST(Entropy, GAlphaTwoIsCollision) {
  for (double c : {0.1, 0.3, 0.7}) EXPECT_NEAR(g_alpha(c, 2.0).value, -std::log2(c), 1e-15);
}

TEST(Entropy, GDomain) {
  EXPECT_THROW(g_alpha(0.0), DomainError);
  EXPECT_THROW(g_alpha(1.5), DomainError);
  EXPECT_THROW(g_alpha(0.5, 0.9), DomainError);
  EXPECT_THROW(g_alpha(0.5, 2.1), DomainError);
}

TEST(Entropy, GBinaryFormAboveHalf) {
  for (double c : {0.5, 0.6, 0.75, 0.9, 0.99}) {
    const double binary = binary_shannon((1.0 + std::sqrt(2.0 * c - 1.0)) / 2.0);
    EXPECT_NEAR(g_alpha(c).value, binary, 1e-12);
  }
}

TEST(Entropy, GLowerBoundsSampledDistributions) {
  Rng rng = make_rng(44);
  std::exponential_distribution<double> ex(1.0);
  for (int t = 0; t < 2000; ++t) {
    const int m = 2 + t % 6;
    RealVector p(m);
    for (int i = 0; i < m; ++i) p(i) = std::pow(ex(rng), 1.0 + t % 3);
    p /= p.sum();
    const double c = p.squaredNorm();
    for (double a : {1.0, 1.5}) EXPECT_LE(g_alpha(c, a).value, renyi_entropy_spectrum(p, a) + 1e-12);
  }
}

TEST(Entropy, GCurveShape) {
  const auto curve = g_curve(1.0, linear_grid(1e-3, 1.0, 999));
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_GE(curve[i].g, curve[i].neg_log2_c - 1e-12);
    if (i) EXPECT_LE(curve[i].g, curve[i - 1].g + 1e-12);
  }
  const auto quarter = g_curve(1.0, {0.25});
  EXPECT_NEAR(quarter[0].g, 2.0, 1e-12);
}

TEST(Entropy, GSmallCLimit) {
  EXPECT_LE(std::abs(g_alpha(1e-3).value + std::log2(1e-3)), 0.05);
  EXPECT_LE(std::abs(g_alpha(1e-4).value + std::log2(1e-4)), 0.02);
}

TEST(Entropy, LinearGrid) {
  const auto g = linear_grid(0.0, 1.0, 4);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g[2], 0.5);
  EXPECT_THROW(linear_grid(0, 1, 0), DomainError);
}
