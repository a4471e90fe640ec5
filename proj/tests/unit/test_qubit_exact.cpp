#include "moe/oracle.hpp"
#include "moe/qubit_exact.hpp"

#include "helpers.hpp"

#include <numbers>

using namespace moe;

namespace {

/// Independent maximiser of sum_j 2 b_j r_j + a_j r_j^2 on the unit sphere: dense (theta, phi)
/// grid, then a shrinking pattern search from the best few grid points.
double sphere_grid_max(const Vec3& a, const Vec3& b) {
  auto f = [&](double t, double p) {
    const Vec3 r(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
    return sphere_quadratic(a, b, r);
  };
  const int nt = 120, np = 240;
  std::vector<std::tuple<double, double, double>> top;
  for (int i = 0; i <= nt; ++i)
    for (int j = 0; j < np; ++j) {
      const double t = std::numbers::pi * i / nt, p = 2 * std::numbers::pi * j / np;
      top.emplace_back(f(t, p), t, p);
    }
  std::partial_sort(top.begin(), top.begin() + 8, top.end(), [](auto& x, auto& y) { return std::get<0>(x) > std::get<0>(y); });
  double best = -kInfinity;
  for (int s = 0; s < 8; ++s) {
    auto [v, t, p] = top[static_cast<std::size_t>(s)];
    double step = std::numbers::pi / nt;
    while (step > 1e-12) {
      bool moved = false;
      for (auto [dt, dp] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}) {
        const double w = f(t + dt * step, p + dp * step);
        if (w > v) {
          v = w;
          t += dt * step;
          p += dp * step;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

TEST(Secular, IsotropicHardCase) {
  const auto s = solve_secular(Vec3(2, 2, 2), Vec3::Zero());
  EXPECT_TRUE(s.hard_case);
  EXPECT_NEAR(s.value, 2.0, 1e-15);
  EXPECT_NEAR(s.r(0), 1.0, 1e-15);
  EXPECT_NEAR(s.r.norm(), 1.0, 1e-15);
}

TEST(Secular, LinearOnly) {
  const auto s = solve_secular(Vec3::Zero(), Vec3(1, 0, 0));
  EXPECT_FALSE(s.hard_case);
  EXPECT_NEAR(s.mu, 1.0, 1e-12);
  EXPECT_NEAR(s.r(0), 1.0, 1e-12);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
}

TEST(Secular, HardCaseWithInteriorFill) {
  // b vanishes on the top direction and the interior part has norm < 1.
  const Vec3 a(3, 1, 0), b(0, 0.5, 0.3);
  const auto s = solve_secular(a, b);
  EXPECT_TRUE(s.hard_case);
  EXPECT_NEAR(s.r.norm(), 1.0, 1e-12);
  EXPECT_NEAR(s.value, sphere_grid_max(a, b), 1e-9);
}

TEST(Secular, HardCaseFallsBackToReducedRoot) {
  const Vec3 a(1, 0.9, 0), b(0, 2, 1);
  const auto s = solve_secular(a, b);
  EXPECT_NEAR(s.r.norm(), 1.0, 1e-12);
  EXPECT_NEAR(s.value, sphere_grid_max(a, b), 1e-9);
}

TEST(Secular, RandomAgainstSphereGrid) {
  Rng rng = make_rng(51);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 1000; ++t) {
    Vec3 a(nd(rng), nd(rng), nd(rng)), b(nd(rng), nd(rng), nd(rng));
    if (t % 10 == 0) b(0) = 0.0;      // near-degenerate linear term
    if (t % 25 == 0) a(1) = a(0);     // repeated eigenvalue
    std::sort(a.data(), a.data() + 3, std::greater<>());
    const auto s = solve_secular(a, b);
    EXPECT_NEAR(s.r.norm(), 1.0, 1e-10);
    EXPECT_GE(s.mu, a.maxCoeff() - 1e-10);
    EXPECT_NEAR(s.value, sphere_quadratic(a, b, s.r), 1e-10);
    EXPECT_NEAR(s.value, sphere_grid_max(a, b), 1e-7) << "trial " << t;
  }
}

TEST(QubitExact, Identity) {
  const auto q = qubit_norm12(identity_channel(2));
  EXPECT_NEAR(q.a(0), 2.0, 1e-14);
  EXPECT_NEAR(q.a(2), 2.0, 1e-14);
  EXPECT_NEAR(q.b.norm(), 0.0, 1e-14);
  EXPECT_TRUE(q.solution.hard_case);
  EXPECT_NEAR(q.norm12, 1.0, 1e-14);
}

TEST(QubitExact, CompletelyDepolarizing) {
  const auto q = qubit_norm12(depolarizing_map(2, 0.0));
  EXPECT_NEAR(q.a.norm(), 0.0, 1e-14);
  EXPECT_NEAR(q.norm12, 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(QubitExact, DepolarizingHalf) {
  const auto q = qubit_norm12(depolarizing_map(2, 0.5));
  EXPECT_NEAR(q.norm12 * q.norm12, 5.0 / 8.0, 1e-14);
  EXPECT_NEAR(q.norm12 * q.norm12, std::pow(oracle_norm_1to2(depolarizing_map(2, 0.5)).value, 2), 1e-8);
}

TEST(QubitExact, RejectsWrongInput) {
  EXPECT_THROW(qubit_norm12(identity_channel(3)), DomainError);
  const Channel not_tp({0.5 * ComplexMatrix::Identity(2, 2)});
  EXPECT_THROW(qubit_norm12(not_tp), DomainError);
  Rng rng = make_rng(50);
  EXPECT_THROW(qubit_smin_alpha(test::random_channel(2, 3, 1, rng), 1.0), DomainError);
}

TEST(QubitExact, InvariantsOnRandomChannels) {
  Rng rng = make_rng(52);
  for (int t = 0; t < 100; ++t) {
    const int out = 2 + t % 3;
    const Channel c = test::random_channel(2, out, std::max(test::min_count(2, out), 1 + t % 4), rng);
    const auto q = qubit_norm12(c);
    EXPECT_NEAR(q.norm12 * q.norm12, (q.trace_term + q.solution.value) / 4.0, 1e-10);
    EXPECT_GE(q.norm12, 1.0 / std::sqrt(out) - 1e-12);
    EXPECT_LE(q.norm12, 1.0 + 1e-12);
    // Direct evaluation at the returned Bloch vector.
    const ComplexMatrix sigma = c.apply(bloch_state(q.bloch));
    EXPECT_NEAR(trace_product(sigma, sigma).real(), q.norm12 * q.norm12, 1e-12);
    if (!q.solution.hard_case) EXPECT_NEAR(q.closed_form(), q.norm12, 1e-10);
  }
}

TEST(QubitExact, UnitaryConjugationInvariance) {
  Rng rng = make_rng(53);
  for (int t = 0; t < 20; ++t) {
    const Channel c = test::random_channel(2, 3, 2, rng);
    const ComplexMatrix u = random_unitary(2, rng);
    std::vector<ComplexMatrix> rotated;
    for (const auto& a : c.kraus()) rotated.push_back(a * u);
    EXPECT_NEAR(qubit_norm12(c).norm12, qubit_norm12(Channel(rotated)).norm12, 1e-10);
  }
}

TEST(QubitExact, DepolarizingMonotoneInT) {
  double prev = 0;
  for (int i = 0; i <= 20; ++i) {
    const double t = i / 20.0;
    const double v = qubit_norm12(depolarizing_map(2, t)).norm12;
    EXPECT_GE(v, prev - 1e-14);
    EXPECT_NEAR(qubit_norm12(depolarizing_map(2, -t)).norm12, v, 1e-12);
    prev = v;
  }
}

TEST(QubitExact, EntropyExamples) {
  for (double a : {0.5, 1.0, 2.0, kInfinity}) {
    EXPECT_NEAR(qubit_smin_alpha(identity_channel(2), a), 0.0, 1e-12);
    EXPECT_NEAR(qubit_smin_alpha(depolarizing_map(2, 0.0), a), 1.0, 1e-12);
  }
  const Map d = depolarizing_map(2, 0.5);
  EXPECT_NEAR(qubit_smin_alpha(d, 2.0), -std::log2(5.0 / 8.0), 1e-12);
  EXPECT_NEAR(qubit_smin_alpha(d, 2.0), oracle_smin_alpha(d, 2.0).value, 1e-6);
}

TEST(QubitExact, LowerBound) {
  const Map id = identity_channel(2);
  EXPECT_NEAR(smin_lower_bound(id, 1.0, 1.0).value, 0.0, 1e-15);
  EXPECT_TRUE(smin_lower_bound(id, 1.0, 1.0).exact);
  EXPECT_NEAR(smin_lower_bound(id, 1.0, std::sqrt(0.5)).value, 1.0, 1e-12);
  EXPECT_FALSE(smin_lower_bound(identity_channel(3), 1.0, 1.0).exact);
  EXPECT_THROW(smin_lower_bound(id, 2.5, 1.0), DomainError);
}

TEST(QubitExact, LowerBoundHoldsForQutritOutputs) {
  Rng rng = make_rng(54);
  OracleOptions opts;
  opts.restarts = 20;
  for (int t = 0; t < 5; ++t) {
    const Channel c = test::random_channel(2, 3, 2, rng);
    const double norm = qubit_norm12(c).norm12;
    EXPECT_GE(oracle_smin_alpha(c, 1.0, opts).value, smin_lower_bound(c, 1.0, norm).value - 1e-8);
  }
}

TEST(QubitExact, HolevoBound) {
  EXPECT_NEAR(holevo_upper_bound(identity_channel(2)), 1.0, 1e-12);
  EXPECT_NEAR(holevo_upper_bound(depolarizing_map(2, 0.0)), 0.0, 1e-12);
  EXPECT_THROW(holevo_upper_bound(identity_channel(3)), DomainError);
}

TEST(QubitExact, HolevoBoundTightForUnitalQubitChannels) {
  Rng rng = make_rng(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OracleOptions opts;
  opts.restarts = 10;
  for (int t = 0; t < 5; ++t) {
    std::vector<WeylWeight> p{{0, 0, u(rng)}, {0, 1, u(rng)}, {1, 0, u(rng)}, {1, 1, u(rng)}};
    double total = 0;
    for (auto& w : p) total += w.weight;
    for (auto& w : p) w.weight /= total;
    const Channel c = dwcc_channel(2, p);
    EXPECT_NEAR(holevo_upper_bound(c), 1.0 - oracle_smin_alpha(c, 1.0, opts).value, 1e-8);
  }
}
