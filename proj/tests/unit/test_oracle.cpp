#include "moe/oracle.hpp"
#include "moe/qubit_exact.hpp"

#include "helpers.hpp"

#include <cstring>

using namespace moe;

namespace {

OracleOptions quick(int restarts = 30) {
  OracleOptions o;
  o.restarts = restarts;
  return o;
}

/// Phi(Tr_2 rho) on a doubled input: its pure inputs reach every rank-2 state of Phi.
Channel with_traced_ancilla(const Channel& c) {
  std::vector<ComplexMatrix> kraus;
  for (const auto& a : c.kraus())
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix bra = ComplexMatrix::Zero(1, 2);
      bra(0, j) = 1.0;
      kraus.push_back(kron(a, bra));
    }
  return Channel(kraus);
}

}  // namespace

TEST(Oracle, IdentityNorm) {
  for (int n = 2; n <= 4; ++n) EXPECT_NEAR(oracle_norm_1to2(identity_channel(n), quick()).value, 1.0, 1e-12);
}

TEST(Oracle, CompletelyDepolarizingNorm) {
  for (int n = 2; n <= 4; ++n)
    EXPECT_NEAR(oracle_norm_1to2(depolarizing_map(n, 0.0), quick()).value, 1.0 / std::sqrt(n), 1e-12);
}

TEST(Oracle, QubitDepolarizingAgreesWithExact) {
  const Map d = depolarizing_map(2, 0.5);
  EXPECT_NEAR(oracle_norm_1to2(d).value, qubit_norm12(d).norm12, 1e-8);
}

TEST(Oracle, ResultInvariants) {
  Rng rng = make_rng(61);
  const Channel c = test::random_channel(3, 2, 3, rng);
  const auto r = oracle_norm_1to2(c, quick());
  EXPECT_NEAR(r.arg.norm(), 1.0, 1e-12);
  const ComplexMatrix s = c.apply_pure(r.arg);
  EXPECT_NEAR(std::sqrt(trace_product(s, s).real()), r.value, 1e-12);
  EXPECT_EQ(r.restarts, 30);
  EXPECT_EQ(r.seed, 42u);
  EXPECT_GE(r.converged_fraction, 0.0);
  EXPECT_LE(r.converged_fraction, 1.0);
  const auto e = oracle_smin_alpha(c, 1.0, quick());
  EXPECT_NEAR(renyi_entropy(c.apply_pure(e.arg), 1.0), e.value, 1e-12);
}

TEST(Oracle, CollisionEntropyMatchesNorm) {
  Rng rng = make_rng(62);
  for (int t = 0; t < 5; ++t) {
    const Channel c = test::random_channel(3, 3, 2, rng);
    const double n = oracle_norm_1to2(c, quick()).value;
    EXPECT_NEAR(-std::log2(n * n), oracle_smin_alpha(c, 2.0, quick()).value, 1e-9);
  }
}

TEST(Oracle, IdentityEntropy) {
  for (double a : {0.5, 1.0, 2.0, kInfinity}) EXPECT_NEAR(oracle_smin_alpha(identity_channel(3), a, quick()).value, 0.0, 1e-9);
  EXPECT_THROW(oracle_smin_alpha(identity_channel(2), 0.0), DomainError);
}

TEST(Oracle, QubitChannelsMatchExactEntropy) {
  Rng rng = make_rng(63);
  for (int t = 0; t < 10; ++t) {
    const Channel c = test::random_channel(2, 2, 2 + t % 3, rng);
    for (double a : {1.0, 2.0, kInfinity})
      EXPECT_NEAR(oracle_smin_alpha(c, a, quick(10)).value, qubit_smin_alpha(c, a), 1e-6) << t << ' ' << a;
  }
}

TEST(Oracle, Determinism) {
  Rng rng = make_rng(64);
  const Channel c = test::random_channel(4, 3, 3, rng);
  OracleOptions one = quick(40), many = quick(40);
  one.threads = 1;
  many.threads = 4;
  const auto a = oracle_norm_1to2(c, one), b = oracle_norm_1to2(c, many), again = oracle_norm_1to2(c, one);
  EXPECT_EQ(std::memcmp(&a.value, &b.value, sizeof(double)), 0);
  EXPECT_EQ(a.arg, b.arg);
  EXPECT_EQ(a.arg, again.arg);
  EXPECT_EQ(a.converged_fraction, b.converged_fraction);
}

TEST(Oracle, PureStatesSuffice) {
  Rng rng = make_rng(65);
  for (int t = 0; t < 5; ++t) {
    const Channel c = test::random_channel(2 + t % 2, 2, 2, rng);
    const Channel mixed = with_traced_ancilla(c);
    EXPECT_LE(oracle_norm_1to2(mixed, quick()).value, oracle_norm_1to2(c, quick()).value + 1e-9);
    EXPECT_GE(oracle_smin_alpha(mixed, 1.0, quick()).value, oracle_smin_alpha(c, 1.0, quick()).value - 1e-9);
    EXPECT_GE(oracle_smin_alpha(mixed, 0.5, quick()).value, oracle_smin_alpha(c, 0.5, quick()).value - 1e-9);
  }
}

TEST(Oracle, GradientsMatchFiniteDifferences) {
  Rng rng = make_rng(66);
  for (int t = 0; t < 10; ++t) {
    // Three Kraus operators keep outputs full rank, where alpha < 1 entropies are smooth.
    const Map c = test::random_channel(3, 3, 3, rng);
    const ComplexVector psi = random_pure_state(3, rng);
    ComplexVector d = random_ginibre(3, 1, rng);
    d -= psi.dot(d).real() * psi;
    d.normalize();
    const double h = 1e-6;
    auto check = [&](const auto& obj) {
      ComplexVector g;
      obj.value_grad(psi, g);
      const double fd = (obj.value(psi + h * d) - obj.value(psi - h * d)) / (2 * h);
      const double an = g.dot(d).real();
      EXPECT_NEAR(fd, an, 1e-5 * std::max(1.0, std::abs(an)));
    };
    check(PurityObjective(c));
    for (double a : {0.5, 1.0, 1.5, 3.0}) check(NegEntropyObjective(c, a));
  }
}

TEST(Oracle, P2AtOneDominatesNormForCp) {
  Rng rng = make_rng(67);
  for (int t = 0; t < 5; ++t) {
    const Channel c = test::random_channel(2, 2, 2, rng);
    EXPECT_GE(oracle_norm_p2_complex(c, 1.0, quick()).value, oracle_norm_1to2(c, quick()).value - 1e-9);
  }
}

TEST(Oracle, P2Identity) {
  for (double p : {1.0, 1.5, 2.0}) EXPECT_GE(oracle_norm_p2_complex(identity_channel(3), p, quick(5)).value, 1.0 - 1e-12);
}

TEST(Oracle, P2AtTwoIsHilbertSchmidtNorm) {
  Rng rng = make_rng(68);
  for (int t = 0; t < 5; ++t) {
    const Channel c = test::random_channel(3, 2, 3, rng);
    const double exact = hs_operator_norm(c);
    const double est = oracle_norm_p2_complex(c, 2.0, quick(10)).value;
    EXPECT_GE(est, exact - 1e-6);
    EXPECT_LE(est, exact + 1e-9);
  }
  EXPECT_THROW(oracle_norm_p2_complex(identity_channel(2), 2.5), DomainError);
}

TEST(Oracle, TensorIdentity) {
  const auto t = oracle_tensor(identity_channel(2), identity_channel(2), TensorObjective::norm12, 2.0, quick());
  EXPECT_NEAR(t.best.value, 1.0, 1e-12);
  EXPECT_NEAR(t.gap, 0.0, 1e-12);
}

TEST(Oracle, TensorWernerHolevoMultiplicative) {
  const Channel wh = werner_holevo_channel(3);
  const auto t = oracle_tensor(wh, wh, TensorObjective::norm12, 2.0, quick(60));
  EXPECT_NEAR(t.best.value, 0.5, 1e-6);
  EXPECT_NEAR(t.product_value, 0.5, 1e-6);
  EXPECT_LE(std::abs(t.gap), 1e-6);
  const auto s = oracle_tensor(wh, wh, TensorObjective::smin, 2.0, quick(60));
  EXPECT_NEAR(s.best.value, 2.0, 1e-6);
}

TEST(Oracle, TensorBudget) {
  EXPECT_THROW(oracle_tensor(identity_channel(6), identity_channel(6), TensorObjective::norm12), BudgetError);
}

TEST(Oracle, ThreadsFromEnvironment) {
  EXPECT_EQ(resolve_threads(3), 3u);
  EXPECT_GE(resolve_threads(0), 1u);
}
