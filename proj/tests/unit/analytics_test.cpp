#include <gtest/gtest.h>

#include <tprophet/analytics.hpp>
#include <tprophet/corpus.hpp>
#include <tprophet/errors.hpp>
#include <tprophet/hardness.hpp>

#include "oracles.hpp"

using namespace tprophet;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

JointDiscreteDistribution point(std::initializer_list<std::int64_t> values) {
  PriceVector p;
  for (auto v : values) p.push_back(q(v));
  return JointDiscreteDistribution::point_mass(std::move(p));
}

MarginalDistribution symmetric_coin() {
  return MarginalDistribution({{q(-1), q(1, 2)}, {q(1), q(1, 2)}});
}

}  // namespace

TEST(Analytics, SingleAtomEarnsNothing) {
  const Matroid m = Matroid::uniform(2, 1);
  const auto d = point({3, 4});
  EXPECT_EQ(exact_online_per_step(m, d), 0);
  EXPECT_EQ(exact_offline_per_step(m, d), 0);
  const auto report = exact_ratio(m, d, matroid_bound(m));
  EXPECT_FALSE(report.ratio.has_value());
  EXPECT_TRUE(report.satisfied);
}

TEST(Analytics, SingleStockCoin) {
  const Matroid m = Matroid::uniform(1, 1);
  const JointDiscreteDistribution d({{{q(0)}, q(1, 2)}, {{q(2)}, q(1, 2)}});
  EXPECT_EQ(exact_offline_per_step(m, d), q(1, 2));
  EXPECT_EQ(exact_online_per_step(m, d), q(1, 2));
}

TEST(Analytics, UniformRatioSpotValue) {
  const Matroid m = Matroid::uniform(2, 1);
  const auto d = product(uniform_ratio_hardness_instance(2, q(1, 2)));
  EXPECT_EQ(exact_online_per_step(m, d), q(3, 4));
  EXPECT_EQ(exact_offline_per_step(m, d), q(7, 8));
  EXPECT_EQ(oracle::uniform_online(d, 1), q(3, 4));
  EXPECT_EQ(oracle::uniform_offline(d, 1), q(7, 8));
  const auto report = exact_ratio(m, d, independent_bound(2, 1));
  ASSERT_TRUE(report.ratio.has_value());
  EXPECT_EQ(*report.ratio, q(6, 7));
  EXPECT_EQ(report.bound, q(1, 2));
  EXPECT_TRUE(report.satisfied);
}

TEST(Analytics, MatroidHardnessOnlineValue) {
  const std::size_t k = 4;
  const std::size_t r = 2;
  const Matroid m = Matroid::uniform(k, r);
  for (auto eps : {q(1, 10), q(1, 100), q(1, 1000)}) {
    const auto d = matroid_hardness_instance(k, r, eps);
    const Rational keps = q(static_cast<std::int64_t>(k)) * eps;
    EXPECT_EQ(exact_online_per_step(m, d), q(static_cast<std::int64_t>(r)) * (1 - keps / (1 + keps)));
    EXPECT_EQ(exact_offline_per_step(m, d), oracle::uniform_offline(d, r));
  }
  const auto report = exact_ratio(m, matroid_hardness_instance(k, r, q(1, 1000)), matroid_bound(m));
  EXPECT_EQ(report.bound, q(1, 3));
  EXPECT_TRUE(report.satisfied);
  EXPECT_LE(*report.ratio, q(1, 3) + q(1, 100));
}

TEST(Analytics, ResourceAugmentedRatio) {
  const auto d = product(uniform_ratio_hardness_instance(3, q(1, 4)));
  const auto report = exact_ratio(Matroid::uniform(3, 2), Matroid::uniform(3, 1), d, q(1, 2));
  EXPECT_EQ(report.online_per_step, oracle::uniform_online(d, 2));
  EXPECT_EQ(report.offline_per_step, oracle::uniform_offline(d, 1));
}

TEST(Analytics, CapacityLimits) {
  std::vector<ValueProb> many;
  for (int v = 0; v < 101; ++v) many.push_back({q(v), q(1, 101)});
  const auto big = product(std::vector<MarginalDistribution>(2, MarginalDistribution(many)), 20000);
  EXPECT_THROW(exact_online_per_step(Matroid::uniform(2, 1), big), CapacityError);
  EXPECT_THROW(exact_offline_per_step(Matroid::uniform(2, 1), big), CapacityError);
}

TEST(Analytics, RandomOrderTwoPointExample) {
  const Matroid m = Matroid::uniform(1, 1);
  const std::vector<JointDiscreteDistribution> ds{point({0}), point({2})};
  EXPECT_EQ(exact_random_order_offline(m, ds), 1);
  EXPECT_EQ(exact_random_order_online(m, ds), 1);
  EXPECT_THROW(exact_random_order_offline(m, std::span(ds).first(1)), InputError);
  EXPECT_THROW(exact_random_order_online(m, std::span(ds).first(1)), InputError);
}

TEST(Analytics, RandomOrderWithIdenticalDistributions) {
  RandomStream rng(12);
  for (int i = 0; i < 25; ++i) {
    const Matroid m = random_matroid(rng, 4);
    const auto d = random_joint(rng, m.ground_size(), 4);
    const std::vector<JointDiscreteDistribution> ds(2 + rng.uniform_below(4), d);
    EXPECT_EQ(exact_random_order_offline(m, ds), exact_offline_per_step(m, d));
    EXPECT_EQ(exact_random_order_online(m, ds), exact_online_per_step(m, d));
  }
  const Matroid m = Matroid::uniform(2, 2);
  const std::vector<JointDiscreteDistribution> same(3, point({1, 1}));
  EXPECT_EQ(exact_random_order_offline(m, same), 0);
  EXPECT_EQ(exact_random_order_online(m, same), 0);
}

TEST(Analytics, LeaveOneOutMeanIdentity) {
  RandomStream rng(4);
  const auto ds = random_order_family(rng, 5, 3, 3);
  const MeanVector mu = mean(uniform_mixture(ds));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const MeanVector own = mean(ds[i]);
    const MeanVector rest = leave_one_out_mean(ds, i);
    for (std::size_t s = 0; s < mu.size(); ++s) {
      EXPECT_EQ(mu[s], (own[s] + 4 * rest[s]) / 5);
    }
  }
}

// Re-derives the random-order values by enumerating permutations of n = 3
// point masses, using the uniform top-value oracle.
TEST(Analytics, RandomOrderMatchesPermutationEnumeration) {
  const Matroid m = Matroid::uniform(2, 1);
  const std::vector<std::vector<Rational>> pts{{q(0), q(3)}, {q(2), q(1)}, {q(5), q(0)}};
  std::vector<JointDiscreteDistribution> ds;
  for (const auto& p : pts) ds.push_back(JointDiscreteDistribution::point_mass(p));

  std::vector<std::size_t> order{0, 1, 2};
  Rational offline = 0;
  Rational online = 0;
  std::vector<Rational> mu(2, Rational(0));
  for (const auto& p : pts) {
    for (std::size_t s = 0; s < 2; ++s) mu[s] += p[s] / 3;
  }
  int perms = 0;
  do {
    ++perms;
    for (std::size_t t = 0; t + 1 < 3; ++t) {
      const auto& now = pts[order[t]];
      const auto& next = pts[order[t + 1]];
      offline += oracle::top_uniform({next[0] - now[0], next[1] - now[1]}, 1);
      const auto held = max_weight_feasible_set(m, difference(mu, now)).set;
      for (std::size_t s : held.elements()) online += next[s] - now[s];
    }
  } while (std::next_permutation(order.begin(), order.end()));
  const Rational per_step = Rational(perms * 2);
  EXPECT_EQ(exact_random_order_offline(m, ds), offline / per_step);
  EXPECT_EQ(exact_random_order_online(m, ds), online / per_step);
}

TEST(Analytics, DensityLemmaExamples) {
  const Matroid m = Matroid::uniform(3, 1);
  EXPECT_TRUE(check_density_lemma(m, std::vector<Rational>{q(1), q(1), q(1)}));
  EXPECT_TRUE(check_density_lemma(m, std::vector<Rational>{q(-1), q(-2), q(-1, 2)}));
  // With a smaller density the equality case breaks.
  EXPECT_FALSE(check_density_lemma(m, std::vector<Rational>{q(1), q(1), q(1)}, q(2)));
}

TEST(Analytics, PolynomialInequalityExamples) {
  EXPECT_TRUE(check_polynomial_inequality(2, 1, std::vector<Rational>{q(1), q(1)}));
  EXPECT_EQ(expected_capped_count(std::vector<Rational>{q(1), q(1)}, 1), 1);
  EXPECT_TRUE(check_polynomial_inequality(4, 2, std::vector<Rational>(4, q(0))));
  EXPECT_THROW(check_polynomial_inequality(1, 1, std::vector<Rational>{q(1)}), PreconditionError);
  EXPECT_THROW(check_polynomial_inequality(2, 1, std::vector<Rational>{q(2), q(0)}), InputError);
  EXPECT_THROW(check_polynomial_inequality(21, 1, std::vector<Rational>(21, q(0))), CapacityError);
}

TEST(Analytics, ExpectedCappedCountMatchesDirectSum) {
  const std::vector<Rational> a{q(1, 2), q(1, 3), q(3, 4)};
  // P[|S| = 1] + 2 P[|S| >= 2] for cap 2.
  const Rational p0 = q(1, 2) * q(2, 3) * q(1, 4);
  const Rational p3 = q(1, 2) * q(1, 3) * q(3, 4);
  const Rational p1 = q(1, 2) * q(2, 3) * q(1, 4) + q(1, 2) * q(1, 3) * q(1, 4) +
                      q(1, 2) * q(2, 3) * q(3, 4);
  const Rational p2 = 1 - p0 - p1 - p3;
  EXPECT_EQ(expected_capped_count(a, 2), p1 + 2 * (p2 + p3));
  EXPECT_EQ(expected_capped_count(a, 3), q(1, 2) + q(1, 3) + q(3, 4));
}

TEST(Analytics, UniformOfflineBound) {
  const auto half = half_hardness_instance(2, q(1, 4));
  EXPECT_TRUE(check_uniform_offline_bound(half, 1));
  // Breakpoint set {4}: a = (1/4, 1/4), integrand 2(1/2) - 2(1/16) = 7/8 over length 4.
  EXPECT_EQ(uniform_offline_breakpoint_bound(half), q(7, 2));

  const std::vector<MarginalDistribution> coins(2, symmetric_coin());
  EXPECT_TRUE(check_uniform_offline_bound(coins, 1));

  const std::vector<MarginalDistribution> zeros(3, MarginalDistribution({{q(0), q(1)}}));
  EXPECT_EQ(uniform_offline_breakpoint_bound(zeros), 0);
  EXPECT_TRUE(check_uniform_offline_bound(zeros, 2));

  EXPECT_THROW(check_uniform_offline_bound(uniform_ratio_hardness_instance(2, q(1, 2)), 1),
               PreconditionError);
  EXPECT_THROW(uniform_offline_breakpoint_bound(std::vector<MarginalDistribution>{symmetric_coin()}),
               PreconditionError);
}

TEST(Analytics, UniformOnlineFormula) {
  const auto half = half_hardness_instance(2, q(1, 4));
  EXPECT_TRUE(check_uniform_online_formula(half, 1));
  EXPECT_EQ(uniform_online_breakpoint_value(half, 1),
            oracle::uniform_online(product(half), 1));

  const std::vector<MarginalDistribution> single{symmetric_coin()};
  EXPECT_EQ(uniform_online_breakpoint_value(single, 1), q(1, 2));
  EXPECT_TRUE(check_uniform_online_formula(single, 1));

  const std::vector<MarginalDistribution> zeros(2, MarginalDistribution({{q(0), q(1)}}));
  EXPECT_EQ(uniform_online_breakpoint_value(zeros, 1), 0);
}

TEST(Analytics, TheoremChecksOnRandomInstances) {
  RandomStream rng(321);
  for (int i = 0; i < 60; ++i) {
    const Matroid m = random_matroid(rng, 5);
    const Rational d = density(m);
    const auto dist = centered(random_joint(rng, m.ground_size(), 6));
    EXPECT_TRUE(check_matroid_theorem(m, dist, d));
    const auto x = random_weights(rng, m.ground_size());
    const auto y = random_weights(rng, m.ground_size());
    EXPECT_TRUE(check_density_lemma(m, x, d));
    EXPECT_TRUE(check_decomposition_lemma(m, x, y, d));

    const auto ds = random_order_family(rng, 2 + rng.uniform_below(4), m.ground_size(), 3);
    EXPECT_TRUE(check_random_order_theorem(m, ds, d));
    EXPECT_TRUE(check_mixture_pair_lemma(m, ds));
    EXPECT_TRUE(check_discrepancy_lemma(m, ds, d));
  }
}

TEST(Analytics, IndependentTheoremOnHardnessInstances) {
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto ms = uniform_ratio_hardness_instance(k, q(1, 3));
    for (std::size_t cap = 1; cap <= k; ++cap) {
      for (std::size_t offline_cap = 1; offline_cap <= cap; ++offline_cap) {
        EXPECT_TRUE(check_independent_theorem(ms, cap, offline_cap));
      }
    }
  }
  EXPECT_THROW(check_independent_theorem(half_hardness_instance(2, q(1, 4)), 1, 2), InputError);
}
