#include <gtest/gtest.h>

#include <tprophet/analytics.hpp>
#include <tprophet/corpus.hpp>
#include <tprophet/engine.hpp>
#include <tprophet/errors.hpp>

#include "oracles.hpp"

using namespace tprophet;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }

std::vector<PriceVector> column(std::initializer_list<std::int64_t> values) {
  std::vector<PriceVector> out;
  for (auto v : values) out.push_back({q(v)});
  return out;
}

JointDiscreteDistribution coin02() {
  return JointDiscreteDistribution({{{q(0)}, q(1, 2)}, {{q(2)}, q(1, 2)}});
}

void expect_valid(const Matroid& m, const Trace& t) {
  ASSERT_EQ(t.holdings.size(), t.prices.size());
  ASSERT_TRUE(t.holdings.back().empty());
  Rational cash = 0;
  Rational telescoped = 0;
  for (std::size_t i = 0; i < t.prices.size(); ++i) {
    ASSERT_TRUE(m.is_feasible(t.holdings[i]));
    cash += t.cashflows[i];
    if (i + 1 < t.prices.size()) {
      for (std::size_t s : t.holdings[i].elements()) telescoped += t.prices[i + 1][s] - t.prices[i][s];
    }
  }
  EXPECT_EQ(cash, t.total_profit);
  EXPECT_EQ(telescoped, t.total_profit);
}

}  // namespace

TEST(Engine, DeterministicPricesEarnNothing) {
  const Matroid m = Matroid::uniform(3, 2);
  const auto d = JointDiscreteDistribution::point_mass({q(1), q(2), q(3)});
  const auto inst = MarketInstance::iid(m, d, 6, 9);
  const Trace t = run_online_iid(inst);
  EXPECT_EQ(t.total_profit, 0);
  expect_valid(m, t);
  for (auto policy : {Policy::kOnlineIid, Policy::kOffline}) {
    const auto stats = monte_carlo(inst, policy, 20);
    EXPECT_EQ(stats.mean_profit, 0.0);
    EXPECT_EQ(stats.std_error, 0.0);
  }
}

TEST(Engine, HandTracedOnlineRun) {
  const Matroid m = Matroid::uniform(1, 1);
  const Trace t = execute_online(m, std::vector<Rational>{q(1)}, column({0, 2, 0}));
  EXPECT_EQ(t.holdings[0], StockSet{0});
  EXPECT_TRUE(t.holdings[1].empty());
  EXPECT_TRUE(t.holdings[2].empty());
  EXPECT_EQ(t.total_profit, 2);
  expect_valid(m, t);
}

TEST(Engine, OfflineExamples) {
  const Matroid m = Matroid::uniform(2, 1);
  const std::vector<PriceVector> prices{{q(1), q(4)}, {q(3), q(2)}, {q(0), q(5)}};
  const auto result = run_offline_optimal(prices, m);
  EXPECT_EQ(result.profit, 5);
  EXPECT_EQ(result.trace.holdings[0], StockSet{0});
  EXPECT_EQ(result.trace.holdings[1], StockSet{1});
  EXPECT_EQ(result.trace.total_profit, 5);

  const Matroid one = Matroid::uniform(1, 1);
  EXPECT_EQ(run_offline_optimal(column({4}), one).profit, 0);
  EXPECT_EQ(run_offline_optimal(column({5, 5, 3, 1, 0}), one).profit, 0);
}

TEST(Engine, RandomOrderTwoStepExample) {
  const Matroid m = Matroid::uniform(1, 1);
  const std::vector<JointDiscreteDistribution> ds{JointDiscreteDistribution::point_mass({q(0)}),
                                                  JointDiscreteDistribution::point_mass({q(2)})};
  const auto inst = MarketInstance::random_order(m, ds, 5);
  EXPECT_EQ(inst.horizon(), 2U);
  int up = 0;
  int down = 0;
  for (std::uint64_t trial = 0; trial < 64; ++trial) {
    RandomStream rng = trial_stream(5, trial);
    const Trace t = run_online_random_order(inst, rng);
    expect_valid(m, t);
    if (t.prices[0][0] == 0) {
      EXPECT_EQ(t.total_profit, 2);
      ++up;
    } else {
      EXPECT_EQ(t.total_profit, 0);
      ++down;
    }
  }
  EXPECT_GT(up, 0);
  EXPECT_GT(down, 0);
}

TEST(Engine, IdenticalRandomOrderMatchesIid) {
  RandomStream rng(17);
  for (int i = 0; i < 20; ++i) {
    const Matroid m = random_matroid(rng, 4);
    const auto d = random_joint(rng, m.ground_size(), 4);
    const std::size_t n = 2 + rng.uniform_below(5);
    const std::uint64_t seed = rng.next_u64();
    const auto ro = MarketInstance::random_order(m, std::vector<JointDiscreteDistribution>(n, d), seed);
    const auto iid = MarketInstance::iid(m, d, n, seed);
    const Trace a = run_online_random_order(ro);
    const Trace b = run_online_iid(iid);
    EXPECT_EQ(a.prices, b.prices);
    EXPECT_EQ(a.holdings, b.holdings);
    EXPECT_EQ(a.total_profit, b.total_profit);
  }
}

TEST(Engine, TraceInvariantsAndOfflineDominance) {
  RandomStream rng(31);
  for (int i = 0; i < 60; ++i) {
    const Matroid m = random_matroid(rng, 5);
    const auto d = random_joint(rng, m.ground_size(), 6);
    const auto inst = MarketInstance::iid(m, d, 1 + rng.uniform_below(8), rng.next_u64());
    const Trace online = run_online_iid(inst);
    expect_valid(m, online);
    const auto offline = run_offline_optimal(online.prices, m);
    expect_valid(m, offline.trace);
    EXPECT_EQ(offline.trace.total_profit, offline.profit);
    EXPECT_GE(offline.profit, online.total_profit);

    std::vector<std::uint64_t> masks;
    for (auto s : online.holdings) masks.push_back(s.bits());
    EXPECT_EQ(oracle::hold_aware_profit(online.prices, masks), online.total_profit);
  }
}

TEST(Engine, ZeroExpectationShiftKeepsDecisions) {
  RandomStream rng(77);
  for (int i = 0; i < 40; ++i) {
    const Matroid m = random_matroid(rng, 5);
    const auto d = random_joint(rng, m.ground_size(), 6);
    const std::uint64_t seed = rng.next_u64();
    const Trace raw = run_online_iid(MarketInstance::iid(m, d, 6, seed));
    const Trace zero = run_online_iid(MarketInstance::iid(m, centered(d), 6, seed));
    EXPECT_EQ(raw.holdings, zero.holdings);
    EXPECT_EQ(raw.total_profit, zero.total_profit);
    EXPECT_EQ(run_offline_optimal(raw.prices, m).profit, run_offline_optimal(zero.prices, m).profit);
  }
}

TEST(Engine, MonteCarloIgnoresThreadCount) {
  const Matroid m = Matroid::uniform(2, 1);
  const auto d = product(std::vector<MarginalDistribution>(
      2, MarginalDistribution({{q(0), q(1, 2)}, {q(2), q(1, 2)}})));
  const auto inst = MarketInstance::iid(m, d, 5, 2024);
  for (auto policy : {Policy::kOnlineIid, Policy::kOffline}) {
    const auto one = monte_carlo(inst, policy, 257, 1);
    const auto four = monte_carlo(inst, policy, 257, 4);
    EXPECT_EQ(one.mean_profit, four.mean_profit);
    EXPECT_EQ(one.std_error, four.std_error);
    EXPECT_EQ(one.per_step_mean, four.per_step_mean);
    EXPECT_EQ(trial_profits(inst, policy, 50, 1), trial_profits(inst, policy, 50, 3));
  }
}

TEST(Engine, MonteCarloAgreesWithExactValues) {
  const Matroid m = Matroid::uniform(1, 1);
  const auto inst = MarketInstance::iid(m, coin02(), 11, 4);
  const auto online = monte_carlo(inst, Policy::kOnlineIid, 4000);
  const auto offline = monte_carlo(inst, Policy::kOffline, 4000);
  const double online_exact = exact_online_per_step(m, coin02()).get_d();
  const double offline_exact = exact_offline_per_step(m, coin02()).get_d();
  const double scale = 1.0 / 10;
  EXPECT_NEAR(online.per_step_mean, online_exact, 4 * online.std_error * scale);
  EXPECT_NEAR(offline.per_step_mean, offline_exact, 4 * offline.std_error * scale);
}

TEST(Engine, InputErrors) {
  const Matroid m = Matroid::uniform(1, 1);
  const auto inst = MarketInstance::iid(m, coin02(), 3, 1);
  EXPECT_THROW(monte_carlo(inst, Policy::kOnlineIid, 0), InputError);
  EXPECT_THROW(monte_carlo(inst, Policy::kOnlineRandomOrder, 5), InputError);
  EXPECT_THROW(MarketInstance::iid(m, coin02(), 0, 1), InputError);
  EXPECT_THROW(MarketInstance::iid(Matroid::uniform(2, 1), coin02(), 3, 1), InputError);
  EXPECT_THROW(run_offline_optimal(std::vector<PriceVector>{}, m), InputError);
}
