#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "tprophet/distribution.hpp"
#include "tprophet/matroid.hpp"
#include "tprophet/random.hpp"

namespace tprophet {

/// Prices at every step are independent draws from one distribution.
struct IidModel {
  JointDiscreteDistribution distribution;
};

/// One draw from each of n distributions, revealed in a uniformly random order.
struct RandomOrderModel {
  std::vector<JointDiscreteDistribution> distributions;
};

using PriceModel = std::variant<IidModel, RandomOrderModel>;

class MarketInstance {
 public:
  static MarketInstance iid(Matroid matroid, JointDiscreteDistribution distribution,
                            std::size_t horizon, std::uint64_t seed);
  /// The horizon equals the number of distributions.
  static MarketInstance random_order(Matroid matroid,
                                     std::vector<JointDiscreteDistribution> distributions,
                                     std::uint64_t seed);

  const Matroid& matroid() const { return matroid_; }
  const PriceModel& model() const { return model_; }
  bool is_iid() const { return std::holds_alternative<IidModel>(model_); }
  std::size_t horizon() const { return horizon_; }
  std::uint64_t seed() const { return seed_; }

  MarketInstance with_seed(std::uint64_t seed) const;

 private:
  MarketInstance(Matroid matroid, PriceModel model, std::size_t horizon, std::uint64_t seed)
      : matroid_(std::move(matroid)), model_(std::move(model)), horizon_(horizon), seed_(seed) {}

  Matroid matroid_;
  PriceModel model_;
  std::size_t horizon_;
  std::uint64_t seed_;
};

/// A realized run. holdings[t] is the set held after trading at step t, and
/// cashflows[t] is the sale value of holdings[t-1] minus the cost of
/// holdings[t], both at prices[t]. The last holding is always empty.
struct Trace {
  std::vector<PriceVector> prices;
  std::vector<StockSet> holdings;
  std::vector<Rational> cashflows;
  Rational total_profit;
};

/// Builds a trace from prices and per-step holdings under the sell-all,
/// rebuy accounting. The final holding is forced to be empty.
Trace settle(std::vector<PriceVector> prices, std::vector<StockSet> holdings);

/// Random stream owned by Monte Carlo trial `trial` of a run seeded with `seed`.
RandomStream trial_stream(std::uint64_t seed, std::uint64_t trial);

/// Uniform permutation of {0, ..., n-1} by Fisher-Yates.
std::vector<std::size_t> draw_order(std::size_t n, RandomStream& rng);

/// Realized price sequence of one trial. Prices and the arrival order use
/// separate child streams, so a random-order instance whose distributions
/// are all equal yields the same prices as the matching i.i.d. instance.
std::vector<PriceVector> draw_prices(const MarketInstance& inst, RandomStream& trial);

/// Threshold policy on a known price sequence: at every step but the last,
/// after liquidating, buy the max-weight feasible set for `mu - prices[t]`.
Trace execute_online(const Matroid& m, std::span<const Rational> mu,
                     std::vector<PriceVector> prices);

/// Optimal online policy for i.i.d. prices (mu is the distribution mean).
Trace run_online_iid(const MarketInstance& inst, RandomStream& trial);
/// Same, using trial 0 of the instance seed.
Trace run_online_iid(const MarketInstance& inst);

/// Online policy for random-order prices, using the mean of the uniform
/// mixture of all distributions as a fixed threshold.
Trace run_online_random_order(const MarketInstance& inst, RandomStream& trial);
Trace run_online_random_order(const MarketInstance& inst);

struct OfflineResult {
  Trace trace;
  Rational profit;
};

/// Hindsight optimum: at each step t < n buys the max-weight feasible set for
/// prices[t+1] - prices[t].
OfflineResult run_offline_optimal(std::span<const PriceVector> prices, const Matroid& m);

enum class Policy { kOnlineIid, kOnlineRandomOrder, kOffline };

std::string_view policy_name(Policy policy);

struct MonteCarloStats {
  std::size_t trials = 0;
  double mean_profit = 0.0;
  /// Sample standard deviation over sqrt(trials); zero for a single trial.
  double std_error = 0.0;
  /// mean_profit / (horizon - 1), or 0 when the horizon is 1.
  double per_step_mean = 0.0;
};

/// Runs `policy` on `trials` independent realizations. Trial i draws from
/// trial_stream(seed, i) and the profits are reduced exactly, so the result
/// does not depend on `threads` (0 selects the hardware concurrency).
MonteCarloStats monte_carlo(const MarketInstance& inst, Policy policy, std::size_t trials,
                            std::size_t threads = 0);

/// Exact profit of every trial, in trial order.
std::vector<Rational> trial_profits(const MarketInstance& inst, Policy policy,
                                    std::size_t trials, std::size_t threads = 0);

}  // namespace tprophet
