#include "tprophet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tprophet/errors.hpp"

namespace tprophet {

namespace {

constexpr std::uint64_t kPriceStream = 0;
constexpr std::uint64_t kOrderStream = 1;

void check_dimension(const JointDiscreteDistribution& d, const Matroid& m) {
  if (d.dimension() != m.ground_size()) {
    throw InputError("distribution has " + std::to_string(d.dimension()) +
                     " stocks but the matroid has " + std::to_string(m.ground_size()));
  }
}

const IidModel& require_iid(const MarketInstance& inst) {
  const auto* model = std::get_if<IidModel>(&inst.model());
  if (model == nullptr) throw InputError("policy requires an i.i.d. instance");
  return *model;
}

const RandomOrderModel& require_random_order(const MarketInstance& inst) {
  const auto* model = std::get_if<RandomOrderModel>(&inst.model());
  if (model == nullptr) throw InputError("policy requires a random-order instance");
  return *model;
}

MeanVector mixture_mean(const RandomOrderModel& model) {
  const auto& ds = model.distributions;
  MeanVector mu(ds.front().dimension(), Rational(0));
  for (const auto& d : ds) {
    const MeanVector part = mean(d);
    for (std::size_t s = 0; s < mu.size(); ++s) mu[s] += part[s];
  }
  const Rational n(static_cast<long>(ds.size()));
  for (auto& v : mu) v /= n;
  return mu;
}

Rational trial_profit(const MarketInstance& inst, Policy policy, std::uint64_t trial) {
  RandomStream rng = trial_stream(inst.seed(), trial);
  switch (policy) {
    case Policy::kOnlineIid:
      return run_online_iid(inst, rng).total_profit;
    case Policy::kOnlineRandomOrder:
      return run_online_random_order(inst, rng).total_profit;
    case Policy::kOffline: {
      const auto prices = draw_prices(inst, rng);
      return run_offline_optimal(prices, inst.matroid()).profit;
    }
  }
  throw InputError("unknown policy");
}

}  // namespace

MarketInstance MarketInstance::iid(Matroid matroid, JointDiscreteDistribution distribution,
                                   std::size_t horizon, std::uint64_t seed) {
  if (horizon == 0) throw InputError("horizon must be at least 1");
  check_dimension(distribution, matroid);
  return MarketInstance(std::move(matroid), IidModel{std::move(distribution)}, horizon, seed);
}

MarketInstance MarketInstance::random_order(Matroid matroid,
                                            std::vector<JointDiscreteDistribution> distributions,
                                            std::uint64_t seed) {
  if (distributions.empty()) throw InputError("random-order instance needs distributions");
  for (const auto& d : distributions) check_dimension(d, matroid);
  const std::size_t n = distributions.size();
  return MarketInstance(std::move(matroid), RandomOrderModel{std::move(distributions)}, n, seed);
}

MarketInstance MarketInstance::with_seed(std::uint64_t seed) const {
  MarketInstance copy = *this;
  copy.seed_ = seed;
  return copy;
}

Trace settle(std::vector<PriceVector> prices, std::vector<StockSet> holdings) {
  if (prices.size() != holdings.size()) {
    throw InputError("trace needs one holding per step");
  }
  Trace trace;
  if (!holdings.empty()) holdings.back() = StockSet{};
  trace.cashflows.reserve(prices.size());
  trace.total_profit = 0;
  StockSet held;
  for (std::size_t t = 0; t < prices.size(); ++t) {
    Rational cash = 0;
    for (std::size_t s : held.elements()) cash += prices[t][s];
    for (std::size_t s : holdings[t].elements()) cash -= prices[t][s];
    trace.total_profit += cash;
    trace.cashflows.push_back(std::move(cash));
    held = holdings[t];
  }
  trace.prices = std::move(prices);
  trace.holdings = std::move(holdings);
  return trace;
}

RandomStream trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return RandomStream(seed).child(trial);
}

std::vector<std::size_t> draw_order(std::size_t n, RandomStream& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::vector<PriceVector> draw_prices(const MarketInstance& inst, RandomStream& trial) {
  RandomStream price_rng = trial.child(kPriceStream);
  std::vector<PriceVector> prices;
  prices.reserve(inst.horizon());
  if (const auto* iid = std::get_if<IidModel>(&inst.model())) {
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
      prices.push_back(sample(iid->distribution, price_rng));
    }
  } else {
    const auto& ro = std::get<RandomOrderModel>(inst.model());
    RandomStream order_rng = trial.child(kOrderStream);
    for (std::size_t i : draw_order(ro.distributions.size(), order_rng)) {
      prices.push_back(sample(ro.distributions[i], price_rng));
    }
  }
  return prices;
}

Trace execute_online(const Matroid& m, std::span<const Rational> mu,
                     std::vector<PriceVector> prices) {
  std::vector<StockSet> holdings(prices.size());
  for (std::size_t t = 0; t + 1 < prices.size(); ++t) {
    holdings[t] = max_weight_feasible_set(m, difference(mu, prices[t])).set;
  }
  return settle(std::move(prices), std::move(holdings));
}

Trace run_online_iid(const MarketInstance& inst, RandomStream& trial) {
  const auto& model = require_iid(inst);
  return execute_online(inst.matroid(), mean(model.distribution), draw_prices(inst, trial));
}

Trace run_online_iid(const MarketInstance& inst) {
  RandomStream rng = trial_stream(inst.seed(), 0);
  return run_online_iid(inst, rng);
}

Trace run_online_random_order(const MarketInstance& inst, RandomStream& trial) {
  const auto& model = require_random_order(inst);
  return execute_online(inst.matroid(), mixture_mean(model), draw_prices(inst, trial));
}

Trace run_online_random_order(const MarketInstance& inst) {
  RandomStream rng = trial_stream(inst.seed(), 0);
  return run_online_random_order(inst, rng);
}

OfflineResult run_offline_optimal(std::span<const PriceVector> prices, const Matroid& m) {
  if (prices.empty()) throw InputError("offline run needs at least one price vector");
  std::vector<StockSet> holdings(prices.size());
  Rational profit = 0;
  for (std::size_t t = 0; t + 1 < prices.size(); ++t) {
    auto best = max_weight_feasible_set(m, difference(prices[t + 1], prices[t]));
    holdings[t] = best.set;
    profit += best.weight;
  }
  Trace trace = settle(std::vector<PriceVector>(prices.begin(), prices.end()), std::move(holdings));
  return {std::move(trace), std::move(profit)};
}

std::string_view policy_name(Policy policy) {
  switch (policy) {
    case Policy::kOnlineIid:
      return "online_iid";
    case Policy::kOnlineRandomOrder:
      return "online_random_order";
    case Policy::kOffline:
      return "offline";
  }
  return "unknown";
}

std::vector<Rational> trial_profits(const MarketInstance& inst, Policy policy,
                                    std::size_t trials, std::size_t threads) {
  if (trials == 0) throw InputError("monte_carlo needs at least one trial");
  if (policy == Policy::kOnlineIid) require_iid(inst);
  if (policy == Policy::kOnlineRandomOrder) require_random_order(inst);

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, trials);

  std::vector<Rational> profits(trials);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&](std::size_t first) {
    try {
      for (std::size_t i = first; i < trials; i += threads) {
        profits[i] = trial_profit(inst, policy, i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  if (failure) std::rethrow_exception(failure);
  return profits;
}

MonteCarloStats monte_carlo(const MarketInstance& inst, Policy policy, std::size_t trials,
                            std::size_t threads) {
  const auto profits = trial_profits(inst, policy, trials, threads);

  Rational total = 0;
  Rational total_sq = 0;
  for (const auto& p : profits) {
    total += p;
    total_sq += p * p;
  }
  const Rational count(static_cast<long>(trials));
  const Rational mean_profit = total / count;

  MonteCarloStats stats;
  stats.trials = trials;
  stats.mean_profit = mean_profit.get_d();
  if (trials > 1) {
    const Rational variance = (total_sq - total * mean_profit) / (count - 1);
    stats.std_error = std::sqrt(std::max(0.0, variance.get_d()) / static_cast<double>(trials));
  }
  if (inst.horizon() >= 2) {
    stats.per_step_mean =
        Rational(mean_profit / Rational(static_cast<long>(inst.horizon() - 1))).get_d();
  }
  return stats;
}

}  // namespace tprophet
