#include "tprophet/certify.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "tprophet/analytics.hpp"
#include "tprophet/corpus.hpp"
#include "tprophet/engine.hpp"
#include "tprophet/errors.hpp"
#include "tprophet/random.hpp"

namespace tprophet {

namespace {

constexpr std::size_t kRecordedFailures = 8;

std::size_t pick(RandomStream& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform_below(hi - lo + 1));
}

std::vector<MarginalDistribution> random_marginals(RandomStream& rng, std::size_t k,
                                                   std::size_t max_atoms, bool center) {
  std::vector<MarginalDistribution> out;
  out.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    auto m = random_marginal(rng, max_atoms);
    out.push_back(center ? centered(m) : std::move(m));
  }
  return out;
}

// Coefficients in [0, 1], with the endpoints drawn often enough to exercise
// the equality cases.
std::vector<Rational> random_unit_coefficients(RandomStream& rng, std::size_t k) {
  std::vector<Rational> a;
  a.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    switch (rng.uniform_below(6)) {
      case 0:
        a.emplace_back(0);
        break;
      case 1:
        a.emplace_back(1);
        break;
      default: {
        const auto den = rng.uniform_int(1, 12);
        a.push_back(make_rational(rng.uniform_int(0, den), den));
      }
    }
  }
  return a;
}

bool density_lemma_trial(RandomStream& rng) {
  const Matroid m = random_matroid(rng, 8);
  return check_density_lemma(m, random_weights(rng, m.ground_size()));
}

bool decomposition_lemma_trial(RandomStream& rng) {
  const Matroid m = random_matroid(rng, 8);
  const auto x = random_weights(rng, m.ground_size());
  const auto x_prime = random_weights(rng, m.ground_size());
  return check_decomposition_lemma(m, x, x_prime, density(m));
}

bool polynomial_trial(RandomStream& rng) {
  const std::size_t k = pick(rng, 2, 8);
  const std::size_t cap = pick(rng, 1, k);
  return check_polynomial_inequality(k, cap, random_unit_coefficients(rng, k));
}

bool uniform_offline_trial(RandomStream& rng) {
  const std::size_t k = pick(rng, 2, 4);
  const std::size_t cap = pick(rng, 1, k);
  return check_uniform_offline_bound(random_marginals(rng, k, 3, true), cap);
}

bool uniform_online_trial(RandomStream& rng) {
  const std::size_t k = pick(rng, 1, 4);
  const std::size_t cap = pick(rng, 1, k);
  return check_uniform_online_formula(random_marginals(rng, k, 3, true), cap);
}

bool matroid_theorem_trial(RandomStream& rng) {
  const Matroid m = random_matroid(rng, 6);
  return check_matroid_theorem(m, centered(random_joint(rng, m.ground_size(), 8)));
}

// Every pair l' <= l <= k on one product instance.
bool independent_theorem_trial(RandomStream& rng) {
  const std::size_t k = pick(rng, 1, 5);
  const JointDiscreteDistribution d = product(random_marginals(rng, k, 4, false));
  std::vector<Rational> online(k + 1);
  std::vector<Rational> offline(k + 1);
  for (std::size_t cap = 1; cap <= k; ++cap) {
    const Matroid m = Matroid::uniform(k, cap);
    online[cap] = exact_online_per_step(m, d);
    offline[cap] = exact_offline_per_step(m, d);
  }
  for (std::size_t cap = 1; cap <= k; ++cap) {
    const Rational bound = independent_bound(k, cap);
    for (std::size_t offline_cap = 1; offline_cap <= cap; ++offline_cap) {
      if (online[cap] < bound * offline[offline_cap]) return false;
    }
  }
  return true;
}

struct RandomOrderCase {
  Matroid matroid;
  std::vector<JointDiscreteDistribution> distributions;
};

RandomOrderCase random_order_case(RandomStream& rng) {
  const std::size_t n = pick(rng, 2, 6);
  Matroid m = random_matroid(rng, 4);
  auto ds = random_order_family(rng, n, m.ground_size(), 3);
  return {std::move(m), std::move(ds)};
}

bool random_order_theorem_trial(RandomStream& rng) {
  const auto c = random_order_case(rng);
  return check_random_order_theorem(c.matroid, c.distributions, density(c.matroid));
}

bool mixture_pair_trial(RandomStream& rng) {
  const auto c = random_order_case(rng);
  return check_mixture_pair_lemma(c.matroid, c.distributions);
}

bool discrepancy_trial(RandomStream& rng) {
  const auto c = random_order_case(rng);
  return check_discrepancy_lemma(c.matroid, c.distributions, density(c.matroid));
}

// Shifting by the mean leaves every online and offline decision unchanged.
bool zero_expectation_trial(RandomStream& rng) {
  const Matroid m = random_matroid(rng, 6);
  const JointDiscreteDistribution d = random_joint(rng, m.ground_size(), 6);
  const JointDiscreteDistribution shifted = centered(d);
  const std::size_t horizon = pick(rng, 2, 8);
  const std::uint64_t seed = rng.next_u64();

  const Trace raw = run_online_iid(MarketInstance::iid(m, d, horizon, seed));
  const Trace zero = run_online_iid(MarketInstance::iid(m, shifted, horizon, seed));
  if (raw.holdings != zero.holdings) return false;

  const OfflineResult raw_offline = run_offline_optimal(raw.prices, m);
  const OfflineResult zero_offline = run_offline_optimal(zero.prices, m);
  if (raw_offline.trace.holdings != zero_offline.trace.holdings) return false;
  if (raw_offline.profit != zero_offline.profit) return false;
  return exact_offline_per_step(m, d) == exact_offline_per_step(m, shifted);
}

bool matroid_axioms_trial(RandomStream& rng) {
  const Matroid m = random_explicit_matroid(rng, pick(rng, 1, 10));
  return static_cast<bool>(verify_matroid_axioms(m));
}

bool rank_trial(RandomStream& rng) {
  const Matroid m = random_matroid(rng, 10);
  const WeightVector ones(m.ground_size(), Rational(1));
  return max_weight_feasible_set(m, ones).set.size() == m.rank(m.ground_set());
}

struct PropertyEntry {
  std::string_view name;
  // Properties with equal corpus ids draw identical instances.
  std::uint64_t corpus;
  bool (*trial)(RandomStream&);
};

constexpr std::array kProperties = {
    PropertyEntry{"matroid_axioms", 1, matroid_axioms_trial},
    PropertyEntry{"rank_equals_greedy_basis", 2, rank_trial},
    PropertyEntry{"density_lemma", 3, density_lemma_trial},
    PropertyEntry{"decomposition_lemma", 4, decomposition_lemma_trial},
    PropertyEntry{"polynomial_inequality", 5, polynomial_trial},
    PropertyEntry{"uniform_offline_bound", 6, uniform_offline_trial},
    PropertyEntry{"uniform_online_formula", 7, uniform_online_trial},
    PropertyEntry{"matroid_theorem", 8, matroid_theorem_trial},
    PropertyEntry{"independent_theorem", 9, independent_theorem_trial},
    PropertyEntry{"random_order_theorem", 10, random_order_theorem_trial},
    PropertyEntry{"mixture_pair_lemma", 10, mixture_pair_trial},
    PropertyEntry{"discrepancy_lemma", 10, discrepancy_trial},
    PropertyEntry{"zero_expectation_invariance", 11, zero_expectation_trial},
};

constexpr auto kNames = [] {
  std::array<std::string_view, kProperties.size()> names{};
  for (std::size_t i = 0; i < kProperties.size(); ++i) names[i] = kProperties[i].name;
  return names;
}();

}  // namespace

std::span<const std::string_view> property_names() { return kNames; }

PropertyResult run_property(std::string_view name, std::uint64_t seed, std::size_t trials) {
  const auto it = std::find_if(kProperties.begin(), kProperties.end(),
                               [&](const PropertyEntry& p) { return p.name == name; });
  if (it == kProperties.end()) throw InputError("unknown property '" + std::string(name) + "'");

  PropertyResult result;
  result.name = std::string(name);
  result.trials = trials;
  const std::uint64_t corpus_seed = derive_seed(seed, it->corpus);
  for (std::size_t i = 0; i < trials; ++i) {
    RandomStream rng(derive_seed(corpus_seed, i));
    if (!it->trial(rng)) {
      ++result.failures;
      if (result.failing_trials.size() < kRecordedFailures) result.failing_trials.push_back(i);
    }
  }
  return result;
}

std::vector<PropertyResult> run_certification(const CertifyOptions& options) {
  for (const auto& [name, count] : options.trial_overrides) {
    if (std::find(kNames.begin(), kNames.end(), name) == kNames.end()) {
      throw InputError("unknown property '" + name + "'");
    }
  }
  std::vector<PropertyResult> results;
  results.reserve(kNames.size());
  for (auto name : kNames) {
    const auto override_it = options.trial_overrides.find(name);
    const std::size_t trials =
        override_it == options.trial_overrides.end() ? options.trials : override_it->second;
    results.push_back(run_property(name, options.seed, trials));
  }
  return results;
}

}  // namespace tprophet
