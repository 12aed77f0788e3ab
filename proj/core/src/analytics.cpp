#include "tprophet/analytics.hpp"

#include <algorithm>
#include <set>

#include "tprophet/errors.hpp"

namespace tprophet {

namespace {

Rational from_size(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }

void check_matroid_matches(const Matroid& m, const JointDiscreteDistribution& d) {
  if (m.ground_size() != d.dimension()) {
    throw InputError("distribution has " + std::to_string(d.dimension()) +
                     " stocks but the matroid has " + std::to_string(m.ground_size()));
  }
}

void check_atoms(const JointDiscreteDistribution& d) {
  if (d.size() > kExactAtomLimit) {
    throw CapacityError("distribution has " + std::to_string(d.size()) +
                        " atoms; the exact engine accepts at most " +
                        std::to_string(kExactAtomLimit));
  }
}

void check_pairs(std::size_t pairs) {
  if (pairs > kExactPairLimit) {
    throw CapacityError("exact evaluation would enumerate " + std::to_string(pairs) +
                        " atom pairs; the limit is " + std::to_string(kExactPairLimit));
  }
}

void check_random_order(const Matroid& m, std::span<const JointDiscreteDistribution> ds) {
  if (ds.size() < 2) throw InputError("random-order analysis needs at least 2 distributions");
  std::size_t atoms = 0;
  for (const auto& d : ds) {
    check_matroid_matches(m, d);
    atoms += d.size();
  }
  check_pairs(atoms * atoms);
}

// Sum over atom pairs (a from `from`, b from `to`) of p_a p_b top_M(b - a).
Rational pair_sum(const Matroid& m, const JointDiscreteDistribution& from,
                  const JointDiscreteDistribution& to) {
  Rational total = 0;
  WeightVector w(m.ground_size());
  for (const auto& a : from.atoms()) {
    Rational inner = 0;
    for (const auto& b : to.atoms()) {
      for (std::size_t s = 0; s < w.size(); ++s) w[s] = b.prices[s] - a.prices[s];
      inner += b.prob * top_weight(m, w);
    }
    total += a.prob * inner;
  }
  return total;
}

MeanVector mixture_mean(std::span<const JointDiscreteDistribution> ds) {
  MeanVector mu(ds.front().dimension(), Rational(0));
  for (const auto& d : ds) {
    const MeanVector part = mean(d);
    for (std::size_t s = 0; s < mu.size(); ++s) mu[s] += part[s];
  }
  for (auto& v : mu) v /= from_size(ds.size());
  return mu;
}

std::size_t marginal_count(std::span<const MarginalDistribution> marginals) {
  if (marginals.empty()) throw InputError("no marginals given");
  return marginals.size();
}

void require_zero_mean(std::span<const MarginalDistribution> marginals) {
  for (std::size_t s = 0; s < marginals.size(); ++s) {
    const Rational mu = mean(marginals[s]);
    if (sgn(mu) != 0) {
      throw PreconditionError("marginal " + std::to_string(s + 1) + " has mean " + to_string(mu) +
                              "; shift the instance to zero expectation first");
    }
  }
}

// Distinct positive values of -X_s over all stocks, ascending.
std::vector<Rational> downside_breakpoints(std::span<const MarginalDistribution> marginals) {
  std::set<Rational> points;
  for (const auto& m : marginals) {
    for (const auto& a : m.atoms()) {
      if (sgn(a.value) < 0) points.insert(-a.value);
    }
  }
  return {points.begin(), points.end()};
}

// P[-X_s >= x] for each stock.
std::vector<Rational> downside_tail(std::span<const MarginalDistribution> marginals,
                                    const Rational& x) {
  std::vector<Rational> tail(marginals.size(), Rational(0));
  for (std::size_t s = 0; s < marginals.size(); ++s) {
    for (const auto& a : marginals[s].atoms()) {
      if (-a.value >= x) tail[s] += a.prob;
    }
  }
  return tail;
}

// Integrates a function of the tail vector over x > 0. The tail is constant on
// each interval (b_{i-1}, b_i] and equal to its value at b_i.
template <class Integrand>
Rational integrate_over_breakpoints(std::span<const MarginalDistribution> marginals,
                                    Integrand integrand) {
  Rational total = 0;
  Rational previous = 0;
  for (const auto& b : downside_breakpoints(marginals)) {
    total += (b - previous) * integrand(downside_tail(marginals, b));
    previous = b;
  }
  return total;
}

// 2 sum a - 2/(k-1) sum_{s<s'} a_s a_s'.
Rational pairwise_offline_integrand(std::span<const Rational> a) {
  const std::size_t k = a.size();
  Rational linear = 0;
  Rational cross = 0;
  for (std::size_t s = 0; s < k; ++s) {
    linear += a[s];
    for (std::size_t t = s + 1; t < k; ++t) cross += a[s] * a[t];
  }
  return 2 * linear - Rational(2) / from_size(k - 1) * cross;
}

}  // namespace

RatioReport make_ratio_report(Rational online, Rational offline, Rational bound) {
  RatioReport report;
  if (sgn(offline) != 0) {
    report.ratio = Rational(online / offline);
    report.satisfied = *report.ratio >= bound;
  }
  report.online_per_step = std::move(online);
  report.offline_per_step = std::move(offline);
  report.bound = std::move(bound);
  return report;
}

Rational exact_online_per_step(const Matroid& m, const JointDiscreteDistribution& d) {
  check_matroid_matches(m, d);
  check_atoms(d);
  const MeanVector mu = mean(d);
  Rational total = 0;
  WeightVector w(m.ground_size());
  for (const auto& a : d.atoms()) {
    for (std::size_t s = 0; s < w.size(); ++s) w[s] = mu[s] - a.prices[s];
    total += a.prob * top_weight(m, w);
  }
  return total;
}

Rational exact_offline_per_step(const Matroid& m, const JointDiscreteDistribution& d) {
  check_matroid_matches(m, d);
  check_atoms(d);
  check_pairs(d.size() * d.size());
  return pair_sum(m, d, d);
}

RatioReport exact_ratio(const Matroid& m, const JointDiscreteDistribution& d,
                        const Rational& bound) {
  return exact_ratio(m, m, d, bound);
}

RatioReport exact_ratio(const Matroid& online_m, const Matroid& offline_m,
                        const JointDiscreteDistribution& d, const Rational& bound) {
  return make_ratio_report(exact_online_per_step(online_m, d),
                           exact_offline_per_step(offline_m, d), bound);
}

Rational matroid_bound(const Matroid& m) { return 1 / (1 + density(m)); }

Rational independent_bound(std::size_t k, std::size_t cap) {
  if (k == 0 || cap == 0) throw InputError("independent bound needs k >= 1 and cap >= 1");
  const Rational share = make_rational(static_cast<std::int64_t>(cap), static_cast<std::int64_t>(k));
  return std::min(Rational(1, 2), share);
}

Rational exact_random_order_offline(const Matroid& m,
                                    std::span<const JointDiscreteDistribution> ds) {
  check_random_order(m, ds);
  Rational total = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (i != j) total += pair_sum(m, ds[i], ds[j]);
    }
  }
  const Rational n = from_size(ds.size());
  return total / (n * (n - 1));
}

MeanVector leave_one_out_mean(std::span<const JointDiscreteDistribution> ds, std::size_t i) {
  if (ds.size() < 2) throw InputError("leave-one-out mean needs at least 2 distributions");
  if (i >= ds.size()) throw InputError("distribution index out of range");
  MeanVector rest(ds.front().dimension(), Rational(0));
  for (std::size_t j = 0; j < ds.size(); ++j) {
    if (j == i) continue;
    const MeanVector part = mean(ds[j]);
    for (std::size_t s = 0; s < rest.size(); ++s) rest[s] += part[s];
  }
  for (auto& v : rest) v /= from_size(ds.size() - 1);
  return rest;
}

Rational exact_random_order_online(const Matroid& m,
                                   std::span<const JointDiscreteDistribution> ds) {
  check_random_order(m, ds);
  const MeanVector mu = mixture_mean(ds);
  Rational total = 0;
  WeightVector w(m.ground_size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const MeanVector next_mean = leave_one_out_mean(ds, i);
    for (const auto& a : ds[i].atoms()) {
      for (std::size_t s = 0; s < w.size(); ++s) w[s] = mu[s] - a.prices[s];
      const StockSet held = max_weight_feasible_set(m, w).set;
      Rational gain = 0;
      for (std::size_t s : held.elements()) gain += next_mean[s] - a.prices[s];
      total += a.prob * gain;
    }
  }
  return total / from_size(ds.size());
}

Rational mixture_pair_offline(const Matroid& m, std::span<const JointDiscreteDistribution> ds) {
  check_random_order(m, ds);
  Rational total = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.size(); ++j) total += pair_sum(m, ds[i], ds[j]);
  }
  const Rational n = from_size(ds.size());
  return total / (n * n);
}

Rational leave_one_out_discrepancy(std::span<const JointDiscreteDistribution> ds) {
  if (ds.size() < 2) throw InputError("discrepancy needs at least 2 distributions");
  const MeanVector mu = mixture_mean(ds);
  Rational total = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const MeanVector rest = leave_one_out_mean(ds, i);
    for (std::size_t s = 0; s < mu.size(); ++s) total += abs(mu[s] - rest[s]);
  }
  return total / from_size(ds.size());
}

Rational expected_capped_count(std::span<const Rational> a, std::size_t cap) {
  const std::size_t k = a.size();
  if (k > kEnumerationLimit) {
    throw CapacityError("subset enumeration over " + std::to_string(k) + " stocks exceeds the limit of " +
                        std::to_string(kEnumerationLimit));
  }
  Rational total = 0;
  const std::uint64_t end = std::uint64_t{1} << k;
  for (std::uint64_t mask = 1; mask < end; ++mask) {
    const StockSet subset(mask);
    Rational weight(static_cast<unsigned long>(std::min(subset.size(), cap)));
    if (sgn(weight) == 0) continue;
    for (std::size_t s = 0; s < k && sgn(weight) != 0; ++s) {
      weight *= subset.contains(s) ? a[s] : Rational(1 - a[s]);
    }
    total += weight;
  }
  return total;
}

Rational uniform_offline_breakpoint_bound(std::span<const MarginalDistribution> marginals) {
  if (marginal_count(marginals) < 2) {
    throw PreconditionError("the offline bound needs at least 2 stocks");
  }
  require_zero_mean(marginals);
  return integrate_over_breakpoints(
      marginals, [](const std::vector<Rational>& a) { return pairwise_offline_integrand(a); });
}

Rational uniform_online_breakpoint_value(std::span<const MarginalDistribution> marginals,
                                         std::size_t cap) {
  marginal_count(marginals);
  require_zero_mean(marginals);
  return integrate_over_breakpoints(
      marginals, [cap](const std::vector<Rational>& a) { return expected_capped_count(a, cap); });
}

bool check_density_lemma(const Matroid& m, std::span<const Rational> w) {
  return check_density_lemma(m, w, density(m));
}

bool check_density_lemma(const Matroid& m, std::span<const Rational> w, const Rational& d) {
  return sum_positive_parts(w) <= d * top_weight(m, w);
}

bool check_decomposition_lemma(const Matroid& m, std::span<const Rational> x,
                               std::span<const Rational> x_prime, const Rational& d) {
  std::vector<Rational> neg_x(x.size());
  std::vector<Rational> neg_x_prime(x_prime.size());
  for (std::size_t s = 0; s < x.size(); ++s) neg_x[s] = -x[s];
  for (std::size_t s = 0; s < x_prime.size(); ++s) neg_x_prime[s] = -x_prime[s];
  const Rational lhs = top_weight(m, difference(x_prime, x));
  const Rational rhs = top_weight(m, neg_x) + sum(x_prime) + d * top_weight(m, neg_x_prime);
  return lhs <= rhs;
}

bool check_polynomial_inequality(std::size_t k, std::size_t cap, std::span<const Rational> a) {
  if (k < 2) throw PreconditionError("the polynomial inequality needs k >= 2");
  if (cap == 0 || cap > k) throw InputError("cap must lie in 1..k");
  if (a.size() != k) throw InputError("expected " + std::to_string(k) + " coefficients");
  for (const auto& v : a) {
    if (sgn(v) < 0 || v > 1) throw InputError("coefficient " + to_string(v) + " outside [0, 1]");
  }
  const Rational factor = std::max(Rational(2), make_rational(static_cast<std::int64_t>(k),
                                                              static_cast<std::int64_t>(cap)));
  return factor * expected_capped_count(a, cap) >= pairwise_offline_integrand(a);
}

bool check_uniform_offline_bound(std::span<const MarginalDistribution> marginals,
                                 std::size_t cap) {
  const Rational bound = uniform_offline_breakpoint_bound(marginals);
  const Matroid m = Matroid::uniform(marginals.size(), cap);
  return exact_offline_per_step(m, product(marginals)) <= bound;
}

bool check_uniform_online_formula(std::span<const MarginalDistribution> marginals,
                                  std::size_t cap) {
  const Rational formula = uniform_online_breakpoint_value(marginals, cap);
  const Matroid m = Matroid::uniform(marginals.size(), cap);
  return exact_online_per_step(m, product(marginals)) == formula;
}

bool check_matroid_theorem(const Matroid& m, const JointDiscreteDistribution& d) {
  return check_matroid_theorem(m, d, density(m));
}

bool check_matroid_theorem(const Matroid& m, const JointDiscreteDistribution& d,
                           const Rational& density) {
  return (1 + density) * exact_online_per_step(m, d) >= exact_offline_per_step(m, d);
}

bool check_independent_theorem(std::span<const MarginalDistribution> marginals, std::size_t cap,
                               std::size_t offline_cap) {
  if (offline_cap == 0 || offline_cap > cap) {
    throw InputError("offline cap must lie in 1..cap");
  }
  const std::size_t k = marginal_count(marginals);
  const JointDiscreteDistribution d = product(marginals);
  const Rational online = exact_online_per_step(Matroid::uniform(k, cap), d);
  const Rational offline = exact_offline_per_step(Matroid::uniform(k, offline_cap), d);
  return online >= independent_bound(k, cap) * offline;
}

bool check_random_order_theorem(const Matroid& m, std::span<const JointDiscreteDistribution> ds,
                                const Rational& density) {
  const Rational n = from_size(ds.size());
  const Rational guarantee = 1 / (1 + density) - 2 / n;
  return exact_random_order_online(m, ds) >= guarantee * exact_random_order_offline(m, ds);
}

bool check_mixture_pair_lemma(const Matroid& m, std::span<const JointDiscreteDistribution> ds) {
  const Rational n = from_size(ds.size());
  return mixture_pair_offline(m, ds) >= (n - 1) / n * exact_random_order_offline(m, ds);
}

bool check_discrepancy_lemma(const Matroid& m, std::span<const JointDiscreteDistribution> ds,
                             const Rational& density) {
  check_random_order(m, ds);
  const Rational n = from_size(ds.size());
  const Rational online_mixture = exact_online_per_step(m, uniform_mixture(ds));
  return leave_one_out_discrepancy(ds) <= 2 * density / (n - 1) * online_mixture;
}

}  // namespace tprophet
