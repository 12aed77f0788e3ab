#pragma once

// Brute-force reference implementations. None of these call the library's
// greedy algorithm or its analytics; they only use the feasibility oracle and
// plain enumeration.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include <tprophet/distribution.hpp>
#include <tprophet/matroid.hpp>
#include <tprophet/rational.hpp>

namespace oracle {

using tprophet::Rational;

inline std::vector<std::uint64_t> feasible_masks(const tprophet::Matroid& m) {
  std::vector<std::uint64_t> masks;
  const std::uint64_t end = std::uint64_t{1} << m.ground_size();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    if (m.is_feasible(tprophet::StockSet(mask))) masks.push_back(mask);
  }
  return masks;
}

/// max over feasible S of sum_{e in S} w(e), in exact rationals.
inline Rational max_weight(const std::vector<std::uint64_t>& family, const std::vector<Rational>& w) {
  Rational best = 0;
  for (std::uint64_t mask : family) {
    Rational total = 0;
    for (std::size_t e = 0; e < w.size(); ++e) {
      if ((mask >> e) & 1U) total += w[e];
    }
    if (total > best) best = total;
  }
  return best;
}

/// Same maximum for weights that share a denominator: all subset sums by a
/// lowest-bit recurrence in 64-bit integers, then the best feasible one.
class IntegerMaxWeight {
 public:
  explicit IntegerMaxWeight(const tprophet::Matroid& m)
      : k_(m.ground_size()), family_(feasible_masks(m)), sums_(std::size_t{1} << k_) {}

  Rational operator()(const std::vector<Rational>& w) {
    std::int64_t den = 1;
    for (const auto& v : w) den = std::lcm(den, v.get_den().get_si());
    std::vector<std::int64_t> scaled(k_);
    for (std::size_t e = 0; e < k_; ++e) {
      scaled[e] = w[e].get_num().get_si() * (den / w[e].get_den().get_si());
    }
    sums_[0] = 0;
    for (std::uint64_t mask = 1; mask < sums_.size(); ++mask) {
      const int low = std::countr_zero(mask);
      sums_[mask] = sums_[mask & (mask - 1)] + scaled[static_cast<std::size_t>(low)];
    }
    std::int64_t best = 0;
    for (std::uint64_t mask : family_) best = std::max(best, sums_[mask]);
    return tprophet::make_rational(best, den);
  }

 private:
  std::size_t k_;
  std::vector<std::uint64_t> family_;
  std::vector<std::int64_t> sums_;
};

/// Largest feasible subset of `x` by enumerating the family.
inline std::size_t rank(const std::vector<std::uint64_t>& family, std::uint64_t x) {
  std::size_t best = 0;
  for (std::uint64_t mask : family) {
    if ((mask & ~x) == 0) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

/// max |X| / rk(X) over every nonempty X.
inline Rational density(const tprophet::Matroid& m) {
  const auto family = feasible_masks(m);
  const std::uint64_t end = std::uint64_t{1} << m.ground_size();
  Rational best = 0;
  for (std::uint64_t x = 1; x < end; ++x) {
    const auto r = static_cast<std::int64_t>(rank(family, x));
    const Rational ratio = tprophet::make_rational(std::popcount(x), r);
    if (ratio > best) best = ratio;
  }
  return best;
}

/// Sum of the `cap` largest positive entries: the uniform-matroid top value.
inline Rational top_uniform(std::vector<Rational> w, std::size_t cap) {
  std::sort(w.begin(), w.end(), [](const Rational& a, const Rational& b) { return a > b; });
  Rational total = 0;
  for (std::size_t i = 0; i < w.size() && i < cap; ++i) {
    if (w[i] > 0) total += w[i];
  }
  return total;
}

/// E[top_cap(mu - X)] by direct enumeration.
inline Rational uniform_online(const tprophet::JointDiscreteDistribution& d, std::size_t cap) {
  std::vector<Rational> mu(d.dimension(), Rational(0));
  for (const auto& a : d.atoms()) {
    for (std::size_t s = 0; s < mu.size(); ++s) mu[s] += a.prob * a.prices[s];
  }
  Rational total = 0;
  for (const auto& a : d.atoms()) {
    std::vector<Rational> w(mu.size());
    for (std::size_t s = 0; s < w.size(); ++s) w[s] = mu[s] - a.prices[s];
    total += a.prob * top_uniform(w, cap);
  }
  return total;
}

/// E[top_cap(X' - X)] over all ordered atom pairs.
inline Rational uniform_offline(const tprophet::JointDiscreteDistribution& d, std::size_t cap) {
  Rational total = 0;
  for (const auto& a : d.atoms()) {
    for (const auto& b : d.atoms()) {
      std::vector<Rational> w(d.dimension());
      for (std::size_t s = 0; s < w.size(); ++s) w[s] = b.prices[s] - a.prices[s];
      total += a.prob * b.prob * top_uniform(w, cap);
    }
  }
  return total;
}

/// Executes holding decisions with real trades: only the symmetric
/// difference of consecutive holdings changes hands, and whatever is held
/// after the last step is sold at the last price.
inline Rational hold_aware_profit(const std::vector<std::vector<Rational>>& prices,
                                  const std::vector<std::uint64_t>& holdings) {
  Rational cash = 0;
  std::uint64_t held = 0;
  for (std::size_t t = 0; t < prices.size(); ++t) {
    const std::uint64_t target = t + 1 < prices.size() ? holdings[t] : 0;
    for (std::size_t s = 0; s < prices[t].size(); ++s) {
      const bool had = (held >> s) & 1U;
      const bool wants = (target >> s) & 1U;
      if (had && !wants) cash += prices[t][s];
      if (!had && wants) cash -= prices[t][s];
    }
    held = target;
  }
  return cash;
}

}  // namespace oracle
