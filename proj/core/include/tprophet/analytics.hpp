#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tprophet/distribution.hpp"
#include "tprophet/matroid.hpp"
#include "tprophet/rational.hpp"

namespace tprophet {

/// Largest atom count accepted by the exact engine.
inline constexpr std::size_t kExactAtomLimit = 10'000;
/// Largest number of atom pairs the exact offline computations enumerate.
inline constexpr std::size_t kExactPairLimit = kExactAtomLimit * kExactAtomLimit;

/// Exact per-step values of the online policy and the hindsight optimum.
struct RatioReport {
  Rational online_per_step;
  Rational offline_per_step;
  /// online / offline; empty when the offline value is 0.
  std::optional<Rational> ratio;
  Rational bound;
  /// ratio >= bound, or true when the ratio is undefined (both earn 0).
  bool satisfied = true;
};

RatioReport make_ratio_report(Rational online, Rational offline, Rational bound);

/// E[top_M(mu - X)], the expected profit per step of the optimal online policy.
Rational exact_online_per_step(const Matroid& m, const JointDiscreteDistribution& d);

/// E[top_M(X' - X)] for independent X, X' ~ d: the hindsight optimum per step.
Rational exact_offline_per_step(const Matroid& m, const JointDiscreteDistribution& d);

/// Online and offline values on the same matroid, compared with `bound`.
RatioReport exact_ratio(const Matroid& m, const JointDiscreteDistribution& d,
                        const Rational& bound);

/// Resource-augmented variant: the offline player trades on `offline_m`.
RatioReport exact_ratio(const Matroid& online_m, const Matroid& offline_m,
                        const JointDiscreteDistribution& d, const Rational& bound);

/// 1 / (1 + density(m)).
Rational matroid_bound(const Matroid& m);

/// min{1/2, cap/k} for a uniform matroid with the given parameters.
Rational independent_bound(std::size_t k, std::size_t cap);

/// Offline value per step under random order: E[top_M(X^2 - X^1)] where X^1
/// and X^2 come from two distinct distributions chosen uniformly.
Rational exact_random_order_offline(const Matroid& m,
                                    std::span<const JointDiscreteDistribution> ds);

/// Per-step value of the random-order online policy. The policy buys
/// H(a) = argmax top_M(mu - a) for the mixture mean mu, and sells at the
/// next step, whose expected price is the leave-one-out mean of the
/// distribution that produced a.
Rational exact_random_order_online(const Matroid& m,
                                   std::span<const JointDiscreteDistribution> ds);

/// Mean of the uniform mixture with distribution i left out.
MeanVector leave_one_out_mean(std::span<const JointDiscreteDistribution> ds, std::size_t i);

/// (1/n^2) sum over all ordered pairs (i, j), i = j included, of
/// E[top_M(X^j - X^i)]; the offline value if draws were with replacement.
Rational mixture_pair_offline(const Matroid& m, std::span<const JointDiscreteDistribution> ds);

/// (1/n) sum_i || mu - leave_one_out_mean(i) ||_1.
Rational leave_one_out_discrepancy(std::span<const JointDiscreteDistribution> ds);

/// sum_S min{|S|, cap} prod_{s in S} a_s prod_{s not in S} (1 - a_s),
/// enumerated over all 2^k subsets (k <= kEnumerationLimit).
Rational expected_capped_count(std::span<const Rational> a, std::size_t cap);

/// Integral of 2 sum_s P[-X_s >= x] - 2/(k-1) sum_{s<s'} P[-X_s >= x] P[-X_s' >= x]
/// over x > 0, evaluated exactly as a sum over the breakpoints of the
/// piecewise-constant integrand. Requires k >= 2 zero-mean marginals.
Rational uniform_offline_breakpoint_bound(std::span<const MarginalDistribution> marginals);

/// Integral over x > 0 of expected_capped_count(P[-X_s >= x], cap), as a
/// breakpoint sum. Requires zero-mean marginals.
Rational uniform_online_breakpoint_value(std::span<const MarginalDistribution> marginals,
                                         std::size_t cap);

// Certificate checks. Each evaluates one inequality or identity exactly and
// returns whether it holds; a false result points at an implementation bug.

/// sum_e w(e)^+ <= d * top_M(w).
bool check_density_lemma(const Matroid& m, std::span<const Rational> w);
bool check_density_lemma(const Matroid& m, std::span<const Rational> w, const Rational& d);

/// top_M(x' - x) <= top_M(-x) + sum_i x'_i + d * top_M(-x').
bool check_decomposition_lemma(const Matroid& m, std::span<const Rational> x,
                               std::span<const Rational> x_prime, const Rational& d);

/// max{2, k/cap} * expected_capped_count(a, cap)
///   >= 2 sum a - 2/(k-1) sum_{s<s'} a_s a_s'.
/// Requires k >= 2, 1 <= cap <= k and every a_s in [0, 1].
bool check_polynomial_inequality(std::size_t k, std::size_t cap, std::span<const Rational> a);

/// exact_offline_per_step on Uniform(k, cap) <= uniform_offline_breakpoint_bound.
bool check_uniform_offline_bound(std::span<const MarginalDistribution> marginals,
                                 std::size_t cap);

/// exact_online_per_step on Uniform(k, cap) == uniform_online_breakpoint_value.
bool check_uniform_online_formula(std::span<const MarginalDistribution> marginals,
                                  std::size_t cap);

/// online >= offline / (1 + d) for the i.i.d. policy.
bool check_matroid_theorem(const Matroid& m, const JointDiscreteDistribution& d);
bool check_matroid_theorem(const Matroid& m, const JointDiscreteDistribution& d,
                           const Rational& density);

/// Uniform(k, cap) online >= min{1/2, cap/k} * Uniform(k, offline_cap) offline
/// on the product of the marginals. Requires offline_cap <= cap.
bool check_independent_theorem(std::span<const MarginalDistribution> marginals, std::size_t cap,
                               std::size_t offline_cap);

/// Random-order online >= (1/(1+d) - 2/n) * random-order offline.
bool check_random_order_theorem(const Matroid& m, std::span<const JointDiscreteDistribution> ds,
                                const Rational& density);

/// mixture_pair_offline >= ((n-1)/n) * exact_random_order_offline.
bool check_mixture_pair_lemma(const Matroid& m, std::span<const JointDiscreteDistribution> ds);

/// leave_one_out_discrepancy <= 2d/(n-1) * E[top_M(mu - X)] under the mixture.
bool check_discrepancy_lemma(const Matroid& m, std::span<const JointDiscreteDistribution> ds,
                             const Rational& density);

}  // namespace tprophet
