#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tprophet/distribution.hpp"
#include "tprophet/matroid.hpp"
#include "tprophet/random.hpp"
#include "tprophet/rational.hpp"

// Random instance generators used by the certification sweeps, the tests and
// the benchmarks. Every generator is a pure function of the stream state.

namespace tprophet {

/// num/den with num uniform on [-magnitude, magnitude] and den on [1, max_den].
Rational random_rational(RandomStream& rng, std::int64_t magnitude, std::int64_t max_den);

WeightVector random_weights(RandomStream& rng, std::size_t k, std::int64_t magnitude = 10,
                            std::int64_t max_den = 4);

/// Probabilities proportional to random integers in [1, 8].
std::vector<Rational> random_probabilities(RandomStream& rng, std::size_t count);

/// Loopless linear matroid over GF(2): k random nonzero columns in
/// GF(2)^dim, optionally truncated to a random rank. Returned as an explicit
/// family. Requires 1 <= k <= kEnumerationLimit.
Matroid random_explicit_matroid(RandomStream& rng, std::size_t k);

/// One of the four kinds, chosen uniformly, on a ground set of 1..max_k elements.
Matroid random_matroid(RandomStream& rng, std::size_t max_k);
/// Same with a fixed ground size.
Matroid random_matroid_of_size(RandomStream& rng, std::size_t k);

/// Between 1 and max_atoms distinct price vectors with small rational entries.
JointDiscreteDistribution random_joint(RandomStream& rng, std::size_t k, std::size_t max_atoms);

MarginalDistribution random_marginal(RandomStream& rng, std::size_t max_atoms);

/// shift(d, mean(d)).
JointDiscreteDistribution centered(const JointDiscreteDistribution& d);
MarginalDistribution centered(const MarginalDistribution& d);

/// n independent random_joint draws sharing dimension k.
std::vector<JointDiscreteDistribution> random_order_family(RandomStream& rng, std::size_t n,
                                                           std::size_t k, std::size_t max_atoms);

}  // namespace tprophet
