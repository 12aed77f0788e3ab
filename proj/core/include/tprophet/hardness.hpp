#pragma once

#include <cstddef>
#include <vector>

#include "tprophet/distribution.hpp"
#include "tprophet/rational.hpp"

namespace tprophet {

/// Correlated instance on k stocks of a rank-r matroid restriction:
///   all zeros            w.p. 1 - eps
///   all -1/eps           w.p. eps - k eps^2 / (1 + k eps)
///   1/eps^2 at stock s   w.p. eps^2 / (1 + k eps), for each s.
/// Mean is zero; the exact online/offline ratio tends to r / (k + r).
/// Requires 1 <= r <= k and 0 < eps < 1.
JointDiscreteDistribution matroid_hardness_instance(std::size_t k, std::size_t r,
                                                    const Rational& eps);

/// k independent copies of {0 w.p. 1 - eps, 1/eps w.p. eps}; each has mean 1.
/// Drives the ratio towards l/k. Requires 0 < eps < 1.
std::vector<MarginalDistribution> uniform_ratio_hardness_instance(std::size_t k,
                                                                  const Rational& eps);

/// k independent copies of {-1/eps w.p. eps, 0 w.p. 1 - 2 eps, 1/eps w.p. eps};
/// each has mean 0. Drives the ratio towards 1/2. Requires 0 < eps < 1/2.
std::vector<MarginalDistribution> half_hardness_instance(std::size_t k, const Rational& eps);

}  // namespace tprophet
