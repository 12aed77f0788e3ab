#include "tprophet/hardness.hpp"

#include "tprophet/errors.hpp"

namespace tprophet {

namespace {

void check_stock_count(std::size_t k) {
  if (k == 0) throw InputError("hardness instance needs at least one stock");
}

void check_epsilon(const Rational& eps, const Rational& upper, const char* range) {
  if (sgn(eps) <= 0 || eps >= upper) {
    throw InputError("epsilon " + to_string(eps) + " outside " + range);
  }
}

}  // namespace

JointDiscreteDistribution matroid_hardness_instance(std::size_t k, std::size_t r,
                                                    const Rational& eps) {
  check_stock_count(k);
  if (r == 0 || r > k) {
    throw InputError("rank r = " + std::to_string(r) + " must lie in 1.." + std::to_string(k));
  }
  check_epsilon(eps, Rational(1), "(0, 1)");

  const Rational kk(static_cast<long>(k));
  const Rational spike_prob = eps * eps / (1 + kk * eps);
  const Rational crash_prob = eps - kk * spike_prob;
  const Rational calm_prob = 1 - eps;
  if (sgn(spike_prob) <= 0 || sgn(crash_prob) <= 0 || sgn(calm_prob) <= 0) {
    throw InputError("epsilon " + to_string(eps) + " yields a non-positive probability");
  }

  std::vector<Atom> atoms;
  atoms.push_back({PriceVector(k, Rational(0)), calm_prob});
  atoms.push_back({PriceVector(k, Rational(-1) / eps), crash_prob});
  const Rational spike = 1 / (eps * eps);
  for (std::size_t s = 0; s < k; ++s) {
    PriceVector prices(k, Rational(0));
    prices[s] = spike;
    atoms.push_back({std::move(prices), spike_prob});
  }
  return JointDiscreteDistribution(std::move(atoms));
}

std::vector<MarginalDistribution> uniform_ratio_hardness_instance(std::size_t k,
                                                                  const Rational& eps) {
  check_stock_count(k);
  check_epsilon(eps, Rational(1), "(0, 1)");
  const MarginalDistribution each({{Rational(0), 1 - eps}, {Rational(1) / eps, eps}});
  return std::vector<MarginalDistribution>(k, each);
}

std::vector<MarginalDistribution> half_hardness_instance(std::size_t k, const Rational& eps) {
  check_stock_count(k);
  check_epsilon(eps, Rational(1, 2), "(0, 1/2)");
  const Rational jump = Rational(1) / eps;
  const MarginalDistribution each({{-jump, eps}, {Rational(0), 1 - 2 * eps}, {jump, eps}});
  return std::vector<MarginalDistribution>(k, each);
}

}  // namespace tprophet
