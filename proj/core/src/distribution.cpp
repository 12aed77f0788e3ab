#include "tprophet/distribution.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "tprophet/errors.hpp"

namespace tprophet {

static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required for mpz_get_ui");

namespace {

void check_probability(const Rational& p, std::size_t index) {
  if (sgn(p) <= 0) {
    throw InputError("atom " + std::to_string(index + 1) + " has non-positive probability " +
                     to_string(p));
  }
}

void check_total(const Rational& total) {
  if (total != 1) {
    throw InputError("probabilities sum to " + to_string(total) + ", expected 1/1");
  }
}

bool by_prices(const Atom& a, const Atom& b) { return a.prices < b.prices; }

}  // namespace

JointDiscreteDistribution::JointDiscreteDistribution(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  finalize(false);
}

JointDiscreteDistribution::JointDiscreteDistribution(Canonical, std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  finalize(true);
}

JointDiscreteDistribution JointDiscreteDistribution::merged(std::vector<Atom> atoms) {
  return JointDiscreteDistribution(Canonical{}, std::move(atoms));
}

JointDiscreteDistribution JointDiscreteDistribution::point_mass(PriceVector prices) {
  std::vector<Atom> atoms;
  atoms.push_back({std::move(prices), Rational(1)});
  return JointDiscreteDistribution(std::move(atoms));
}

void JointDiscreteDistribution::finalize(bool merge_duplicates) {
  if (atoms_.empty()) throw InputError("distribution has no atoms");
  dimension_ = atoms_.front().prices.size();
  if (dimension_ == 0) throw InputError("price vectors must have at least one stock");
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    if (atoms_[j].prices.size() != dimension_) {
      throw InputError("atom " + std::to_string(j + 1) + " has " +
                       std::to_string(atoms_[j].prices.size()) + " prices, expected " +
                       std::to_string(dimension_));
    }
    check_probability(atoms_[j].prob, j);
  }

  std::stable_sort(atoms_.begin(), atoms_.end(), by_prices);
  std::vector<Atom> unique;
  unique.reserve(atoms_.size());
  for (auto& a : atoms_) {
    if (!unique.empty() && unique.back().prices == a.prices) {
      if (!merge_duplicates) throw InputError("duplicate atom in distribution");
      unique.back().prob += a.prob;
    } else {
      unique.push_back(std::move(a));
    }
  }
  atoms_ = std::move(unique);

  Rational total = 0;
  for (const auto& a : atoms_) total += a.prob;
  check_total(total);

  thresholds_.clear();
  thresholds_.reserve(atoms_.size() - 1);
  Rational cumulative = 0;
  mpz_class scaled;
  const mpz_class two64 = mpz_class(1) << 64;
  for (std::size_t j = 0; j + 1 < atoms_.size(); ++j) {
    cumulative += atoms_[j].prob;
    mpz_fdiv_q(scaled.get_mpz_t(), mpz_class(cumulative.get_num() * two64).get_mpz_t(),
               cumulative.get_den().get_mpz_t());
    thresholds_.push_back(static_cast<std::uint64_t>(mpz_get_ui(scaled.get_mpz_t())));
  }
}

std::size_t JointDiscreteDistribution::sample_index(RandomStream& rng) const {
  const std::uint64_t u = rng.next_u64();
  return static_cast<std::size_t>(std::upper_bound(thresholds_.begin(), thresholds_.end(), u) -
                                  thresholds_.begin());
}

bool operator==(const JointDiscreteDistribution& a, const JointDiscreteDistribution& b) {
  if (a.dimension_ != b.dimension_ || a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t j = 0; j < a.atoms_.size(); ++j) {
    if (a.atoms_[j].prices != b.atoms_[j].prices || a.atoms_[j].prob != b.atoms_[j].prob) {
      return false;
    }
  }
  return true;
}

MarginalDistribution::MarginalDistribution(std::vector<ValueProb> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("marginal distribution has no atoms");
  Rational total = 0;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    check_probability(atoms_[j].prob, j);
    total += atoms_[j].prob;
  }
  check_total(total);
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const ValueProb& a, const ValueProb& b) { return a.value < b.value; });
  for (std::size_t j = 1; j < atoms_.size(); ++j) {
    if (atoms_[j].value == atoms_[j - 1].value) {
      throw InputError("duplicate value " + to_string(atoms_[j].value) + " in marginal");
    }
  }
}

bool operator==(const MarginalDistribution& a, const MarginalDistribution& b) {
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t j = 0; j < a.atoms_.size(); ++j) {
    if (a.atoms_[j].value != b.atoms_[j].value || a.atoms_[j].prob != b.atoms_[j].prob) {
      return false;
    }
  }
  return true;
}

MeanVector mean(const JointDiscreteDistribution& d) {
  MeanVector mu(d.dimension(), Rational(0));
  for (const auto& a : d.atoms()) {
    for (std::size_t s = 0; s < mu.size(); ++s) mu[s] += a.prob * a.prices[s];
  }
  return mu;
}

Rational mean(const MarginalDistribution& d) {
  Rational mu = 0;
  for (const auto& a : d.atoms()) mu += a.prob * a.value;
  return mu;
}

JointDiscreteDistribution shift(const JointDiscreteDistribution& d, std::span<const Rational> v) {
  if (v.size() != d.dimension()) {
    throw InputError("shift vector has " + std::to_string(v.size()) + " entries, expected " +
                     std::to_string(d.dimension()));
  }
  std::vector<Atom> atoms;
  atoms.reserve(d.size());
  for (const auto& a : d.atoms()) atoms.push_back({difference(a.prices, v), a.prob});
  return JointDiscreteDistribution(std::move(atoms));
}

MarginalDistribution shift(const MarginalDistribution& d, const Rational& v) {
  std::vector<ValueProb> atoms;
  atoms.reserve(d.size());
  for (const auto& a : d.atoms()) atoms.push_back({a.value - v, a.prob});
  return MarginalDistribution(std::move(atoms));
}

JointDiscreteDistribution product(std::span<const MarginalDistribution> marginals,
                                  std::size_t limit) {
  if (marginals.empty()) throw InputError("product of zero marginals");
  std::size_t count = 1;
  for (const auto& m : marginals) {
    if (count > limit / m.size()) {
      throw CapacityError("product distribution would exceed " + std::to_string(limit) +
                          " atoms; sample the marginals lazily instead");
    }
    count *= m.size();
  }

  std::vector<Atom> atoms;
  atoms.reserve(count);
  std::vector<std::size_t> digit(marginals.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    Atom a{PriceVector(marginals.size()), Rational(1)};
    for (std::size_t s = 0; s < marginals.size(); ++s) {
      const auto& vp = marginals[s].atoms()[digit[s]];
      a.prices[s] = vp.value;
      a.prob *= vp.prob;
    }
    atoms.push_back(std::move(a));
    for (std::size_t s = marginals.size(); s-- > 0;) {
      if (++digit[s] < marginals[s].size()) break;
      digit[s] = 0;
    }
  }
  return JointDiscreteDistribution::merged(std::move(atoms));
}

JointDiscreteDistribution mixture(std::span<const JointDiscreteDistribution> ds,
                                  std::span<const Rational> weights) {
  if (ds.empty()) throw InputError("mixture of zero distributions");
  if (weights.size() != ds.size()) {
    throw InputError("mixture has " + std::to_string(ds.size()) + " distributions but " +
                     std::to_string(weights.size()) + " weights");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (sgn(weights[i]) <= 0) throw InputError("mixture weights must be positive");
    if (ds[i].dimension() != ds.front().dimension()) {
      throw InputError("mixture components have different numbers of stocks");
    }
    total += weights[i];
  }
  if (total != 1) throw InputError("mixture weights sum to " + to_string(total));

  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (const auto& a : ds[i].atoms()) atoms.push_back({a.prices, weights[i] * a.prob});
  }
  return JointDiscreteDistribution::merged(std::move(atoms));
}

JointDiscreteDistribution uniform_mixture(std::span<const JointDiscreteDistribution> ds) {
  if (ds.empty()) throw InputError("mixture of zero distributions");
  std::vector<Rational> weights(ds.size(),
                                make_rational(1, static_cast<std::int64_t>(ds.size())));
  return mixture(ds, weights);
}

MarginalDistribution marginal(const JointDiscreteDistribution& d, std::size_t s) {
  if (s >= d.dimension()) throw InputError("marginal index out of range");
  std::map<Rational, Rational> mass;
  for (const auto& a : d.atoms()) mass[a.prices[s]] += a.prob;
  std::vector<ValueProb> atoms;
  for (auto& [value, prob] : mass) atoms.push_back({value, prob});
  return MarginalDistribution(std::move(atoms));
}

const PriceVector& sample(const JointDiscreteDistribution& d, RandomStream& rng) {
  return d.atom(d.sample_index(rng)).prices;
}

}  // namespace tprophet
