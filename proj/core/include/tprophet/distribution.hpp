#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tprophet/rational.hpp"
#include "tprophet/random.hpp"

namespace tprophet {

/// One price per stock, in currency units.
using PriceVector = std::vector<Rational>;
/// Expected price per stock.
using MeanVector = std::vector<Rational>;

/// Default cap on the number of atoms a joint distribution may hold when it
/// is built by product(); exact analytics are quadratic in this count.
inline constexpr std::size_t kDefaultJointLimit = 10'000;

struct Atom {
  PriceVector prices;
  Rational prob;
};

/// A finite-support distribution over price vectors in Q^k.
///
/// Atoms are kept in lexicographic order of their price vectors, all
/// probabilities are positive and they sum to exactly 1.
class JointDiscreteDistribution {
 public:
  /// Validates and canonicalizes. Duplicate price vectors are an error.
  explicit JointDiscreteDistribution(std::vector<Atom> atoms);

  /// Like the constructor but sums the probabilities of equal price vectors.
  static JointDiscreteDistribution merged(std::vector<Atom> atoms);

  /// The distribution that always returns `prices`.
  static JointDiscreteDistribution point_mass(PriceVector prices);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return atoms_.size(); }
  std::span<const Atom> atoms() const { return atoms_; }
  const Atom& atom(std::size_t j) const { return atoms_[j]; }

  /// Inverse-CDF draw over the canonical atom order. One 64-bit value is taken
  /// from `rng`; atom j is returned with probability probs[j] up to 2^-64.
  std::size_t sample_index(RandomStream& rng) const;

  friend bool operator==(const JointDiscreteDistribution& a, const JointDiscreteDistribution& b);

 private:
  struct Canonical {};
  JointDiscreteDistribution(Canonical, std::vector<Atom> atoms);
  void finalize(bool merge_duplicates);

  std::size_t dimension_ = 0;
  std::vector<Atom> atoms_;
  // thresholds_[j] = floor(P[atom index <= j] * 2^64), for j < size() - 1.
  std::vector<std::uint64_t> thresholds_;
};

struct ValueProb {
  Rational value;
  Rational prob;
};

/// Finite-support distribution of a single stock's price, ascending values.
class MarginalDistribution {
 public:
  explicit MarginalDistribution(std::vector<ValueProb> atoms);

  std::size_t size() const { return atoms_.size(); }
  std::span<const ValueProb> atoms() const { return atoms_; }

  friend bool operator==(const MarginalDistribution&, const MarginalDistribution&);

 private:
  std::vector<ValueProb> atoms_;
};

MeanVector mean(const JointDiscreteDistribution& d);
Rational mean(const MarginalDistribution& d);

/// Subtracts `v` from every atom; shift(d, mean(d)) has zero mean.
JointDiscreteDistribution shift(const JointDiscreteDistribution& d, std::span<const Rational> v);
MarginalDistribution shift(const MarginalDistribution& d, const Rational& v);

/// Independent joint distribution of the marginals. Throws CapacityError when
/// the product of atom counts exceeds `limit`.
JointDiscreteDistribution product(std::span<const MarginalDistribution> marginals,
                                  std::size_t limit = kDefaultJointLimit);

/// Weighted mixture; weights must be positive and sum to 1.
JointDiscreteDistribution mixture(std::span<const JointDiscreteDistribution> ds,
                                  std::span<const Rational> weights);

/// Mixture with weight 1/n on each of the n distributions.
JointDiscreteDistribution uniform_mixture(std::span<const JointDiscreteDistribution> ds);

/// Distribution of coordinate `s` of d.
MarginalDistribution marginal(const JointDiscreteDistribution& d, std::size_t s);

const PriceVector& sample(const JointDiscreteDistribution& d, RandomStream& rng);

}  // namespace tprophet
