#include "tprophet/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tprophet/errors.hpp"

namespace tprophet {

namespace {

std::size_t pick(RandomStream& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform_below(hi - lo + 1));
}

// Rank over GF(2) of the columns selected by `subset`.
std::size_t gf2_rank(const std::vector<std::uint32_t>& columns, std::uint64_t subset) {
  std::vector<std::uint32_t> basis;
  for (std::size_t e = 0; e < columns.size(); ++e) {
    if (((subset >> e) & 1U) == 0) continue;
    std::uint32_t v = columns[e];
    for (std::uint32_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return basis.size();
}

Matroid random_partition(RandomStream& rng, std::size_t k) {
  const std::size_t block_count = pick(rng, 1, k);
  std::vector<PartitionBlock> blocks(block_count);
  // Every block gets one element first so none is empty.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t b = i < block_count ? i : pick(rng, 0, block_count - 1);
    blocks[b].elements.insert(order[i]);
  }
  for (auto& block : blocks) block.cap = pick(rng, 1, block.elements.size());
  return Matroid::partition(k, std::move(blocks));
}

Matroid random_graphic(RandomStream& rng, std::size_t k) {
  const std::size_t vertices = pick(rng, 2, k + 1);
  std::vector<GraphicEdge> edges;
  edges.reserve(k);
  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t u = pick(rng, 0, vertices - 1);
    std::size_t v = pick(rng, 0, vertices - 2);
    if (v >= u) ++v;
    edges.push_back({u, v});
  }
  return Matroid::graphic(std::move(edges));
}

}  // namespace

Rational random_rational(RandomStream& rng, std::int64_t magnitude, std::int64_t max_den) {
  return make_rational(rng.uniform_int(-magnitude, magnitude), rng.uniform_int(1, max_den));
}

WeightVector random_weights(RandomStream& rng, std::size_t k, std::int64_t magnitude,
                            std::int64_t max_den) {
  WeightVector w;
  w.reserve(k);
  for (std::size_t s = 0; s < k; ++s) w.push_back(random_rational(rng, magnitude, max_den));
  return w;
}

std::vector<Rational> random_probabilities(RandomStream& rng, std::size_t count) {
  std::vector<std::int64_t> raw(count);
  for (auto& r : raw) r = rng.uniform_int(1, 8);
  const std::int64_t total = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
  std::vector<Rational> probs;
  probs.reserve(count);
  for (auto r : raw) probs.push_back(make_rational(r, total));
  return probs;
}

Matroid random_explicit_matroid(RandomStream& rng, std::size_t k) {
  if (k == 0 || k > kEnumerationLimit) {
    throw InputError("explicit matroids need 1 <= k <= " + std::to_string(kEnumerationLimit));
  }
  const std::size_t dim = pick(rng, 1, std::min<std::size_t>(k, 6));
  std::vector<std::uint32_t> columns(k);
  for (auto& c : columns) {
    c = static_cast<std::uint32_t>(1 + rng.uniform_below((std::uint64_t{1} << dim) - 1));
  }
  const std::size_t full_rank = gf2_rank(columns, StockSet::full(k).bits());
  const std::size_t truncation = pick(rng, 1, full_rank);

  std::vector<StockSet> family;
  const std::uint64_t end = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= truncation && gf2_rank(columns, mask) == size) family.emplace_back(mask);
  }
  return Matroid::explicit_family(k, family);
}

Matroid random_matroid_of_size(RandomStream& rng, std::size_t k) {
  switch (rng.uniform_below(4)) {
    case 0:
      return Matroid::uniform(k, pick(rng, 1, k));
    case 1:
      return random_partition(rng, k);
    case 2:
      return random_graphic(rng, k);
    default:
      return random_explicit_matroid(rng, k);
  }
}

Matroid random_matroid(RandomStream& rng, std::size_t max_k) {
  return random_matroid_of_size(rng, pick(rng, 1, max_k));
}

JointDiscreteDistribution random_joint(RandomStream& rng, std::size_t k, std::size_t max_atoms) {
  const std::size_t count = pick(rng, 1, max_atoms);
  std::set<PriceVector> seen;
  std::vector<PriceVector> vectors;
  // Small supports can run out of distinct vectors; stop after a fixed budget.
  for (std::size_t attempt = 0; vectors.size() < count && attempt < 16 * count; ++attempt) {
    PriceVector v;
    v.reserve(k);
    for (std::size_t s = 0; s < k; ++s) v.push_back(random_rational(rng, 6, 3));
    if (seen.insert(v).second) vectors.push_back(std::move(v));
  }
  const auto probs = random_probabilities(rng, vectors.size());
  std::vector<Atom> atoms;
  atoms.reserve(vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) atoms.push_back({std::move(vectors[j]), probs[j]});
  return JointDiscreteDistribution(std::move(atoms));
}

MarginalDistribution random_marginal(RandomStream& rng, std::size_t max_atoms) {
  const std::size_t count = pick(rng, 1, max_atoms);
  std::set<Rational> values;
  for (std::size_t attempt = 0; values.size() < count && attempt < 16 * count; ++attempt) {
    values.insert(random_rational(rng, 6, 3));
  }
  const auto probs = random_probabilities(rng, values.size());
  std::vector<ValueProb> atoms;
  atoms.reserve(values.size());
  std::size_t j = 0;
  for (const auto& v : values) atoms.push_back({v, probs[j++]});
  return MarginalDistribution(std::move(atoms));
}

JointDiscreteDistribution centered(const JointDiscreteDistribution& d) {
  return shift(d, mean(d));
}

MarginalDistribution centered(const MarginalDistribution& d) { return shift(d, mean(d)); }

std::vector<JointDiscreteDistribution> random_order_family(RandomStream& rng, std::size_t n,
                                                           std::size_t k, std::size_t max_atoms) {
  std::vector<JointDiscreteDistribution> ds;
  ds.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ds.push_back(random_joint(rng, k, max_atoms));
  return ds;
}

}  // namespace tprophet
