#include "tprophet/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "tprophet/errors.hpp"

namespace tprophet {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_ground_size(std::size_t k) {
  if (k == 0) throw InputError("matroid ground set must be nonempty");
  if (k > StockSet::kMaxElements) {
    throw CapacityError("matroid ground set of " + std::to_string(k) +
                        " stocks exceeds the limit of " +
                        std::to_string(StockSet::kMaxElements));
  }
}

void check_enumerable(std::size_t k, std::string_view what) {
  if (k > kEnumerationLimit) {
    throw CapacityError(std::string(what) + " needs subset enumeration over " +
                        std::to_string(k) + " stocks; the limit is " +
                        std::to_string(kEnumerationLimit));
  }
}

// Union-find over graph vertices, used for acyclicity tests.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // False when u and v were already connected.
  bool unite(std::size_t u, std::size_t v) {
    u = find(u);
    v = find(v);
    if (u == v) return false;
    parent_[v] = u;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Matroid Matroid::uniform(std::size_t k, std::size_t cap) {
  check_ground_size(k);
  if (cap == 0) throw InvalidMatroidError("uniform matroid with cap 0 has only loops");
  if (cap > k) {
    throw InputError("uniform cap " + std::to_string(cap) + " exceeds ground size " +
                     std::to_string(k));
  }
  return Matroid(k, UniformKind{cap});
}

Matroid Matroid::partition(std::size_t k, std::vector<PartitionBlock> blocks) {
  check_ground_size(k);
  const StockSet ground = StockSet::full(k);
  StockSet covered;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    if (block.elements.empty()) {
      throw InputError("partition block " + std::to_string(b + 1) + " is empty");
    }
    if (block.cap == 0) {
      throw InvalidMatroidError("partition block " + std::to_string(b + 1) +
                                " has cap 0; its elements would be loops");
    }
    if (!block.elements.is_subset_of(ground)) {
      throw InputError("partition block " + std::to_string(b + 1) +
                       " has elements outside the ground set");
    }
    if ((covered.bits() & block.elements.bits()) != 0) {
      throw InputError("partition block " + std::to_string(b + 1) + " overlaps an earlier block");
    }
    covered = StockSet(covered.bits() | block.elements.bits());
  }
  if (covered != ground) throw InputError("partition blocks do not cover the ground set");
  return Matroid(k, PartitionKind{std::move(blocks)});
}

Matroid Matroid::graphic(std::vector<GraphicEdge> edges) {
  check_ground_size(edges.size());
  std::size_t vertex_count = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].u == edges[e].v) {
      throw InvalidMatroidError("graphic edge " + std::to_string(e + 1) +
                                " is a self-loop, which is a matroid loop");
    }
    vertex_count = std::max({vertex_count, edges[e].u + 1, edges[e].v + 1});
  }
  const std::size_t k = edges.size();
  return Matroid(k, GraphicKind{std::move(edges), vertex_count});
}

Matroid Matroid::explicit_family(std::size_t k, std::span<const StockSet> family) {
  check_ground_size(k);
  check_enumerable(k, "an explicit family");
  const StockSet ground = StockSet::full(k);
  std::vector<bool> members(std::size_t{1} << k, false);
  for (StockSet s : family) {
    if (!s.is_subset_of(ground)) {
      throw InputError("explicit family set " + s.to_string() + " has elements outside 1.." +
                       std::to_string(k));
    }
    members[s.bits()] = true;
  }
  return Matroid(k, ExplicitKind{std::move(members)});
}

std::string_view Matroid::kind_name() const {
  return std::visit(Overloaded{[](const UniformKind&) { return std::string_view("uniform"); },
                               [](const PartitionKind&) { return std::string_view("partition"); },
                               [](const GraphicKind&) { return std::string_view("graphic"); },
                               [](const ExplicitKind&) { return std::string_view("explicit"); }},
                    kind_);
}

bool Matroid::is_feasible(StockSet s) const {
  if (!s.is_subset_of(ground_set())) {
    throw InputError("stock set " + s.to_string() + " has elements outside 1.." +
                     std::to_string(ground_size_));
  }
  return std::visit(
      Overloaded{
          [&](const UniformKind& u) { return s.size() <= u.cap; },
          [&](const PartitionKind& p) {
            return std::all_of(p.blocks.begin(), p.blocks.end(), [&](const PartitionBlock& b) {
              return static_cast<std::size_t>(std::popcount(s.bits() & b.elements.bits())) <=
                     b.cap;
            });
          },
          [&](const GraphicKind& g) {
            DisjointSets forest(g.vertex_count);
            for (std::size_t e : s.elements()) {
              if (!forest.unite(g.edges[e].u, g.edges[e].v)) return false;
            }
            return true;
          },
          [&](const ExplicitKind& x) { return static_cast<bool>(x.members[s.bits()]); }},
      kind_);
}

std::size_t Matroid::rank(StockSet s) const {
  if (!s.is_subset_of(ground_set())) {
    throw InputError("stock set " + s.to_string() + " has elements outside 1.." +
                     std::to_string(ground_size_));
  }
  FeasibleSetBuilder builder(*this);
  for (std::size_t e : s.elements()) builder.try_add(e);
  return builder.current().size();
}

std::vector<StockSet> Matroid::explicit_sets() const {
  const auto* x = std::get_if<ExplicitKind>(&kind_);
  if (x == nullptr) throw UnsupportedKindError("explicit_sets() requires an explicit matroid");
  std::vector<StockSet> out;
  for (std::uint64_t mask = 0; mask < x->members.size(); ++mask) {
    if (x->members[mask]) out.emplace_back(mask);
  }
  return out;
}

FeasibleSetBuilder::FeasibleSetBuilder(const Matroid& m) : matroid_(&m) {
  if (const auto* p = std::get_if<PartitionKind>(&m.kind())) {
    block_counts_.assign(p->blocks.size(), 0);
    block_of_.assign(m.ground_size(), 0);
    for (std::size_t b = 0; b < p->blocks.size(); ++b) {
      for (std::size_t e : p->blocks[b].elements.elements()) block_of_[e] = b;
    }
  } else if (const auto* g = std::get_if<GraphicKind>(&m.kind())) {
    parent_.resize(g->vertex_count);
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
}

std::size_t FeasibleSetBuilder::find_root(std::size_t v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool FeasibleSetBuilder::try_add(std::size_t e) {
  if (e >= matroid_->ground_size()) {
    throw InputError("stock index " + std::to_string(e + 1) + " outside 1.." +
                     std::to_string(matroid_->ground_size()));
  }
  if (current_.contains(e)) return false;
  const bool added = std::visit(
      Overloaded{[&](const UniformKind& u) { return current_.size() < u.cap; },
                 [&](const PartitionKind& p) {
                   const std::size_t b = block_of_[e];
                   if (block_counts_[b] >= p.blocks[b].cap) return false;
                   ++block_counts_[b];
                   return true;
                 },
                 [&](const GraphicKind& g) {
                   const std::size_t ru = find_root(g.edges[e].u);
                   const std::size_t rv = find_root(g.edges[e].v);
                   if (ru == rv) return false;
                   parent_[rv] = ru;
                   return true;
                 },
                 [&](const ExplicitKind& x) {
                   return static_cast<bool>(x.members[current_.with(e).bits()]);
                 }},
      matroid_->kind());
  if (added) current_.insert(e);
  return added;
}

WeightedSet max_weight_feasible_set(const Matroid& m, std::span<const Rational> w) {
  if (w.size() != m.ground_size()) {
    throw InputError("weight vector has " + std::to_string(w.size()) +
                     " entries; the matroid has " + std::to_string(m.ground_size()) + " stocks");
  }
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  FeasibleSetBuilder builder(m);
  Rational weight = 0;
  for (std::size_t e : order) {
    if (sgn(w[e]) < 0) break;
    if (builder.try_add(e)) weight += w[e];
  }
  return {builder.current(), weight};
}

Rational top_weight(const Matroid& m, std::span<const Rational> w) {
  return max_weight_feasible_set(m, w).weight;
}

Rational density(const Matroid& m) {
  const std::size_t k = m.ground_size();
  if (const auto* u = std::get_if<UniformKind>(&m.kind())) {
    return make_rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(u->cap));
  }
  check_enumerable(k, "density of a " + std::string(m.kind_name()) + " matroid");
  for (std::size_t e = 0; e < k; ++e) {
    if (!m.is_feasible(StockSet{e})) {
      throw InvalidMatroidError("stock " + std::to_string(e + 1) + " is a loop");
    }
  }

  Rational best = 1;
  const std::uint64_t end = std::uint64_t{1} << k;
  for (std::uint64_t mask = 1; mask < end; ++mask) {
    const StockSet x(mask);
    // rk(X) >= 1, so |X| bounds the ratio from above.
    if (Rational(static_cast<long>(x.size())) <= best) continue;
    const Rational ratio = make_rational(static_cast<std::int64_t>(x.size()),
                                         static_cast<std::int64_t>(m.rank(x)));
    if (ratio > best) best = ratio;
  }
  return best;
}

AxiomReport verify_matroid_axioms(const Matroid& m) {
  const auto* x = std::get_if<ExplicitKind>(&m.kind());
  if (x == nullptr) {
    throw UnsupportedKindError("verify_matroid_axioms() requires an explicit matroid, got " +
                               std::string(m.kind_name()));
  }
  const std::size_t k = m.ground_size();
  if (!x->members[0]) return {false, "empty set: the empty set is not feasible"};

  std::vector<std::vector<StockSet>> by_size(k + 1);
  for (std::uint64_t mask = 0; mask < x->members.size(); ++mask) {
    if (!x->members[mask]) continue;
    const StockSet s(mask);
    for (std::size_t e : s.elements()) {
      StockSet smaller = s;
      smaller.erase(e);
      if (!x->members[smaller.bits()]) {
        return {false, "downward closure: " + s.to_string() + " is feasible but " +
                           smaller.to_string() + " is not"};
      }
    }
    by_size[s.size()].push_back(s);
  }

  // With downward closure in place, exchange only needs |I| = |J| + 1.
  for (std::size_t size = 0; size < k; ++size) {
    for (StockSet j : by_size[size]) {
      std::uint64_t extensions = 0;
      for (std::size_t e = 0; e < k; ++e) {
        if (!j.contains(e) && x->members[j.with(e).bits()]) extensions |= std::uint64_t{1} << e;
      }
      for (StockSet i : by_size[size + 1]) {
        if ((i.bits() & ~j.bits() & extensions) == 0) {
          return {false, "exchange: no element of " + i.to_string() + " extends " +
                             j.to_string()};
        }
      }
    }
  }
  return {};
}

Matroid to_explicit(const Matroid& m) {
  const std::size_t k = m.ground_size();
  check_enumerable(k, "conversion to an explicit family");
  std::vector<StockSet> family;
  const std::uint64_t end = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    if (m.is_feasible(StockSet(mask))) family.emplace_back(mask);
  }
  return Matroid::explicit_family(k, family);
}

}  // namespace tprophet
