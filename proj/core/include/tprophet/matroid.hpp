#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tprophet/rational.hpp"
#include "tprophet/stock_set.hpp"

namespace tprophet {

/// Largest ground set for which exhaustive subset enumeration is attempted
/// (density of non-uniform kinds, explicit families, axiom verification).
inline constexpr std::size_t kEnumerationLimit = 20;

/// Weight per unit of each stock; also used for price vectors and their
/// differences.
using WeightVector = std::vector<Rational>;

struct UniformKind {
  std::size_t cap = 0;
};

struct PartitionBlock {
  StockSet elements;
  std::size_t cap = 1;
};

struct PartitionKind {
  std::vector<PartitionBlock> blocks;
};

/// Undirected edge; element e of the matroid is edges[e].
struct GraphicEdge {
  std::size_t u = 0;
  std::size_t v = 0;
};

struct GraphicKind {
  std::vector<GraphicEdge> edges;
  std::size_t vertex_count = 0;
};

/// Membership table indexed by the subset bitmask (size 2^k).
struct ExplicitKind {
  std::vector<bool> members;
};

/// A matroid on the stocks {0, ..., k-1}.
///
/// Uniform, partition and graphic matroids are validated on construction.
/// Explicit families are stored as given so that verify_matroid_axioms() can
/// report on families that are not matroids.
class Matroid {
 public:
  using Kind = std::variant<UniformKind, PartitionKind, GraphicKind, ExplicitKind>;

  /// Sets of size at most `cap`; requires 1 <= cap <= k.
  static Matroid uniform(std::size_t k, std::size_t cap);
  /// Disjoint blocks covering {0, ..., k-1}, each with cap >= 1.
  static Matroid partition(std::size_t k, std::vector<PartitionBlock> blocks);
  /// Cycle matroid of a multigraph; self-loops are rejected.
  static Matroid graphic(std::vector<GraphicEdge> edges);
  /// Family listed set by set; duplicates are ignored. Requires k <= kEnumerationLimit.
  static Matroid explicit_family(std::size_t k, std::span<const StockSet> family);

  std::size_t ground_size() const { return ground_size_; }
  StockSet ground_set() const { return StockSet::full(ground_size_); }
  const Kind& kind() const { return kind_; }
  std::string_view kind_name() const;

  /// Throws InputError if `s` has elements outside the ground set.
  bool is_feasible(StockSet s) const;

  /// Size of the largest feasible subset of `s`, found greedily.
  std::size_t rank(StockSet s) const;

  /// Every set in an explicit family, in increasing bitmask order.
  std::vector<StockSet> explicit_sets() const;

 private:
  Matroid(std::size_t k, Kind kind) : ground_size_(k), kind_(std::move(kind)) {}

  std::size_t ground_size_;
  Kind kind_;
};

/// Incremental independence test: holds a feasible set and extends it one
/// element at a time. Graphic matroids keep a union-find of the held edges.
class FeasibleSetBuilder {
 public:
  explicit FeasibleSetBuilder(const Matroid& m);

  /// Adds `e` if the result stays feasible; returns whether it was added.
  bool try_add(std::size_t e);

  StockSet current() const { return current_; }

 private:
  std::size_t find_root(std::size_t v);

  const Matroid* matroid_;
  StockSet current_;
  std::vector<std::size_t> block_counts_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> parent_;
};

struct WeightedSet {
  StockSet set;
  Rational weight;
};

/// Greedy maximum-weight feasible set.
///
/// Elements are scanned by (weight descending, index ascending); the scan stops
/// at the first strictly negative weight and every element that keeps the set
/// feasible is taken, zero-weight ones included. The weight equals the
/// maximum of w(S) over all feasible S.
WeightedSet max_weight_feasible_set(const Matroid& m, std::span<const Rational> w);

/// Weight of max_weight_feasible_set().
Rational top_weight(const Matroid& m, std::span<const Rational> w);

/// max over nonempty X of |X| / rk(X).
///
/// Uniform matroids use k/cap. Other kinds enumerate subsets and require
/// k <= kEnumerationLimit (CapacityError otherwise). A loop raises
/// InvalidMatroidError.
Rational density(const Matroid& m);

struct AxiomReport {
  bool holds = true;
  /// Empty when all axioms hold, otherwise the first violation found.
  std::string violation;

  explicit operator bool() const { return holds; }
};

/// Checks the empty-set, downward-closure and exchange axioms of an explicit
/// family. Other kinds raise UnsupportedKindError.
AxiomReport verify_matroid_axioms(const Matroid& m);

/// Explicit copy of any matroid with k <= kEnumerationLimit.
Matroid to_explicit(const Matroid& m);

}  // namespace tprophet
