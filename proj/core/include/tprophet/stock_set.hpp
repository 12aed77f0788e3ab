#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tprophet {

/// A subset of the stocks {0, ..., k-1}, stored as a 64-bit mask.
///
/// Element indices are zero-based in the library; file formats and the CLI
/// present them one-based.
class StockSet {
 public:
  static constexpr std::size_t kMaxElements = 64;

  constexpr StockSet() = default;
  constexpr explicit StockSet(std::uint64_t bits) : bits_(bits) {}
  StockSet(std::initializer_list<std::size_t> elements);

  static StockSet from_elements(const std::vector<std::size_t>& elements);
  /// {0, ..., k-1}.
  static StockSet full(std::size_t k);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t e) const {
    return e < kMaxElements && ((bits_ >> e) & 1U) != 0;
  }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_subset_of(StockSet other) const { return (bits_ & ~other.bits_) == 0; }

  /// One past the largest element, 0 for the empty set.
  constexpr std::size_t span_size() const {
    return bits_ == 0 ? 0 : kMaxElements - static_cast<std::size_t>(std::countl_zero(bits_));
  }

  void insert(std::size_t e);
  void erase(std::size_t e);
  StockSet with(std::size_t e) const;

  /// Ascending element list.
  std::vector<std::size_t> elements() const;

  /// "{1,3}" using one-based element ids.
  std::string to_string() const;

  friend constexpr bool operator==(StockSet, StockSet) = default;
  friend constexpr auto operator<=>(StockSet, StockSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace tprophet
