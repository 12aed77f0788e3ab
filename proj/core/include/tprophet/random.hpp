#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace tprophet {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of child `index` of a stream seeded with `seed`. Distinct indices give
/// statistically independent streams, and the mapping depends only on
/// (seed, index), never on how many values the parent has produced.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// A seeded random stream with deterministic, platform-independent output.
///
/// Streams are not thread-safe; each worker owns its own, typically obtained
/// through child().
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Independent stream derived from this stream's seed and `index`.
  RandomStream child(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tprophet
