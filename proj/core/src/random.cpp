#include "tprophet/random.hpp"

#include "tprophet/errors.hpp"

namespace tprophet {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw InputError("uniform_below: bound must be positive");
  // Rejection sampling keeps the result exactly uniform and avoids the
  // implementation-defined behaviour of std::uniform_int_distribution.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t x = next_u64();
  while (x > limit) x = next_u64();
  return x % bound;
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("uniform_int: empty range");
  const auto width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (width == max()) return static_cast<std::int64_t>(next_u64());
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform_below(width + 1));
}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(derive_seed(seed_, index));
}

}  // namespace tprophet
