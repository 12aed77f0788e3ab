#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tprophet {

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Indices of the first few failing trials, for reproduction.
  std::vector<std::size_t> failing_trials;

  bool passed() const { return failures == 0; }
};

/// Names accepted by run_property(), in the order run_certification() uses.
std::span<const std::string_view> property_names();

/// Runs `trials` randomized exact checks of one property. Trial i draws its
/// instance from a stream derived from (seed, corpus, i), where properties
/// about the same objects share a corpus: the three random-order properties
/// see identical instances for equal seeds. Unknown names raise InputError.
PropertyResult run_property(std::string_view name, std::uint64_t seed, std::size_t trials);

struct CertifyOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  /// Per-property trial counts that replace `trials`.
  std::map<std::string, std::size_t, std::less<>> trial_overrides;
};

std::vector<PropertyResult> run_certification(const CertifyOptions& options);

}  // namespace tprophet
