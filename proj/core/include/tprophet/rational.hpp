#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tprophet {

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws InputError when den == 0.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", an integer ("-3") or a finite decimal ("0.125", "-2.5")
/// without any floating-point rounding. Throws InputError on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Formats as "p/q"; integers keep the "/1" suffix so output is uniform.
std::string to_string(const Rational& value);

/// max(value, 0).
Rational positive_part(const Rational& value);

Rational sum(std::span<const Rational> values);

/// Σ max(v, 0).
Rational sum_positive_parts(std::span<const Rational> values);

/// Element-wise a - b. Throws InputError on length mismatch.
std::vector<Rational> difference(std::span<const Rational> a,
                                 std::span<const Rational> b);

}  // namespace tprophet
