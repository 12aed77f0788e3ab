#include "tprophet/rational.hpp"

#include <cctype>

#include "tprophet/errors.hpp"

namespace tprophet {

namespace {

bool is_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional leading sign followed by at least one digit.
bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  return is_digits(text);
}

mpz_class parse_integer(std::string_view text) {
  std::string owned(text);
  if (!owned.empty() && owned.front() == '+') owned.erase(0, 1);
  return mpz_class(owned, 10);
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  const std::string quoted = "\"" + std::string(text) + "\"";

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_digits(den)) {
      throw InputError("malformed rational " + quoted + " (expected \"p/q\")");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) throw InputError("zero denominator in " + quoted);
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_digits(whole)) ||
        (!frac.empty() && !is_digits(frac))) {
      throw InputError("malformed decimal " + quoted);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    Rational r(negative ? mpz_class(-digits) : digits, scale);
    r.canonicalize();
    return r;
  }

  if (!is_integer_literal(text)) {
    throw InputError("malformed rational " + quoted + " (expected \"p/q\")");
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational positive_part(const Rational& value) {
  return sgn(value) > 0 ? value : Rational(0);
}

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

Rational sum_positive_parts(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) {
    if (sgn(v) > 0) total += v;
  }
  return total;
}

std::vector<Rational> difference(std::span<const Rational> a,
                                 std::span<const Rational> b) {
  if (a.size() != b.size()) {
    throw InputError("vector length mismatch: " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace tprophet
