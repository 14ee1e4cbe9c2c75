#include "halfline/rational.hpp"

#include <cctype>
#include <cmath>

#include "halfline/errors.hpp"

namespace halfline {
namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw InvalidInput("malformed rational literal '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational rational_from_double(double value, bool require_short_decimal) {
  if (!std::isfinite(value)) throw InvalidInput("non-finite number where a rational was expected");
  Rational r(value);
  if (require_short_decimal) {
    // The denominator is 2^k, so r * 10^k is an integer whose digits are the
    // exact decimal expansion.
    mpz_class den = r.get_den();
    unsigned long k = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
    mpz_class ten_k;
    mpz_ui_pow_ui(ten_k.get_mpz_t(), 10, k);
    mpz_class digits = abs(r.get_num()) * (ten_k / den);
    while (digits != 0 && digits % 10 == 0) digits /= 10;
    if (digits != 0 && digits.get_str().size() > 17) {
      throw InvalidInput("number " + std::to_string(value) +
                         " is not exactly representable; pass it as a \"p/q\" string");
    }
  }
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace halfline
