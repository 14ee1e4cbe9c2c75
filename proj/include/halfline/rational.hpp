#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace halfline {

/// Exact arbitrary-precision rational scalar.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or an integer literal. Throws InvalidInput.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double. When `require_short_decimal` is set
/// the value must also have a short (<= 17 significant digit) exact decimal
/// expansion, which rejects literals such as 0.1 that have no exact binary
/// representation.
Rational rational_from_double(double value, bool require_short_decimal = false);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace halfline
