#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crnkit {

// Arbitrary-precision rational; every symbolic verdict is decided over this type.
using Rational = mpq_class;

// Accepts "7", "-3/4", "0.125", "2.5e-3". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

// Scales a rational vector to integers with collective gcd 1, keeping signs.
// The zero vector is returned unchanged.
std::vector<Rational> normalize_to_integers(std::span<const Rational> values);

}  // namespace crnkit
