#pragma once

#include "crnkit/polynomial.hpp"

#include <span>
#include <string>
#include <string_view>

namespace crnkit {

// Polynomial expression over the given variables with exact rational coefficients:
// + - * ^ (nonnegative integer powers), division by nonzero constants, parentheses,
// and juxtaposition ("2x"). Throws ParseError.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

// One equation per line, "x' = <expr>". Variables are the left-hand sides in order.
// '#' starts a comment. Throws ParseError.
PolynomialSystem parse_system(std::string_view text);

// Renders in the format parse_system reads.
std::string render_system_file(const PolynomialSystem& sys);

}  // namespace crnkit
