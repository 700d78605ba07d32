#include "crnkit/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crnkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_part = text.substr(e + 1);
    bool neg = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      neg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw std::invalid_argument("bad exponent in number '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (neg) exponent = -exponent;
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = mantissa.substr(0, dot);
    std::string_view frac_part = mantissa.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw std::invalid_argument("bad number '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) throw std::invalid_argument("bad number '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  mpz_class num(digits, 10);
  long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
  r.canonicalize();
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view p = text.substr(0, slash);
    std::string_view q = text.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) {
      throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    }
    mpz_class den(std::string(q), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(p), 10), den);
    value.canonicalize();
  } else {
    value = parse_decimal(text);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

double to_double(const Rational& value) {
  // mpq_get_d truncates; a quotient of two exactly representable integers rounds to nearest.
  if (mpz_sizeinbase(value.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(value.get_den_mpz_t(), 2) <= 53)
    return value.get_num().get_d() / value.get_den().get_d();
  return value.get_d();
}

std::vector<Rational> normalize_to_integers(std::span<const Rational> values) {
  mpz_class lcm_den = 1;
  for (const auto& v : values) {
    if (v != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(values.size());
  mpz_class g = 0;
  for (const auto& v : values) {
    mpz_class n = v.get_num() * (lcm_den / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  std::vector<Rational> out;
  out.reserve(values.size());
  if (g == 0) {
    out.assign(values.begin(), values.end());
    return out;
  }
  for (auto& n : ints) out.emplace_back(n / g);
  return out;
}

}  // namespace crnkit
