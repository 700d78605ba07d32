#pragma once

#include "crnkit/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace crnkit {

// Exponent vector x_1^{e_1} ... x_M^{e_M}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t dim) : exponents_(dim, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {}

  static Monomial variable(std::size_t dim, std::size_t index, std::uint32_t power = 1);

  std::size_t dim() const { return exponents_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exponents_[i]; }
  std::span<const std::uint32_t> exponents() const { return exponents_; }
  std::uint32_t degree() const;
  bool is_constant() const { return degree() == 0; }

  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exponents_;
};

// Graded lexicographic order; x_1 is the most significant variable.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

// Map comparator that iterates terms from the highest grlex monomial down.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  Polynomial() = default;
  explicit Polynomial(std::size_t dim) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, const Rational& value);
  static Polynomial variable(std::size_t dim, std::size_t index);
  static Polynomial term(const Monomial& monomial, const Rational& coefficient);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Degree of the zero polynomial is reported as 0.
  std::uint32_t degree() const;

  Rational coefficient(const Monomial& monomial) const;
  // Adds c*monomial, pruning the entry if it cancels.
  void add_term(const Monomial& monomial, const Rational& coefficient);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;

  bool operator==(const Polynomial& other) const { return dim_ == other.dim_ && terms_ == other.terms_; }

 private:
  void require_same_dim(const Polynomial& other) const;

  std::size_t dim_ = 0;
  TermMap terms_;
};

Polynomial pow(const Polynomial& base, std::uint32_t exponent);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);

// Partial assignment: each listed variable is replaced by a rational or by a polynomial
// of the same ambient dimension. Unlisted variables are left alone.
using Substitution = std::map<std::size_t, std::variant<Rational, Polynomial>>;
Polynomial substitute(const Polynomial& p, const Substitution& assignments);

// Full evaluation at a rational point.
Rational evaluate(const Polynomial& p, std::span<const Rational> point);
double evaluate(const Polynomial& p, std::span<const double> point);

// "5/3*x1^2*x3 - y + 2" with terms in grlex-descending order; "0" for the zero polynomial.
std::string render(const Polynomial& p, std::span<const std::string> names);

// Default variable names: x, y, z, w for M <= 4, otherwise x1..xM.
std::vector<std::string> default_variable_names(std::size_t dim);

// Right-hand side of x' = P(x): M polynomials in M variables.
class PolynomialSystem {
 public:
  PolynomialSystem() = default;
  PolynomialSystem(std::vector<std::string> names, std::vector<Polynomial> components);
  static PolynomialSystem zero(std::size_t dim);
  static PolynomialSystem zero(std::vector<std::string> names);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;
  std::uint32_t degree() const;

  // Components only; variable names are labels.
  bool operator==(const PolynomialSystem& other) const { return components_ == other.components_; }

 private:
  std::vector<std::string> names_;
  std::vector<Polynomial> components_;
};

// "{p1, p2, ...}"
std::string render(const PolynomialSystem& sys);

// grad(V) . f, without any 1/2 factor.
Polynomial lie_derivative(const Polynomial& v, const PolynomialSystem& sys);

}  // namespace crnkit
