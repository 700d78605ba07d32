#include "crnkit/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crnkit {

Monomial Monomial::variable(std::size_t dim, std::size_t index, std::uint32_t power) {
  if (index >= dim) throw std::out_of_range("variable index out of range");
  Monomial m(dim);
  m.exponents_[index] = power;
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (auto e : exponents_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("monomial dimension mismatch");
  Monomial out = *this;
  for (std::size_t i = 0; i < dim(); ++i) out.exponents_[i] += other.exponents_[i];
  return out;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  auto ea = a.exponents();
  auto eb = b.exponents();
  return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

Polynomial Polynomial::constant(std::size_t dim, const Rational& value) {
  Polynomial p(dim);
  p.add_term(Monomial(dim), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t index) {
  return term(Monomial::variable(dim, index), Rational(1));
}

Polynomial Polynomial::term(const Monomial& monomial, const Rational& coefficient) {
  Polynomial p(monomial.dim());
  p.add_term(monomial, coefficient);
  return p;
}

std::uint32_t Polynomial::degree() const {
  // Terms are stored grlex-descending, so the first one has maximal degree.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& monomial, const Rational& coefficient) {
  if (monomial.dim() != dim_) throw std::invalid_argument("monomial dimension mismatch");
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_dim(const Polynomial& other) const {
  if (dim_ != other.dim_) {
    throw std::invalid_argument("polynomial dimension mismatch: " + std::to_string(dim_) + " vs " +
                                std::to_string(other.dim_));
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dim(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dim(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_dim(b);
  Polynomial out(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial pow(const Polynomial& base, std::uint32_t exponent) {
  Polynomial result = Polynomial::constant(base.dim(), Rational(1));
  Polynomial factor = base;
  while (exponent > 0) {
    if (exponent & 1u) result = result * factor;
    exponent >>= 1;
    if (exponent > 0) factor = factor * factor;
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.dim()) throw std::out_of_range("partial_derivative: variable index out of range");
  Polynomial out(p.dim());
  for (const auto& [m, c] : p.terms()) {
    auto e = m[var];
    if (e == 0) continue;
    Monomial dm = m;
    dm[var] = e - 1;
    out.add_term(dm, c * e);
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const Substitution& assignments) {
  const std::size_t dim = p.dim();
  for (const auto& [var, value] : assignments) {
    if (var >= dim) throw std::out_of_range("substitute: variable index out of range");
    if (const auto* q = std::get_if<Polynomial>(&value); q && q->dim() != dim) {
      throw std::invalid_argument("substitute: replacement polynomial has wrong dimension");
    }
  }
  // Powers of each replacement are memoized per (variable, exponent).
  std::map<std::pair<std::size_t, std::uint32_t>, Polynomial> power_cache;
  auto power_of = [&](std::size_t var, std::uint32_t e) -> const Polynomial& {
    auto key = std::make_pair(var, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    const auto& value = assignments.at(var);
    Polynomial base = std::holds_alternative<Rational>(value)
                          ? Polynomial::constant(dim, std::get<Rational>(value))
                          : std::get<Polynomial>(value);
    return power_cache.emplace(key, pow(base, e)).first->second;
  };

  Polynomial out(dim);
  for (const auto& [m, c] : p.terms()) {
    Monomial kept = m;
    Polynomial factor = Polynomial::constant(dim, c);
    for (const auto& [var, value] : assignments) {
      auto e = m[var];
      if (e == 0) continue;
      kept[var] = 0;
      factor = factor * power_of(var, e);
    }
    if (factor.is_zero()) continue;
    out += factor * Polynomial::term(kept, Rational(1));
  }
  return out;
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.dim()) throw std::invalid_argument("evaluate: point dimension mismatch");
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
    }
    total += t;
  }
  return total;
}

double evaluate(const Polynomial& p, std::span<const double> point) {
  if (point.size() != p.dim()) throw std::invalid_argument("evaluate: point dimension mismatch");
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = to_double(c);
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
    }
    total += t;
  }
  return total;
}

std::string render(const Polynomial& p, std::span<const std::string> names) {
  if (names.size() != p.dim()) throw std::invalid_argument("render: wrong number of variable names");
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (m[i] == 0) continue;
      factors.push_back(m[i] == 1 ? names[i] : names[i] + "^" + std::to_string(m[i]));
    }
    if (factors.empty()) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << '*';
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) os << '*';
      os << factors[k];
    }
  }
  return os.str();
}

std::vector<std::string> default_variable_names(std::size_t dim) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) {
    names.push_back(dim <= 4 ? std::string(small[i]) : "x" + std::to_string(i + 1));
  }
  return names;
}

PolynomialSystem::PolynomialSystem(std::vector<std::string> names, std::vector<Polynomial> components)
    : names_(std::move(names)), components_(std::move(components)) {
  if (names_.empty()) throw std::invalid_argument("polynomial system needs at least one variable");
  if (components_.size() != names_.size()) {
    throw std::invalid_argument("polynomial system: component count differs from dimension");
  }
  for (const auto& c : components_) {
    if (c.dim() != names_.size()) throw std::invalid_argument("polynomial system: component dimension mismatch");
  }
}

PolynomialSystem PolynomialSystem::zero(std::size_t dim) { return zero(default_variable_names(dim)); }

PolynomialSystem PolynomialSystem::zero(std::vector<std::string> names) {
  const std::size_t dim = names.size();
  return PolynomialSystem(std::move(names), std::vector<Polynomial>(dim, Polynomial(dim)));
}

bool PolynomialSystem::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::uint32_t PolynomialSystem::degree() const {
  std::uint32_t d = 0;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

std::string render(const PolynomialSystem& sys) {
  std::string out = "{";
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    if (i) out += ", ";
    out += render(sys[i], sys.names());
  }
  return out + "}";
}

Polynomial lie_derivative(const Polynomial& v, const PolynomialSystem& sys) {
  if (v.dim() != sys.dim()) throw std::invalid_argument("lie_derivative: dimension mismatch");
  Polynomial out(sys.dim());
  for (std::size_t m = 0; m < sys.dim(); ++m) {
    Polynomial dv = partial_derivative(v, m);
    if (!dv.is_zero()) out += dv * sys[m];
  }
  return out;
}

}  // namespace crnkit
