#include "crnkit/qfi.hpp"

#include <cctype>
#include <stdexcept>

namespace crnkit {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

// Every generated system must be kinetic and keep its invariant; anything else is a bug.
void verify_generated(const PolynomialSystem& sys, const QuadraticCandidate& v, const char* family) {
  if (!negative_cross_effect(sys).is_kinetic) {
    throw std::logic_error(std::string(family) + " generator produced a non-kinetic system: " + render(sys));
  }
  if (!is_first_integral(v, sys)) {
    throw std::logic_error(std::string(family) + " generator lost its first integral: " + render(sys));
  }
}

Monomial mono(std::size_t dim, std::size_t i, std::size_t j) {
  return Monomial::variable(dim, i) * Monomial::variable(dim, j);
}

}  // namespace

PolynomialSystem generate_diagonal_system(const DiagonalParams& p) {
  const std::size_t dim = p.a.size();
  require(dim > 0, "diagonal family: need at least one weight");
  require(p.k.rows() == dim && p.k.cols() == dim, "diagonal family: K must be M x M");
  for (std::size_t m = 0; m < dim; ++m) {
    require(p.a[m] > 0, "diagonal family: weights a_m must be positive");
    require(p.k(m, m) == 0, "diagonal family: K must have a zero diagonal");
    for (std::size_t q = 0; q < dim; ++q) require(p.k(m, q) >= 0, "diagonal family: K entries must be nonnegative");
  }

  std::vector<Polynomial> comps(dim, Polynomial(dim));
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t q = 0; q < dim; ++q) {
      if (q == m) continue;
      comps[m].add_term(mono(dim, q, q), p.a[q] * p.k(m, q));
      comps[m].add_term(mono(dim, m, q), -p.a[q] * p.k(q, m));
    }
  }
  PolynomialSystem sys(default_variable_names(dim), std::move(comps));
  verify_generated(sys, QuadraticCandidate::diagonal(p.a), "diagonal");
  return sys;
}

namespace {

std::vector<std::string> mixed_sign_names(std::size_t k, std::size_t l) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back(k == 1 ? "x" : "x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < l; ++i) names.push_back(l == 1 ? "y" : "y" + std::to_string(i + 1));
  names.push_back("z");
  return names;
}

void validate(const MixedSignParams& p) {
  const std::size_t k = p.a.size();
  const std::size_t l = p.b.size();
  require(p.coupling.rows() == k && p.coupling.cols() == l, "mixed-sign family: A must be K x L");
  require(p.rho_x.size() == k && p.rho_y.size() == l, "mixed-sign family: rho_x and rho_y must have lengths K and L");
  for (const auto& v : p.a) require(v > 0, "mixed-sign family: weights a_k must be positive");
  for (const auto& v : p.b) require(v > 0, "mixed-sign family: weights b_l must be positive");
  for (const auto& v : p.rho_x) require(v > 0, "mixed-sign family: rho_x must be positive");
  for (const auto& v : p.rho_y) require(v > 0, "mixed-sign family: rho_y must be positive");
  require(p.rho_z > 0, "mixed-sign family: rho_z must be positive");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j) require(p.coupling(i, j) >= 0, "mixed-sign family: A entries must be nonnegative");
}

}  // namespace

QuadraticCandidate mixed_sign_invariant(const MixedSignParams& p) {
  const std::size_t k = p.a.size();
  const std::size_t l = p.b.size();
  auto v = QuadraticCandidate::zero(k + l + 1);
  for (std::size_t i = 0; i < k; ++i) v.q(i, i) = p.a[i];
  for (std::size_t j = 0; j < l; ++j) v.q(k + j, k + j) = -p.b[j];
  return v;
}

PolynomialSystem generate_mixed_sign_system(const MixedSignParams& p) {
  validate(p);
  const std::size_t k = p.a.size();
  const std::size_t l = p.b.size();
  const std::size_t dim = k + l + 1;
  const std::size_t z = k + l;

  std::vector<Polynomial> comps(dim, Polynomial(dim));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      comps[i].add_term(mono(dim, k + j, z), p.b[j] * p.coupling(i, j));
      comps[k + j].add_term(mono(dim, i, z), p.a[i] * p.coupling(i, j));
    }
  Polynomial zdot(dim);
  for (std::size_t i = 0; i < k; ++i) zdot -= comps[i] * p.rho_x[i];
  for (std::size_t j = 0; j < l; ++j) zdot -= comps[k + j] * p.rho_y[j];
  comps[z] = zdot * (Rational(1) / p.rho_z);

  PolynomialSystem sys(mixed_sign_names(k, l), std::move(comps));
  verify_generated(sys, mixed_sign_invariant(p), "mixed-sign");
  std::vector<Rational> rho = p.rho_x;
  rho.insert(rho.end(), p.rho_y.begin(), p.rho_y.end());
  rho.push_back(p.rho_z);
  if (!kinetic_residual(rho, sys).is_zero()) throw std::logic_error("mixed-sign generator lost mass conservation");
  return sys;
}

std::optional<ReactionNetwork> mixed_sign_realization(const MixedSignParams& p) {
  validate(p);
  const std::size_t k = p.a.size();
  const std::size_t l = p.b.size();
  for (const auto& r : p.rho_x)
    if (r > p.rho_z) return std::nullopt;
  for (const auto& r : p.rho_y)
    if (r > p.rho_z) return std::nullopt;

  std::vector<std::string> species;
  for (const auto& n : mixed_sign_names(k, l)) {
    std::string up = n;
    up[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(up[0])));
    species.push_back(up);
  }
  const std::size_t z = k + l;
  std::vector<ReactionStep> steps;
  auto add = [&](std::size_t catalyst, std::size_t made, const Rational& rho_made, const Rational& rate) {
    ReactionStep s;
    s.reactant.coefficients = {{catalyst, 1}, {z, 1}};
    s.product.coefficients = {{catalyst, 1}, {made, 1}};
    Rational left = 1 - rho_made / p.rho_z;
    if (left != 0) s.product.coefficients[z] = left;
    s.rate = Rate::literal(rate);
    steps.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      if (p.coupling(i, j) == 0) continue;
      add(i, k + j, p.rho_y[j], p.a[i] * p.coupling(i, j));
      add(k + j, i, p.rho_x[i], p.b[j] * p.coupling(i, j));
    }
  if (steps.empty()) return std::nullopt;
  auto net = ReactionNetwork::build(std::move(species), std::move(steps));
  if (!net.is_well_formed()) return std::nullopt;
  if (!(induced_kinetic_ode(net) == generate_mixed_sign_system(p)))
    throw std::logic_error("mixed-sign realization does not reproduce the system");
  return net;
}

std::string to_string(BinaryFamily f) {
  switch (f) {
    case BinaryFamily::ellipse_hyperbola: return "ellipse_hyperbola";
    case BinaryFamily::parabolic_plus: return "parabolic_plus";
    case BinaryFamily::parabolic_minus: return "parabolic_minus";
    case BinaryFamily::indefinite: return "indefinite";
    case BinaryFamily::rank_one: return "rank_one";
  }
  return "unknown";
}

BinaryFamily parse_binary_family(const std::string& text) {
  for (auto f : {BinaryFamily::ellipse_hyperbola, BinaryFamily::parabolic_plus, BinaryFamily::parabolic_minus,
                 BinaryFamily::indefinite, BinaryFamily::rank_one}) {
    if (to_string(f) == text) return f;
  }
  throw std::invalid_argument("unknown binary-form family '" + text + "'");
}

void validate(const BinaryFormParams& p) {
  const std::string fam = to_string(p.family) + ": ";
  auto nonneg = [&](const Rational& v, const char* name) { require(v >= 0, fam + name + " must be >= 0"); };
  auto unused = [&](const Rational& v, const char* name) {
    require(v == 0, fam + name + " is not a parameter of this family and must be 0");
  };
  switch (p.family) {
    case BinaryFamily::ellipse_hyperbola:
      require(p.a > 0, fam + "a must be > 0");
      require(p.c > 0, fam + "c must be > 0");
      require(p.a * p.c - p.b * p.b != 0, fam + "ac - b^2 must be nonzero");
      nonneg(p.k, "K");
      nonneg(p.l, "L");
      unused(p.m, "M");
      unused(p.n, "N");
      unused(p.r, "R");
      unused(p.s, "S");
      break;
    case BinaryFamily::parabolic_plus:
    case BinaryFamily::parabolic_minus:
      require(p.a > 0, fam + "a must be > 0");
      require(p.b > 0, fam + "b must be > 0");
      require(p.c > 0, fam + "c must be > 0");
      require(p.a * p.c - p.b * p.b == 0, fam + "ac - b^2 must be zero");
      nonneg(p.k, "K");
      nonneg(p.l, "L");
      nonneg(p.m, "M");
      nonneg(p.n, "N");
      if (p.family == BinaryFamily::parabolic_plus) unused(p.r, "R");
      else nonneg(p.r, "R");
      break;
    case BinaryFamily::indefinite:
      require(p.a > 0, fam + "a must be > 0");
      require(p.c > 0, fam + "c must be > 0");
      require(p.b != 0, fam + "b must be nonzero");
      nonneg(p.k, "K");
      nonneg(p.l, "L");
      nonneg(p.m, "M");
      unused(p.n, "N");
      unused(p.r, "R");
      unused(p.s, "S");
      break;
    case BinaryFamily::rank_one:
      require(p.a > 0, fam + "a must be > 0");
      require(p.b != 0, fam + "b must be nonzero");
      unused(p.c, "c");
      nonneg(p.k, "K");
      nonneg(p.m, "M");
      unused(p.l, "L");
      unused(p.n, "N");
      unused(p.r, "R");
      break;
  }
}

QuadraticCandidate binary_form_invariant(const BinaryFormParams& p) {
  auto v = QuadraticCandidate::zero(2);
  Rational off = p.b;
  Rational cc = p.c;
  if (p.family == BinaryFamily::parabolic_minus) off = -p.b;
  if (p.family == BinaryFamily::indefinite) cc = -p.c;
  if (p.family == BinaryFamily::rank_one) cc = 0;
  v.q(0, 0) = p.a;
  v.q(0, 1) = off;
  v.q(1, 0) = off;
  v.q(1, 1) = cc;
  return v;
}

PolynomialSystem generate_binary_form_system(const BinaryFormParams& p) {
  validate(p);
  const auto xx = mono(2, 0, 0), xy = mono(2, 0, 1), yy = mono(2, 1, 1);
  const auto x = Monomial::variable(2, 0), y = Monomial::variable(2, 1), one = Monomial(2);
  const Rational &a = p.a, &b = p.b, &c = p.c;
  const Rational &K = p.k, &L = p.l, &M = p.m, &N = p.n, &R = p.r, &S = p.s;
  Polynomial f(2), g(2);
  switch (p.family) {
    case BinaryFamily::ellipse_hyperbola:
      f.add_term(xx, -b * K);
      f.add_term(xy, -c * K + b * L);
      f.add_term(yy, c * L);
      g.add_term(xx, a * K);
      g.add_term(xy, b * K - a * L);
      g.add_term(yy, -b * L);
      break;
    case BinaryFamily::parabolic_plus:
      f.add_term(xx, -b * K);
      f.add_term(xy, c * S);
      f.add_term(yy, c * L);
      f.add_term(x, -b * M);
      f.add_term(y, c * N);
      g.add_term(xx, a * K);
      g.add_term(xy, -b * S);
      g.add_term(yy, -b * L);
      g.add_term(x, a * M);
      g.add_term(y, -b * N);
      break;
    case BinaryFamily::parabolic_minus:
      f.add_term(xx, b * K);
      f.add_term(xy, c * S);
      f.add_term(yy, c * L);
      f.add_term(x, b * M);
      f.add_term(y, c * N);
      f.add_term(one, c * R);
      g.add_term(xx, a * K);
      g.add_term(xy, b * S);
      g.add_term(yy, b * L);
      g.add_term(x, a * M);
      g.add_term(y, b * N);
      g.add_term(one, b * R);
      break;
    case BinaryFamily::indefinite:
      f.add_term(xx, -b * K);
      f.add_term(xy, c * K - b * L);
      f.add_term(yy, c * L);
      f.add_term(x, -b * M);
      f.add_term(y, c * M);
      g.add_term(xx, a * K);
      g.add_term(xy, b * K + a * L);
      g.add_term(yy, b * L);
      g.add_term(x, a * M);
      g.add_term(y, b * M);
      break;
    case BinaryFamily::rank_one:
      f.add_term(xx, -b * K);
      f.add_term(xy, -b * S);
      f.add_term(x, -b * M);
      g.add_term(xx, a * K);
      g.add_term(xy, b * K + a * S);
      g.add_term(yy, b * S);
      g.add_term(x, a * M);
      g.add_term(y, b * M);
      break;
  }
  PolynomialSystem sys({"x", "y"}, {f, g});
  // Sign freedom in S (and b) is not fully pinned down by the template's stated
  // constraints; kinetic-ness is checked per instance.
  if (!negative_cross_effect(sys).is_kinetic) {
    throw std::invalid_argument(to_string(p.family) + ": parameters give a system with negative cross-effect: " +
                                render(sys));
  }
  verify_generated(sys, binary_form_invariant(p), to_string(p.family).c_str());
  return sys;
}

QuadraticCandidate shifted_invariant(const ShiftedParams& p) {
  auto v = QuadraticCandidate::diagonal({Rational(1), Rational(1)});
  v.linear = {2 * p.a, 2 * p.b};
  v.constant = p.a * p.a + p.b * p.b;
  return v;
}

PolynomialSystem generate_shifted_system(const ShiftedParams& p) {
  require(p.big_a >= 0, "shifted family: A must be >= 0");
  require(p.big_b >= 0, "shifted family: B must be >= 0");
  require(p.a >= 0 || p.big_b == 0, "shifted family: a < 0 requires B = 0");
  require(p.b >= 0 || p.big_a == 0, "shifted family: b < 0 requires A = 0");
  const auto xx = mono(2, 0, 0), xy = mono(2, 0, 1), yy = mono(2, 1, 1);
  const auto x = Monomial::variable(2, 0), y = Monomial::variable(2, 1);
  Polynomial f(2), g(2);
  f.add_term(yy, p.big_a);
  f.add_term(xy, -p.big_b);
  f.add_term(x, -p.b * p.big_b);
  f.add_term(y, p.b * p.big_a);
  g.add_term(xx, p.big_b);
  g.add_term(xy, -p.big_a);
  g.add_term(x, p.a * p.big_b);
  g.add_term(y, -p.a * p.big_a);
  PolynomialSystem sys({"x", "y"}, {f, g});
  verify_generated(sys, shifted_invariant(p), "shifted");
  return sys;
}

}  // namespace crnkit
