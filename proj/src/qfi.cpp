#include "crnkit/qfi.hpp"

#include "crnkit/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace crnkit {

QuadraticCandidate QuadraticCandidate::zero(std::size_t dim) {
  return QuadraticCandidate{RationalMatrix(dim, dim), std::vector<Rational>(dim), Rational(0)};
}

QuadraticCandidate QuadraticCandidate::diagonal(const std::vector<Rational>& weights) {
  auto v = zero(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) v.q(i, i) = weights[i];
  return v;
}

QuadraticCandidate QuadraticCandidate::from_polynomial(const Polynomial& p) {
  if (p.degree() > 2) throw std::invalid_argument("quadratic candidate must have degree at most 2");
  const std::size_t dim = p.dim();
  auto v = zero(dim);
  for (const auto& [mono, coef] : p.terms()) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::uint32_t k = 0; k < mono[i]; ++k) vars.push_back(i);
    if (vars.empty()) {
      v.constant = coef;
    } else if (vars.size() == 1) {
      v.linear[vars[0]] = coef;
    } else if (vars[0] == vars[1]) {
      v.q(vars[0], vars[0]) = coef;
    } else {
      v.q(vars[0], vars[1]) = coef / 2;
      v.q(vars[1], vars[0]) = coef / 2;
    }
  }
  return v;
}

Polynomial QuadraticCandidate::to_polynomial() const {
  const std::size_t n = dim();
  Polynomial p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_term(Monomial::variable(n, i, 2), q(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      p.add_term(Monomial::variable(n, i) * Monomial::variable(n, j), q(i, j) + q(j, i));
    }
    p.add_term(Monomial::variable(n, i), linear[i]);
  }
  p.add_term(Monomial(n), constant);
  return p;
}

std::string to_string(Signature s) {
  switch (s) {
    case Signature::zero: return "zero";
    case Signature::positive_definite_diagonal: return "positive-definite-diagonal";
    case Signature::definite: return "definite";
    case Signature::indefinite: return "indefinite";
    case Signature::degenerate: return "degenerate";
  }
  return "unknown";
}

Signature classify(const QuadraticCandidate& v) {
  const std::size_t n = v.dim();
  RationalMatrix a = v.q;
  if (a.is_zero()) return Signature::zero;

  bool diagonal_positive = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((i == j && a(i, i) <= 0) || (i != j && a(i, j) != 0)) diagonal_positive = false;
  if (diagonal_positive) return Signature::positive_definite_diagonal;

  auto swap_sym = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
  };

  std::size_t positive = 0, negative = 0, zero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, piv) == 0) ++piv;
    if (piv == n) {
      // No usable diagonal entry: fold a nonzero off-diagonal entry onto the diagonal.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        zero += n - k;
        break;
      }
      for (std::size_t c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      piv = pi;
    }
    swap_sym(k, piv);
    const Rational d = a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a(r, k) == 0) continue;
      const Rational f = a(r, k) / d;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      for (std::size_t rr = k; rr < n; ++rr) a(rr, r) -= f * a(rr, k);
    }
    (d > 0 ? positive : negative) += 1;
  }
  if (positive > 0 && negative > 0) return Signature::indefinite;
  if (zero > 0) return Signature::degenerate;
  return Signature::definite;
}

std::string to_string(SignatureFilter f) {
  switch (f) {
    case SignatureFilter::none: return "none";
    case SignatureFilter::positive_diagonal: return "positive-diagonal";
    case SignatureFilter::definite: return "definite";
    case SignatureFilter::indefinite: return "indefinite";
  }
  return "unknown";
}

SignatureFilter parse_signature_filter(const std::string& text) {
  if (text == "none") return SignatureFilter::none;
  if (text == "positive-diagonal") return SignatureFilter::positive_diagonal;
  if (text == "definite") return SignatureFilter::definite;
  if (text == "indefinite") return SignatureFilter::indefinite;
  throw std::invalid_argument("unknown signature filter '" + text + "'");
}

Polynomial lie_derivative_quadratic(const QuadraticCandidate& v, const PolynomialSystem& sys) {
  if (v.dim() != sys.dim()) throw std::invalid_argument("candidate and system dimensions differ");
  return lie_derivative(v.to_polynomial(), sys);
}

bool is_first_integral(const QuadraticCandidate& v, const PolynomialSystem& sys) {
  return lie_derivative_quadratic(v, sys).is_zero();
}

QuadraticCandidate normalize(const QuadraticCandidate& v) {
  Polynomial p = v.to_polynomial();
  if (p.is_zero()) return v;
  std::vector<Rational> coefs;
  for (const auto& [m, c] : p.terms()) coefs.push_back(c);
  auto ints = normalize_to_integers(coefs);
  if (ints.front() < 0)
    for (auto& c : ints) c = -c;
  Polynomial out(p.dim());
  std::size_t i = 0;
  for (const auto& [m, c] : p.terms()) out.add_term(m, ints[i++]);
  return QuadraticCandidate::from_polynomial(out);
}

namespace {

// Nonconstant monomials of degree <= 2, grlex-descending.
std::vector<Monomial> quadratic_unknowns(std::size_t dim, bool squares_only) {
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      if (!squares_only || i == j) out.push_back(Monomial::variable(dim, i) * Monomial::variable(dim, j));
  if (!squares_only)
    for (std::size_t i = 0; i < dim; ++i) out.push_back(Monomial::variable(dim, i));
  return out;
}

// Null space of the linear map c -> grad(sum c_j mu_j) . f.
std::vector<std::vector<Rational>> lie_null_space(const PolynomialSystem& sys, const std::vector<Monomial>& unknowns) {
  std::vector<Polynomial> images;
  std::vector<Monomial> rows;
  for (const auto& mu : unknowns) {
    images.push_back(lie_derivative(Polynomial::term(mu, Rational(1)), sys));
    for (const auto& [m, c] : images.back().terms())
      if (std::find(rows.begin(), rows.end(), m) == rows.end()) rows.push_back(m);
  }
  RationalMatrix a(rows.size(), unknowns.size());
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    for (const auto& [m, c] : images[j].terms())
      a(static_cast<std::size_t>(std::find(rows.begin(), rows.end(), m) - rows.begin()), j) = c;
  return null_space(a);
}

QuadraticCandidate combine(const std::vector<Monomial>& unknowns, const std::vector<Rational>& coefs, std::size_t dim) {
  Polynomial p(dim);
  for (std::size_t j = 0; j < unknowns.size(); ++j) p.add_term(unknowns[j], coefs[j]);
  return QuadraticCandidate::from_polynomial(p);
}

bool matches(SignatureFilter filter, Signature s) {
  switch (filter) {
    case SignatureFilter::definite: return s == Signature::definite || s == Signature::positive_definite_diagonal;
    case SignatureFilter::indefinite: return s == Signature::indefinite;
    default: return true;
  }
}

}  // namespace

FirstIntegralReport find_quadratic_first_integrals(const PolynomialSystem& sys, SignatureFilter filter) {
  const std::size_t dim = sys.dim();
  FirstIntegralReport report;

  const auto unknowns = quadratic_unknowns(dim, false);
  const auto basis = lie_null_space(sys, unknowns);
  for (const auto& v : basis) report.witness_basis.push_back(normalize(combine(unknowns, v, dim)));

  switch (filter) {
    case SignatureFilter::none:
      if (!report.witness_basis.empty()) report.candidate = report.witness_basis.front();
      break;

    case SignatureFilter::positive_diagonal: {
      const auto squares = quadratic_unknowns(dim, true);
      const auto diag_basis = lie_null_space(sys, squares);
      if (auto a = positive_vector_in_span(basis_matrix(diag_basis, dim))) {
        report.candidate = normalize(QuadraticCandidate::diagonal(*a));
      }
      break;
    }

    case SignatureFilter::definite:
    case SignatureFilter::indefinite: {
      // Signature is not a linear condition; search small integer combinations of the basis.
      const std::size_t d = basis.size();
      if (d == 0) break;
      const int span = d <= 4 ? 2 : 1;
      std::vector<int> weights(d, -span);
      while (true) {
        std::vector<Rational> coefs(unknowns.size());
        bool nonzero = false;
        for (std::size_t j = 0; j < d; ++j) {
          if (weights[j] == 0) continue;
          nonzero = true;
          for (std::size_t u = 0; u < unknowns.size(); ++u) coefs[u] += weights[j] * basis[j][u];
        }
        if (nonzero) {
          auto v = combine(unknowns, coefs, dim);
          if (matches(filter, classify(v))) {
            report.candidate = normalize(v);
            break;
          }
        }
        std::size_t k = 0;
        while (k < d && weights[k] == span) weights[k++] = -span;
        if (k == d) break;
        ++weights[k];
      }
      break;
    }
  }

  report.found = report.candidate.has_value();
  if (report.candidate) report.signature = classify(*report.candidate);
  return report;
}

NonexistenceCheck check_diagonal_nonexistence(const PolynomialSystem& sys) {
  NonexistenceCheck out;
  out.kinetic = negative_cross_effect(sys).is_kinetic;
  if (!out.kinetic) {
    out.detail = "hypothesis not met: system is not kinetic";
    return out;
  }
  out.conserving = kinetic_conservation(sys).has_value();
  if (!out.conserving) {
    out.detail = "hypothesis not met: no positive kinetic conservation vector";
    return out;
  }
  out.has_positive_diagonal_integral = find_quadratic_first_integrals(sys, SignatureFilter::positive_diagonal).found;
  if (!out.has_positive_diagonal_integral) {
    out.detail = "hypothesis not met: no positive-diagonal quadratic first integral";
    return out;
  }
  out.consistent = sys.is_zero();
  out.detail = out.consistent ? "all hypotheses hold and the system is zero"
                              : "COUNTEREXAMPLE: nonzero kinetic conserving system with a diagonal integral: " +
                                    render(sys);
  return out;
}

bool lotka_volterra_log_check(const PolynomialSystem& sys) {
  if (sys.dim() != 2) throw std::invalid_argument("logarithmic first integral check needs a 2D system");
  const Polynomial x = Polynomial::variable(2, 0);
  const Polynomial y = Polynomial::variable(2, 1);
  const Polynomial one = Polynomial::constant(2, Rational(1));
  return (y * (x - one) * sys[0] + x * (y - one) * sys[1]).is_zero();
}

namespace {

std::vector<Monomial> quadratic_2d_monomials() {
  auto x = Monomial::variable(2, 0);
  auto y = Monomial::variable(2, 1);
  return {x * x, x * y, y * y, x, y, Monomial(2)};
}

}  // namespace

PolynomialSystem quadratic_2d_system(const std::vector<Rational>& coefficients) {
  if (coefficients.size() != 12) throw std::invalid_argument("a quadratic 2D system has 12 coefficients");
  const auto monos = quadratic_2d_monomials();
  Polynomial f1(2), f2(2);
  for (std::size_t j = 0; j < 6; ++j) {
    f1.add_term(monos[j], coefficients[j]);
    f2.add_term(monos[j], coefficients[6 + j]);
  }
  return PolynomialSystem({"x", "y"}, {f1, f2});
}

LogFamilySolution solve_log_family() {
  const auto monos = quadratic_2d_monomials();
  const Polynomial x = Polynomial::variable(2, 0);
  const Polynomial y = Polynomial::variable(2, 1);
  const Polynomial one = Polynomial::constant(2, Rational(1));
  const Polynomial wx = y * (x - one);
  const Polynomial wy = x * (y - one);

  std::vector<Polynomial> images;
  for (const auto& m : monos) images.push_back(wx * Polynomial::term(m, Rational(1)));
  for (const auto& m : monos) images.push_back(wy * Polynomial::term(m, Rational(1)));
  std::vector<Monomial> rows;
  for (const auto& img : images)
    for (const auto& [m, c] : img.terms())
      if (std::find(rows.begin(), rows.end(), m) == rows.end()) rows.push_back(m);
  RationalMatrix a(rows.size(), 12);
  for (std::size_t j = 0; j < 12; ++j)
    for (const auto& [m, c] : images[j].terms())
      a(static_cast<std::size_t>(std::find(rows.begin(), rows.end(), m) - rows.begin()), j) = c;

  LogFamilySolution out;
  for (auto v : null_space(a)) {
    v = normalize_to_integers(v);
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& r) { return r != 0; });
    if (first != v.end() && *first < 0)
      for (auto& c : v) c = -c;
    out.systems.push_back(quadratic_2d_system(v));
    out.basis.push_back(std::move(v));
  }
  return out;
}

EquilibriumCheck equilibria_on_line_check(const PolynomialSystem& sys, const BinaryFormParams& p) {
  if (p.family != BinaryFamily::ellipse_hyperbola) {
    throw std::invalid_argument("equilibrium line check applies to the ellipse_hyperbola family only");
  }
  if (sys.dim() != 2) throw std::invalid_argument("equilibrium line check needs a 2D system");
  EquilibriumCheck out;
  Substitution sub;
  if (p.k != 0 && p.l != 0) {
    out.kind = EquilibriumSetKind::line;
    out.slope = p.k / p.l;
    sub[1] = Polynomial::variable(2, 0) * out.slope;
  } else if (p.k != 0) {
    out.kind = EquilibriumSetKind::axis_x_zero;
    sub[0] = Rational(0);
  } else if (p.l != 0) {
    out.kind = EquilibriumSetKind::axis_y_zero;
    sub[1] = Rational(0);
  } else {
    out.kind = EquilibriumSetKind::everywhere;
    out.holds = sys.is_zero();
    return out;
  }
  out.holds = substitute(sys[0], sub).is_zero() && substitute(sys[1], sub).is_zero();
  return out;
}

}  // namespace crnkit
