#pragma once

#include "crnkit/conservation.hpp"
#include "crnkit/kinetics.hpp"
#include "crnkit/linalg.hpp"
#include "crnkit/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crnkit {

// V(x) = x^T Q x + linear^T x + constant, Q symmetric.
struct QuadraticCandidate {
  RationalMatrix q;
  std::vector<Rational> linear;
  Rational constant = 0;

  std::size_t dim() const { return linear.size(); }

  static QuadraticCandidate zero(std::size_t dim);
  static QuadraticCandidate diagonal(const std::vector<Rational>& weights);
  // Throws std::invalid_argument if the polynomial has degree > 2.
  static QuadraticCandidate from_polynomial(const Polynomial& v);
  Polynomial to_polynomial() const;

  bool operator==(const QuadraticCandidate&) const = default;
};

enum class Signature { zero, positive_definite_diagonal, definite, indefinite, degenerate };
std::string to_string(Signature s);

// Inertia of Q alone (exact congruence diagonalization).
Signature classify(const QuadraticCandidate& v);

enum class SignatureFilter { none, positive_diagonal, definite, indefinite };
std::string to_string(SignatureFilter f);
SignatureFilter parse_signature_filter(const std::string& text);

struct FirstIntegralReport {
  bool found = false;
  std::optional<QuadraticCandidate> candidate;
  // Set instead of `candidate` for the logarithmic Lotka-Volterra integral.
  std::string log_form;
  // Null-space basis of the Lie condition over nonconstant quadratics (constant pinned to 0).
  std::vector<QuadraticCandidate> witness_basis;
  std::optional<Signature> signature;
};

// grad(V) . f, without the 1/2 factor; vanishing is unaffected by it.
Polynomial lie_derivative_quadratic(const QuadraticCandidate& v, const PolynomialSystem& sys);
bool is_first_integral(const QuadraticCandidate& v, const PolynomialSystem& sys);

// Integer coefficients with gcd 1 and first nonzero (grlex-descending) coefficient positive.
QuadraticCandidate normalize(const QuadraticCandidate& v);

FirstIntegralReport find_quadratic_first_integrals(const PolynomialSystem& sys,
                                                   SignatureFilter filter = SignatureFilter::none);

// ---- Generators -----------------------------------------------------------------------

struct DiagonalParams {
  std::vector<Rational> a;  // positive weights
  RationalMatrix k;         // nonnegative, zero diagonal
};

// F_m = sum_{p != m} a_p K_{m,p} x_p^2 - sum_{p != m} a_p K_{p,m} x_m x_p.
PolynomialSystem generate_diagonal_system(const DiagonalParams& p);

struct MixedSignParams {
  std::vector<Rational> a;  // weights of x_1..x_K
  std::vector<Rational> b;  // weights of y_1..y_L
  RationalMatrix coupling;  // K x L, nonnegative
  std::vector<Rational> rho_x;
  std::vector<Rational> rho_y;
  Rational rho_z = 1;
};

// Variables x_1..x_K, y_1..y_L, z with
//   x_k' = sum_l b_l A_{k,l} y_l z,  y_l' = sum_k a_k A_{k,l} x_k z,
//   z' = -(sum rho_x_k x_k' + sum rho_y_l y_l') / rho_z.
PolynomialSystem generate_mixed_sign_system(const MixedSignParams& p);
QuadraticCandidate mixed_sign_invariant(const MixedSignParams& p);
// Two steps per coupling A_{k,l} > 0: X_k + Z -> X_k + Y_l + (1 - rho_y_l/rho_z)Z at rate
// a_k A_{k,l}, and Y_l + Z -> Y_l + X_k + (1 - rho_x_k/rho_z)Z at rate b_l A_{k,l}.
// Needs rho_x, rho_y <= rho_z; nullopt otherwise or when A = 0.
std::optional<ReactionNetwork> mixed_sign_realization(const MixedSignParams& p);

enum class BinaryFamily { ellipse_hyperbola, parabolic_plus, parabolic_minus, indefinite, rank_one };
std::string to_string(BinaryFamily f);
BinaryFamily parse_binary_family(const std::string& text);

// Form coefficients a, b, c and the free parameters of the family template.
// Parameters a family does not use must be zero.
struct BinaryFormParams {
  BinaryFamily family = BinaryFamily::ellipse_hyperbola;
  Rational a, b, c;
  Rational k, l, m, n, r, s;
};

// Throws std::invalid_argument naming the violated sign constraint.
void validate(const BinaryFormParams& p);
PolynomialSystem generate_binary_form_system(const BinaryFormParams& p);
// The family's first integral: ax^2 + 2bxy + cy^2, ax^2 - 2bxy + cy^2, ax^2 + 2bxy - cy^2
// or ax^2 + 2bxy.
QuadraticCandidate binary_form_invariant(const BinaryFormParams& p);

struct ShiftedParams {
  Rational big_a, big_b;  // A, B >= 0
  Rational a, b;          // shifts
};

// x' = Ay^2 - Bxy - bBx + bAy,  y' = Bx^2 - Axy + aBx - aAy.
PolynomialSystem generate_shifted_system(const ShiftedParams& p);
// (x + a)^2 + (y + b)^2 with constant a^2 + b^2.
QuadraticCandidate shifted_invariant(const ShiftedParams& p);

// ---- Checks ---------------------------------------------------------------------------

struct NonexistenceCheck {
  bool consistent = true;
  bool kinetic = false;
  bool conserving = false;
  bool has_positive_diagonal_integral = false;
  std::string detail;
};

// Kinetic + kinetically mass conserving + positive-diagonal quadratic first integral must
// force the zero system.
NonexistenceCheck check_diagonal_nonexistence(const PolynomialSystem& sys);

// y(x-1) f_1 + x(y-1) f_2 == 0, i.e. p + q - ln p - ln q is a first integral.
// Throws std::invalid_argument unless the system is two-dimensional.
bool lotka_volterra_log_check(const PolynomialSystem& sys);

// The 12 coefficients (x': x^2, xy, y^2, x, y, 1; y': same) of quadratic 2D systems having
// the logarithmic integral. Each basis vector is also returned as a system.
struct LogFamilySolution {
  std::vector<std::vector<Rational>> basis;
  std::vector<PolynomialSystem> systems;
};
LogFamilySolution solve_log_family();
PolynomialSystem quadratic_2d_system(const std::vector<Rational>& coefficients);

enum class EquilibriumSetKind { line, axis_x_zero, axis_y_zero, everywhere };
struct EquilibriumCheck {
  bool holds = false;
  EquilibriumSetKind kind = EquilibriumSetKind::everywhere;
  Rational slope;  // y = slope * x when kind == line
};

// Ellipse/hyperbola family: the stationary set y = (K/L)x (or x = 0 / y = 0 / the whole
// plane) must make both components vanish identically.
EquilibriumCheck equilibria_on_line_check(const PolynomialSystem& sys, const BinaryFormParams& p);

}  // namespace crnkit
