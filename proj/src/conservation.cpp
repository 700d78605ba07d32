#include "crnkit/conservation.hpp"

#include "crnkit/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace crnkit {

std::string to_string(ConservationMode mode) {
  return mode == ConservationMode::stoichiometric ? "stoichiometric" : "kinetic";
}

namespace {

std::optional<std::vector<Rational>> positive_null_vector(const RationalMatrix& constraints, std::size_t n) {
  auto basis = null_space(constraints);
  auto v = positive_vector_in_span(basis_matrix(basis, n));
  if (!v) return std::nullopt;
  return normalize_to_integers(*v);
}

}  // namespace

std::optional<ConservationVector> stoichiometric_conservation(const ReactionNetwork& net) {
  // rho^T gamma = 0  <=>  gamma^T rho = 0.
  auto mats = stoichiometric_matrices(net);
  auto rho = positive_null_vector(mats.gamma.transpose(), net.species_count());
  if (!rho) return std::nullopt;
  return ConservationVector{std::move(*rho), ConservationMode::stoichiometric};
}

std::optional<ConservationVector> kinetic_conservation(const PolynomialSystem& sys) {
  // One row per monomial: sum_m rho_m * coef(f_m, monomial) = 0.
  std::vector<Monomial> monomials;
  for (const auto& f : sys.components())
    for (const auto& [mono, c] : f.terms())
      if (std::find(monomials.begin(), monomials.end(), mono) == monomials.end()) monomials.push_back(mono);

  RationalMatrix rows(monomials.size(), sys.dim());
  for (std::size_t r = 0; r < monomials.size(); ++r)
    for (std::size_t m = 0; m < sys.dim(); ++m) rows(r, m) = sys[m].coefficient(monomials[r]);

  auto rho = positive_null_vector(rows, sys.dim());
  if (!rho) return std::nullopt;
  return ConservationVector{std::move(*rho), ConservationMode::kinetic};
}

std::vector<Rational> stoichiometric_residual(const std::vector<Rational>& rho, const ReactionNetwork& net) {
  if (rho.size() != net.species_count()) throw std::invalid_argument("conservation vector dimension mismatch");
  return left_multiply(rho, stoichiometric_matrices(net).gamma);
}

Polynomial kinetic_residual(const std::vector<Rational>& rho, const PolynomialSystem& sys) {
  if (rho.size() != sys.dim()) throw std::invalid_argument("conservation vector dimension mismatch");
  Polynomial total(sys.dim());
  for (std::size_t m = 0; m < sys.dim(); ++m) total += sys[m] * rho[m];
  return total;
}

namespace {

bool all_positive(const std::vector<Rational>& rho) {
  return std::all_of(rho.begin(), rho.end(), [](const Rational& r) { return r > 0; });
}

}  // namespace

bool verify_conservation(const ConservationVector& candidate, const ReactionNetwork& net) {
  if (candidate.mode != ConservationMode::stoichiometric) {
    throw std::invalid_argument("kinetic conservation is checked against a polynomial system");
  }
  auto residual = stoichiometric_residual(candidate.rho, net);
  return all_positive(candidate.rho) &&
         std::all_of(residual.begin(), residual.end(), [](const Rational& r) { return r == 0; });
}

bool verify_conservation(const ConservationVector& candidate, const PolynomialSystem& sys) {
  if (candidate.mode != ConservationMode::kinetic) {
    throw std::invalid_argument("stoichiometric conservation is checked against a reaction network");
  }
  return all_positive(candidate.rho) && kinetic_residual(candidate.rho, sys).is_zero();
}

}  // namespace crnkit
