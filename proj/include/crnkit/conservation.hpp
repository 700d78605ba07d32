#pragma once

#include "crnkit/network.hpp"
#include "crnkit/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crnkit {

enum class ConservationMode { stoichiometric, kinetic };

std::string to_string(ConservationMode mode);

// Strictly positive weights rho. Stoichiometric: rho^T gamma = 0. Kinetic: rho^T f == 0.
struct ConservationVector {
  std::vector<Rational> rho;
  ConservationMode mode = ConservationMode::stoichiometric;
};

// Witnesses are the minimum-sum vertex of {rho in the null space : rho >= 1}, scaled to
// integers with gcd 1.
std::optional<ConservationVector> stoichiometric_conservation(const ReactionNetwork& net);
std::optional<ConservationVector> kinetic_conservation(const PolynomialSystem& sys);

// Exact check of the mode's defining identity plus strict positivity.
// Throws std::invalid_argument on dimension mismatch or when the mode does not fit the
// target (stoichiometric needs a network, kinetic a system).
bool verify_conservation(const ConservationVector& candidate, const ReactionNetwork& net);
bool verify_conservation(const ConservationVector& candidate, const PolynomialSystem& sys);

// rho^T gamma, one entry per reaction step.
std::vector<Rational> stoichiometric_residual(const std::vector<Rational>& rho, const ReactionNetwork& net);

// rho^T f as a polynomial.
Polynomial kinetic_residual(const std::vector<Rational>& rho, const PolynomialSystem& sys);

}  // namespace crnkit
