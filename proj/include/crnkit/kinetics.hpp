#pragma once

#include "crnkit/network.hpp"
#include "crnkit/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crnkit {

// f_m = sum_r (beta - alpha)(m, r) * k_r * x^{alpha(., r)}.
// Throws UnboundParameter, or std::invalid_argument for a nonpositive rate.
PolynomialSystem induced_kinetic_ode(const ReactionNetwork& net, const ParameterBinding& params = {});

struct CrossEffectViolation {
  std::size_t component;
  Monomial monomial;
  Rational coefficient;
};

struct CrossEffectReport {
  bool is_kinetic = true;
  std::vector<CrossEffectViolation> violations;
};

// A term of f_m with a negative coefficient and no factor x_m is a negative cross-effect.
CrossEffectReport negative_cross_effect(const PolynomialSystem& sys);

class NotKinetic : public std::runtime_error {
 public:
  explicit NotKinetic(CrossEffectReport report)
      : std::runtime_error("system contains negative cross-effect"), report_(std::move(report)) {}
  const CrossEffectReport& report() const { return report_; }

 private:
  CrossEffectReport report_;
};

struct Realization {
  ReactionNetwork network;
  // False when some species takes part in no step (e.g. the zero system).
  bool well_formed = true;
  std::vector<std::string> idle_species;
};

// One step per term: c*x^a in f_m becomes aX -> aX + X_m at rate c (c > 0), or
// aX -> aX - X_m at rate -c (c < 0). Steps are ordered by component, then by
// grlex-descending monomial. Species are the uppercased variable names.
// Throws NotKinetic.
Realization canonical_realization(const PolynomialSystem& sys);

// sum_m d f_m / d x_m
Polynomial divergence(const PolynomialSystem& sys);

struct PeriodicOrbitCertificate {
  Polynomial divergence;
  // Nonzero divergence with every coefficient <= 0, hence negative on the open first orthant.
  bool divergence_negative = false;
  bool has_first_integral = false;
  bool certified() const { return divergence_negative && has_first_integral; }
};

// `first_integral`, when given, is checked exactly (its Lie derivative must vanish and it
// must be nonconstant); otherwise has_first_integral stays false.
PeriodicOrbitCertificate no_periodic_orbit_certificate(const PolynomialSystem& sys,
                                                       const Polynomial* first_integral = nullptr);

}  // namespace crnkit
