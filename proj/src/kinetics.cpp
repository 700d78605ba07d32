#include "crnkit/kinetics.hpp"

#include <algorithm>
#include <cctype>

namespace crnkit {

PolynomialSystem induced_kinetic_ode(const ReactionNetwork& net, const ParameterBinding& params) {
  const std::size_t dim = net.species_count();
  std::vector<Polynomial> comps(dim, Polynomial(dim));
  for (const auto& step : net.steps()) {
    const Rational k = step.rate.bind(params);
    Monomial mono(dim);
    for (const auto& [i, c] : step.reactant.coefficients) mono[i] = static_cast<std::uint32_t>(c.get_num().get_ui());
    for (std::size_t m = 0; m < dim; ++m) {
      Rational change = step.product[m] - step.reactant[m];
      if (change != 0) comps[m].add_term(mono, change * k);
    }
  }
  return PolynomialSystem(variable_names_for(net), std::move(comps));
}

CrossEffectReport negative_cross_effect(const PolynomialSystem& sys) {
  CrossEffectReport report;
  for (std::size_t m = 0; m < sys.dim(); ++m) {
    for (const auto& [mono, coef] : sys[m].terms()) {
      if (coef < 0 && mono[m] == 0) report.violations.push_back({m, mono, coef});
    }
  }
  report.is_kinetic = report.violations.empty();
  return report;
}

Realization canonical_realization(const PolynomialSystem& sys) {
  auto report = negative_cross_effect(sys);
  if (!report.is_kinetic) throw NotKinetic(std::move(report));

  std::vector<std::string> species;
  for (const auto& n : sys.names()) {
    std::string up = n;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    species.push_back(std::move(up));
  }
  std::vector<ReactionStep> steps;
  for (std::size_t m = 0; m < sys.dim(); ++m) {
    for (const auto& [mono, coef] : sys[m].terms()) {
      ReactionStep step;
      for (std::size_t i = 0; i < mono.dim(); ++i)
        if (mono[i]) step.reactant.coefficients[i] = mono[i];
      step.product = step.reactant;
      auto& target = step.product.coefficients[m];
      target += coef > 0 ? 1 : -1;
      if (target == 0) step.product.coefficients.erase(m);
      step.rate = Rate::literal(coef > 0 ? coef : Rational(-coef));
      steps.push_back(std::move(step));
    }
  }
  Realization out;
  out.network = ReactionNetwork::build(std::move(species), std::move(steps));
  out.idle_species = out.network.idle_species();
  out.well_formed = out.idle_species.empty();
  return out;
}

Polynomial divergence(const PolynomialSystem& sys) {
  Polynomial div(sys.dim());
  for (std::size_t m = 0; m < sys.dim(); ++m) div += partial_derivative(sys[m], m);
  return div;
}

PeriodicOrbitCertificate no_periodic_orbit_certificate(const PolynomialSystem& sys, const Polynomial* first_integral) {
  PeriodicOrbitCertificate cert;
  cert.divergence = divergence(sys);
  cert.divergence_negative =
      !cert.divergence.is_zero() &&
      std::all_of(cert.divergence.terms().begin(), cert.divergence.terms().end(),
                  [](const auto& t) { return t.second <= 0; });
  if (first_integral) {
    cert.has_first_integral = first_integral->degree() > 0 && lie_derivative(*first_integral, sys).is_zero();
  }
  return cert;
}

}  // namespace crnkit
