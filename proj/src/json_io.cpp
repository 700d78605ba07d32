#include "crnkit/json_io.hpp"

#include "crnkit/expr_parser.hpp"

#include <cctype>
#include <stdexcept>

namespace crnkit {

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

Json complex_json(const Complex& c, const std::vector<std::string>& species) {
  Json out = Json::object();
  for (const auto& [idx, coef] : c.coefficients) out[species[idx]] = to_string(coef);
  return out;
}

Rational rational_field(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational as a \"p/q\" string");
}

Complex complex_from_json(const Json& j, const std::vector<std::string>& species) {
  Complex c;
  for (const auto& [name, value] : j.items()) {
    std::size_t idx = species.size();
    for (std::size_t i = 0; i < species.size(); ++i)
      if (species[i] == name) idx = i;
    if (idx == species.size()) throw std::invalid_argument("unknown species '" + name + "'");
    Rational v = rational_field(value);
    if (v != 0) c.coefficients[idx] = v;
  }
  return c;
}

Rate rate_from_string(const std::string& text) {
  Rate r;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('+', start);
    if (end == std::string::npos) end = text.size();
    std::string atom = text.substr(start, end - start);
    if (atom.empty()) throw std::invalid_argument("malformed rate '" + text + "'");
    if (std::isalpha(static_cast<unsigned char>(atom[0]))) r += Rate::parameter(atom);
    else r += Rate::literal(parse_rational(atom));
    start = end + 1;
  }
  return r;
}

}  // namespace

Json to_json(const ReactionNetwork& net) {
  Json steps = Json::array();
  for (const auto& s : net.steps()) {
    steps.push_back({{"reactant", complex_json(s.reactant, net.species())},
                     {"product", complex_json(s.product, net.species())},
                     {"rate", s.rate.render()}});
  }
  return {{"species", net.species()}, {"steps", steps}};
}

ReactionNetwork network_from_json(const Json& j) {
  auto species = j.at("species").get<std::vector<std::string>>();
  std::vector<ReactionStep> steps;
  for (const auto& s : j.at("steps")) {
    steps.push_back({complex_from_json(s.at("reactant"), species), complex_from_json(s.at("product"), species),
                     rate_from_string(s.at("rate").get<std::string>())});
  }
  return ReactionNetwork::build(std::move(species), std::move(steps));
}

Json to_json(const PolynomialSystem& sys) {
  Json eqs = Json::array();
  for (const auto& p : sys.components()) eqs.push_back(render(p, sys.names()));
  return {{"vars", sys.names()}, {"equations", eqs}};
}

PolynomialSystem system_from_json(const Json& j) {
  auto names = j.at("vars").get<std::vector<std::string>>();
  std::vector<Polynomial> comps;
  for (const auto& e : j.at("equations")) comps.push_back(parse_polynomial(e.get<std::string>(), names));
  return PolynomialSystem(std::move(names), std::move(comps));
}

Json to_json(const CrossEffectReport& report, const std::vector<std::string>& names) {
  Json v = Json::array();
  for (const auto& x : report.violations) {
    v.push_back({{"component", x.component + 1},
                 {"variable", names[x.component]},
                 {"monomial", render(Polynomial::term(x.monomial, 1), names)},
                 {"coefficient", to_string(x.coefficient)}});
  }
  return {{"is_kinetic", report.is_kinetic}, {"violations", v}};
}

Json to_json(const QuadraticCandidate& v, const std::vector<std::string>& names) {
  Json q = Json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < v.dim(); ++j) row.push_back(to_string(v.q(i, j)));
    q.push_back(row);
  }
  return {{"V", render(v.to_polynomial(), names)},
          {"Q", q},
          {"linear", rationals(v.linear)},
          {"constant", to_string(v.constant)}};
}

Json to_json(const FirstIntegralReport& report, const std::vector<std::string>& names) {
  Json out = {{"found", report.found}};
  if (report.candidate) out["candidate"] = to_json(*report.candidate, names);
  if (!report.log_form.empty()) out["candidate"] = {{"log_form", report.log_form}};
  if (report.signature) out["signature"] = to_string(*report.signature);
  Json basis = Json::array();
  for (const auto& b : report.witness_basis) basis.push_back(render(b.to_polynomial(), names));
  out["witness_basis"] = basis;
  return out;
}

Json to_json(const DriftReport& report) {
  return {{"initial_value", report.initial_value},
          {"max_abs_drift", report.max_abs_drift},
          {"final_drift", report.final_drift},
          {"positivity_events", report.positivity_events}};
}

Json conservation_report(ConservationMode mode, const std::optional<ConservationVector>& witness,
                         const ReactionNetwork* net, const PolynomialSystem* sys) {
  Json out = {{"mode", to_string(mode)}, {"exists", witness.has_value()}};
  if (!witness) return out;
  out["witness"] = rationals(witness->rho);
  if (mode == ConservationMode::stoichiometric && net) {
    out["residual"] = rationals(stoichiometric_residual(witness->rho, *net));
  } else if (mode == ConservationMode::kinetic && sys) {
    out["residual"] = render(kinetic_residual(witness->rho, *sys), sys->names());
  }
  return out;
}

}  // namespace crnkit
