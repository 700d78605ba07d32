#include "crnkit/network.hpp"

#include "crnkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crnkit {

Rational Complex::operator[](std::size_t species) const {
  auto it = coefficients.find(species);
  return it == coefficients.end() ? Rational(0) : it->second;
}

Rate Rate::literal(const Rational& value) {
  Rate r;
  r.literal_ = value;
  return r;
}

Rate Rate::parameter(const std::string& name) {
  Rate r;
  r.symbols_[name] = 1;
  return r;
}

Rate& Rate::operator+=(const Rate& other) {
  literal_ += other.literal_;
  for (const auto& [name, mult] : other.symbols_) symbols_[name] += mult;
  return *this;
}

Rational Rate::bind(const ParameterBinding& params) const {
  Rational value = literal_;
  for (const auto& [name, mult] : symbols_) {
    auto it = params.find(name);
    if (it == params.end()) throw UnboundParameter(name);
    if (it->second <= 0) {
      throw std::invalid_argument("rate parameter '" + name + "' must be positive, got " + to_string(it->second));
    }
    value += mult * it->second;
  }
  if (value <= 0) throw std::invalid_argument("rate coefficient must be positive, got " + to_string(value));
  return value;
}

std::string Rate::render() const {
  std::string out;
  for (const auto& [name, mult] : symbols_) {
    for (Rational k = 0; k < mult; k += 1) {
      if (!out.empty()) out += '+';
      out += name;
    }
  }
  if (literal_ != 0 || out.empty()) {
    if (!out.empty()) out += '+';
    out += to_string(literal_);
  }
  return out;
}

namespace {

void validate_complex(const Complex& c, std::size_t species_count, bool reactant) {
  for (const auto& [idx, coef] : c.coefficients) {
    if (idx >= species_count) throw std::invalid_argument("complex refers to an unknown species index");
    if (coef <= 0) throw std::invalid_argument("stoichiometric coefficients must be positive when stored");
    if (reactant && !is_integer(coef)) {
      throw std::invalid_argument("reactant coefficients must be nonnegative integers");
    }
  }
}

}  // namespace

ReactionNetwork ReactionNetwork::build(std::vector<std::string> species, std::vector<ReactionStep> steps,
                                       std::vector<std::string>* warnings) {
  std::set<std::string> seen;
  for (const auto& s : species) {
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate species name '" + s + "'");
  }
  ReactionNetwork net;
  net.species_ = std::move(species);
  for (auto& step : steps) {
    validate_complex(step.reactant, net.species_.size(), true);
    validate_complex(step.product, net.species_.size(), false);
    if (step.reactant == step.product) {
      throw std::invalid_argument("reaction step " + render_complex(step.reactant, net.species_) + " -> " +
                                  render_complex(step.product, net.species_) + " changes no species");
    }
    if (!step.rate.is_symbolic() && step.rate.literal_part() <= 0) {
      throw std::invalid_argument("rate coefficient must be positive");
    }
    auto dup = std::find_if(net.steps_.begin(), net.steps_.end(), [&](const ReactionStep& s) {
      return s.reactant == step.reactant && s.product == step.product;
    });
    if (dup != net.steps_.end()) {
      dup->rate += step.rate;
      if (warnings) {
        warnings->push_back("merged duplicate step " + render_complex(step.reactant, net.species_) + " -> " +
                            render_complex(step.product, net.species_) + " (rates summed to " +
                            dup->rate.render() + ")");
      }
      continue;
    }
    net.steps_.push_back(std::move(step));
  }
  return net;
}

std::size_t ReactionNetwork::species_index(std::string_view name) const {
  for (std::size_t i = 0; i < species_.size(); ++i)
    if (species_[i] == name) return i;
  throw std::out_of_range("unknown species '" + std::string(name) + "'");
}

std::vector<std::string> ReactionNetwork::idle_species() const {
  std::vector<bool> used(species_.size(), false);
  for (const auto& s : steps_) {
    for (const auto& [i, c] : s.reactant.coefficients) used[i] = true;
    for (const auto& [i, c] : s.product.coefficients) used[i] = true;
  }
  std::vector<std::string> idle;
  for (std::size_t i = 0; i < species_.size(); ++i)
    if (!used[i]) idle.push_back(species_[i]);
  return idle;
}

std::vector<std::string> ReactionNetwork::parameters() const {
  std::set<std::string> names;
  for (const auto& s : steps_)
    for (const auto& [name, mult] : s.rate.symbols()) names.insert(name);
  return {names.begin(), names.end()};
}

std::string render_complex(const Complex& c, const std::vector<std::string>& species) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [idx, coef] : c.coefficients) {
    if (!out.empty()) out += " + ";
    if (coef != 1) out += to_string(coef);
    out += species.at(idx);
  }
  return out;
}

std::string render_network(const ReactionNetwork& net) {
  std::ostringstream os;
  os << "species: ";
  for (std::size_t i = 0; i < net.species_count(); ++i) os << (i ? ", " : "") << net.species()[i];
  os << '\n';
  for (const auto& s : net.steps()) {
    os << render_complex(s.reactant, net.species()) << " ->[" << s.rate.render() << "] "
       << render_complex(s.product, net.species()) << '\n';
  }
  return os.str();
}

StoichiometricMatrices stoichiometric_matrices(const ReactionNetwork& net) {
  const std::size_t m = net.species_count();
  const std::size_t r = net.step_count();
  StoichiometricMatrices out{RationalMatrix(m, r), RationalMatrix(m, r), RationalMatrix(m, r)};
  for (std::size_t j = 0; j < r; ++j) {
    const auto& step = net.steps()[j];
    for (const auto& [i, c] : step.reactant.coefficients) out.alpha(i, j) = c;
    for (const auto& [i, c] : step.product.coefficients) out.beta(i, j) = c;
    for (std::size_t i = 0; i < m; ++i) out.gamma(i, j) = out.beta(i, j) - out.alpha(i, j);
  }
  return out;
}

std::vector<std::string> variable_names_for(const ReactionNetwork& net) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  bool collision = false;
  for (const auto& s : net.species()) {
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    collision |= !seen.insert(lower).second;
    names.push_back(std::move(lower));
  }
  if (collision) {
    for (std::size_t i = 0; i < names.size(); ++i) names[i] = "x" + std::to_string(i + 1);
  }
  return names;
}

}  // namespace crnkit
