#pragma once

#include "crnkit/linalg.hpp"
#include "crnkit/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace crnkit {

// Formal nonnegative combination of species, keyed by species index.
struct Complex {
  std::map<std::size_t, Rational> coefficients;

  bool empty() const { return coefficients.empty(); }
  Rational operator[](std::size_t species) const;
  bool operator==(const Complex&) const = default;
  auto operator<=>(const Complex& other) const {
    return coefficients <=> other.coefficients;
  }
};

using ParameterBinding = std::map<std::string, Rational>;

// Rate coefficient: literal plus a sum of named parameters. A single step carries one
// term; merged duplicate steps carry the sum of their rates.
class Rate {
 public:
  Rate() = default;
  static Rate literal(const Rational& value);
  static Rate parameter(const std::string& name);

  bool is_symbolic() const { return !symbols_.empty(); }
  const std::map<std::string, Rational>& symbols() const { return symbols_; }
  const Rational& literal_part() const { return literal_; }

  Rate& operator+=(const Rate& other);
  // Throws UnboundParameter for a missing name and std::invalid_argument for a rate <= 0.
  Rational bind(const ParameterBinding& params) const;
  // "a", "3/2", "a+b+1".
  std::string render() const;

  bool operator==(const Rate&) const = default;

 private:
  std::map<std::string, Rational> symbols_;
  Rational literal_ = 0;
};

struct ReactionStep {
  Complex reactant;
  Complex product;
  Rate rate;

  bool operator==(const ReactionStep&) const = default;
};

struct StoichiometricMatrices {
  RationalMatrix alpha;  // reactant coefficients, M x R
  RationalMatrix beta;   // product coefficients, M x R
  RationalMatrix gamma;  // beta - alpha
};

class ReactionNetwork {
 public:
  ReactionNetwork() = default;

  // Validates the steps and merges any with identical (reactant, product), summing rates.
  // A message is appended to `warnings` for every merge.
  static ReactionNetwork build(std::vector<std::string> species, std::vector<ReactionStep> steps,
                               std::vector<std::string>* warnings = nullptr);

  const std::vector<std::string>& species() const { return species_; }
  const std::vector<ReactionStep>& steps() const { return steps_; }
  std::size_t species_count() const { return species_.size(); }
  std::size_t step_count() const { return steps_.size(); }
  std::size_t species_index(std::string_view name) const;

  // Species that take part in no step. Empty for a well-formed network.
  std::vector<std::string> idle_species() const;
  bool is_well_formed() const { return idle_species().empty(); }

  // Names of parameters appearing in any rate, sorted.
  std::vector<std::string> parameters() const;

  bool operator==(const ReactionNetwork&) const = default;

 private:
  std::vector<std::string> species_;
  std::vector<ReactionStep> steps_;
};

// Reaction DSL:
//   network := line+ ; line := chain (';' chain)*
//   chain   := complex (arrow complex)+
//   arrow   := "->[" rate "]" | "<-[" rate "]" | "<=>[" rate "," rate "]"
//   complex := "0" | term ("+" term)* ; term := [coefficient] species
//   rate    := atom ("+" atom)* ; atom := identifier | positive number
// Species are ordered by first appearance. '#' starts a comment. Throws ParseError.
ReactionNetwork parse_network(std::string_view text, std::vector<std::string>* warnings = nullptr);

// One step per line in the DSL above; parse_network(render_network(n)) == n.
std::string render_network(const ReactionNetwork& net);
std::string render_complex(const Complex& c, const std::vector<std::string>& species);

StoichiometricMatrices stoichiometric_matrices(const ReactionNetwork& net);

// Lowercased species names (X -> x), or x1..xM when lowercasing would collide.
std::vector<std::string> variable_names_for(const ReactionNetwork& net);

}  // namespace crnkit
