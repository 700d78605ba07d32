#pragma once

#include "crnkit/conservation.hpp"
#include "crnkit/kinetics.hpp"
#include "crnkit/network.hpp"
#include "crnkit/qfi.hpp"
#include "crnkit/sim.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace crnkit {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings so nothing is lost to binary rounding.
Json to_json(const ReactionNetwork& net);
ReactionNetwork network_from_json(const Json& j);

// {"vars": [...], "equations": ["<rendered polynomial>", ...]}
Json to_json(const PolynomialSystem& sys);
PolynomialSystem system_from_json(const Json& j);

Json to_json(const CrossEffectReport& report, const std::vector<std::string>& names);
Json to_json(const QuadraticCandidate& v, const std::vector<std::string>& names);
Json to_json(const FirstIntegralReport& report, const std::vector<std::string>& names);
Json to_json(const DriftReport& report);

// {"mode", "exists", "witness"?, "residual"?}; the residual is the mode's defining quantity
// (rho^T gamma or rho^T f) for the witness.
Json conservation_report(ConservationMode mode, const std::optional<ConservationVector>& witness,
                         const ReactionNetwork* net, const PolynomialSystem* sys);

}  // namespace crnkit
