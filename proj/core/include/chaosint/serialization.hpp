#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "chaosint/chaos_expansion.hpp"
#include "chaosint/h_valued_chaos.hpp"
#include "chaosint/monte_carlo.hpp"
#include "chaosint/multi_index.hpp"
#include "chaosint/sde.hpp"

namespace chaosint {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

Json to_json(const MultiIndex& a);          // [[k, a_k], ...]
Json to_json(const Truncation& t);          // {"modes": K, "max_order": N}
Json to_json(const ChaosExpansion& f);      // {"trunc": ..., "coeffs": [{"alpha", "value"}]}
Json to_json(const HValuedChaos& eta);      // coefficients also carry "k"
Json to_json(const McReport& r);            // {"statistic", "stderr", "tolerance", "pass", "seed", "n"}
/// Sidecar of the solution CSV: {"trunc": ..., "alphas": [{"id": j, "alpha": [...]}]}.
Json alpha_map_json(const PropagatorSolution& sol);

// Readers throw ConfigError on malformed input.
MultiIndex multi_index_from_json(const Json& j);
Truncation truncation_from_json(const Json& j);
ChaosExpansion chaos_from_json(const Json& j);
HValuedChaos h_valued_from_json(const Json& j);

}  // namespace chaosint
