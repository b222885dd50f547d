#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcglearn/harness.hpp"
#include "vcglearn/market.hpp"

namespace vcglearn {

using Json = nlohmann::json;

/// Instance document: n_agents, allocations, outcomes, agent_map,
/// agent_values, seller_values, noise_sigma, explore_rounds_K, plus an
/// optional deterministic flag table. Unknown fields are rejected.
Json market_to_json(const MarketInstance& market);
MarketInstance market_from_json(const Json& doc);
MarketInstance load_market(const std::filesystem::path& path);

/// Policy spec: {"kind": "truthful_rewards" | "truthful_bids" | "false_bids"
/// | "stationary_misreport", ...parameters}. Scripted policies have no JSON
/// form.
Json policy_to_json(const AgentPolicy& policy);
AgentPolicy policy_from_json(const Json& doc);

/// Instance spec: {"kind": "benchmark"} | {"kind": "file", "path": ...} |
/// {"kind": "lower_bound", "which": "theta1"|"theta2", "n": ..,
///  "num_outcomes": .., "horizon": ..} | {"kind": "random", "n": ..,
///  "num_allocations": .., "structure": "product"|"single_slot", "seed": ..}
/// | {"kind": "inline", "market": {...}}.
MarketInstance market_from_spec(const Json& spec,
                                const std::filesystem::path& base_dir = ".");

EstMethod est_method_from_string(const std::string& name);
PriceMethod price_method_from_string(const std::string& name);
std::string to_string(EstMethod est);
std::string to_string(PriceMethod price);

/// Top-level experiment config for `run`: instance, horizon, seeds, grid
/// (lists of est/price methods), optional per-agent policies, optional
/// default output directory (the --out flag wins). Strict.
struct ExperimentConfig {
  Json instance_spec;
  std::int64_t horizon = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<EstMethod> est_methods;
  std::vector<PriceMethod> price_methods;
  std::vector<AgentPolicy> policies;  // empty -> all truthful rewards
  std::string output_dir;             // empty -> CLI flag / default
  Json raw;                           // config echo for metadata
};
ExperimentConfig experiment_config_from_json(const Json& doc);

/// Parameters for `bounds`: n, horizon, explore_rounds, num_allocations,
/// sigma, vmax, optional vali_expl. Strict.
BoundParams bound_params_from_json(const Json& doc);

Json load_json(const std::filesystem::path& path);

/// Throws InputError when `doc` has a key outside `allowed`.
void reject_unknown_fields(const Json& doc, const std::vector<std::string>& allowed,
                           const std::string& context);

}  // namespace vcglearn
