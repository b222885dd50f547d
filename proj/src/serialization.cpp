#include "vcglearn/serialization.hpp"

#include <fstream>

#include "vcglearn/instances.hpp"

namespace vcglearn {

void reject_unknown_fields(const Json& doc, const std::vector<std::string>& allowed,
                           const std::string& context) {
  if (!doc.is_object()) throw InputError(context + " must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    bool known = false;
    for (const auto& name : allowed) {
      if (key == name) {
        known = true;
        break;
      }
    }
    if (!known) throw InputError(context + ": unknown field \"" + key + "\"");
  }
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw InputError("failed to parse " + path.string() + ": " + e.what());
  }
  return doc;
}

Json market_to_json(const MarketInstance& market) {
  Json doc;
  doc["n_agents"] = market.n_agents;
  doc["allocations"] = market.allocation_names;
  doc["outcomes"] = market.outcome_names;
  doc["agent_map"] = market.agent_map;
  doc["agent_values"] = market.agent_values;
  doc["seller_values"] = market.seller_values;
  doc["noise_sigma"] = market.noise_sigma;
  doc["explore_rounds_K"] = market.explore_rounds_K;
  bool any_deterministic = false;
  for (const auto& row : market.deterministic) {
    for (bool flag : row) any_deterministic |= flag;
  }
  if (any_deterministic) {
    doc["deterministic"] = market.deterministic;
  }
  return doc;
}

MarketInstance market_from_json(const Json& doc) {
  reject_unknown_fields(doc,
                        {"n_agents", "allocations", "outcomes", "agent_map", "agent_values",
                         "seller_values", "noise_sigma", "explore_rounds_K", "deterministic"},
                        "market instance");
  MarketInstance market;
  try {
    market.n_agents = doc.at("n_agents").get<int>();
    market.allocation_names = doc.at("allocations").get<std::vector<std::string>>();
    market.outcome_names = doc.at("outcomes").get<std::vector<std::string>>();
    market.agent_map = doc.at("agent_map").get<std::vector<std::vector<int>>>();
    market.agent_values = doc.at("agent_values").get<std::vector<std::vector<double>>>();
    market.seller_values = doc.at("seller_values").get<std::vector<double>>();
    market.noise_sigma = doc.at("noise_sigma").get<double>();
    market.explore_rounds_K = doc.at("explore_rounds_K").get<int>();
    if (doc.contains("deterministic")) {
      market.deterministic = doc.at("deterministic").get<std::vector<std::vector<bool>>>();
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed market instance: ") + e.what());
  }
  market.validate();
  return market;
}

MarketInstance load_market(const std::filesystem::path& path) {
  return market_from_json(load_json(path));
}

Json policy_to_json(const AgentPolicy& policy) {
  Json doc;
  switch (policy.kind) {
    case PolicyKind::TruthfulRewards:
      doc["kind"] = "truthful_rewards";
      break;
    case PolicyKind::TruthfulBids:
      doc["kind"] = "truthful_bids";
      break;
    case PolicyKind::FalseBids:
      doc["kind"] = "false_bids";
      doc["bid"] = policy.bid;
      break;
    case PolicyKind::StationaryMisreport:
      doc["kind"] = "stationary_misreport";
      if (!policy.fixed_mean.empty()) {
        doc["fixed_mean"] = policy.fixed_mean;
        doc["fixed_sd"] = policy.fixed_sd;
      } else {
        doc["scale"] = policy.report_scale;
        if (!policy.report_shift.empty()) doc["shift"] = policy.report_shift;
      }
      break;
    case PolicyKind::Scripted:
      throw UsageError("scripted policies have no JSON form");
  }
  return doc;
}

AgentPolicy policy_from_json(const Json& doc) {
  reject_unknown_fields(doc, {"kind", "bid", "scale", "shift", "fixed_mean", "fixed_sd"},
                        "policy spec");
  std::string kind;
  try {
    kind = doc.at("kind").get<std::string>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("policy spec needs a \"kind\": ") + e.what());
  }
  try {
    if (kind == "truthful_rewards") return AgentPolicy::truthful_rewards();
    if (kind == "truthful_bids") return AgentPolicy::truthful_bids();
    if (kind == "false_bids") {
      return AgentPolicy::false_bids(doc.at("bid").get<std::vector<double>>());
    }
    if (kind == "stationary_misreport") {
      if (doc.contains("fixed_mean")) {
        return AgentPolicy::misreport_fixed(doc.at("fixed_mean").get<std::vector<double>>(),
                                            doc.at("fixed_sd").get<std::vector<double>>());
      }
      std::vector<double> shift;
      if (doc.contains("shift")) shift = doc.at("shift").get<std::vector<double>>();
      return AgentPolicy::misreport_affine(doc.at("scale").get<std::vector<double>>(),
                                           std::move(shift));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed policy spec: ") + e.what());
  }
  throw InputError("unknown policy kind \"" + kind + "\"");
}

MarketInstance market_from_spec(const Json& spec, const std::filesystem::path& base_dir) {
  if (!spec.is_object() || !spec.contains("kind")) {
    throw InputError("instance spec needs a \"kind\" field");
  }
  const std::string kind = spec.at("kind").get<std::string>();
  try {
    if (kind == "benchmark") {
      reject_unknown_fields(spec, {"kind"}, "benchmark instance spec");
      return single_item_benchmark();
    }
    if (kind == "file") {
      reject_unknown_fields(spec, {"kind", "path"}, "file instance spec");
      std::filesystem::path path = spec.at("path").get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      return load_market(path);
    }
    if (kind == "inline") {
      reject_unknown_fields(spec, {"kind", "market"}, "inline instance spec");
      return market_from_json(spec.at("market"));
    }
    if (kind == "lower_bound") {
      reject_unknown_fields(spec, {"kind", "which", "n", "num_outcomes", "horizon"},
                            "lower-bound instance spec");
      auto pair = lower_bound_pair(spec.at("n").get<int>(), spec.at("num_outcomes").get<int>(),
                                   spec.at("horizon").get<std::int64_t>());
      const std::string which = spec.at("which").get<std::string>();
      if (which == "theta1") return pair.theta1;
      if (which == "theta2") return pair.theta2;
      throw InputError("lower_bound \"which\" must be theta1 or theta2");
    }
    if (kind == "random") {
      reject_unknown_fields(spec, {"kind", "n", "num_allocations", "structure", "seed"},
                            "random instance spec");
      const std::string structure = spec.at("structure").get<std::string>();
      InstanceStructure parsed;
      if (structure == "product") {
        parsed = InstanceStructure::Product;
      } else if (structure == "single_slot") {
        parsed = InstanceStructure::SingleSlot;
      } else {
        throw InputError("random structure must be product or single_slot");
      }
      return random_instance(spec.at("n").get<int>(), spec.at("num_allocations").get<int>(),
                             parsed, spec.at("seed").get<std::uint64_t>());
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance spec: ") + e.what());
  }
  throw InputError("unknown instance kind \"" + kind + "\"");
}

EstMethod est_method_from_string(const std::string& name) {
  if (name == "etc") return EstMethod::Etc;
  if (name == "opt") return EstMethod::Opt;
  throw InputError("est method must be \"etc\" or \"opt\", got \"" + name + "\"");
}

PriceMethod price_method_from_string(const std::string& name) {
  if (name == "age") return PriceMethod::Age;
  if (name == "sel") return PriceMethod::Sel;
  throw InputError("price method must be \"age\" or \"sel\", got \"" + name + "\"");
}

std::string to_string(EstMethod est) { return est == EstMethod::Etc ? "etc" : "opt"; }

std::string to_string(PriceMethod price) { return price == PriceMethod::Age ? "age" : "sel"; }

ExperimentConfig experiment_config_from_json(const Json& doc) {
  reject_unknown_fields(doc, {"instance", "horizon", "seeds", "grid", "policies", "output"},
                        "experiment config");
  ExperimentConfig config;
  config.raw = doc;
  try {
    config.instance_spec = doc.at("instance");
    config.horizon = doc.at("horizon").get<std::int64_t>();
    config.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    if (doc.contains("output")) config.output_dir = doc.at("output").get<std::string>();
    if (doc.contains("grid")) {
      const Json& grid = doc.at("grid");
      reject_unknown_fields(grid, {"est", "price"}, "mechanism grid");
      for (const auto& name : grid.at("est").get<std::vector<std::string>>()) {
        config.est_methods.push_back(est_method_from_string(name));
      }
      for (const auto& name : grid.at("price").get<std::vector<std::string>>()) {
        config.price_methods.push_back(price_method_from_string(name));
      }
    } else {
      config.est_methods = {EstMethod::Etc, EstMethod::Opt};
      config.price_methods = {PriceMethod::Age, PriceMethod::Sel};
    }
    if (doc.contains("policies")) {
      for (const auto& policy : doc.at("policies")) {
        config.policies.push_back(policy_from_json(policy));
      }
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed experiment config: ") + e.what());
  }
  if (config.horizon < 1) throw InputError("horizon must be >= 1");
  if (config.seeds.empty()) throw InputError("at least one seed is required");
  if (config.est_methods.empty() || config.price_methods.empty()) {
    throw InputError("the mechanism grid must include at least one est and price method");
  }
  return config;
}

BoundParams bound_params_from_json(const Json& doc) {
  reject_unknown_fields(
      doc, {"n", "horizon", "explore_rounds", "num_allocations", "sigma", "vmax", "vali_expl"},
      "bound params");
  BoundParams params;
  try {
    params.n_agents = doc.at("n").get<int>();
    params.horizon = doc.at("horizon").get<std::int64_t>();
    params.explore_rounds = doc.at("explore_rounds").get<std::int64_t>();
    params.num_allocations = doc.at("num_allocations").get<int>();
    params.sigma = doc.at("sigma").get<double>();
    params.vmax = doc.at("vmax").get<double>();
    if (doc.contains("vali_expl")) params.vali_expl = doc.at("vali_expl").get<double>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed bound params: ") + e.what());
  }
  return params;
}

}  // namespace vcglearn
