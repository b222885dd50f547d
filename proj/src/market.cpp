#include "vcglearn/market.hpp"

#include <cmath>
#include <limits>

#include "vcglearn/mechanism.hpp"

namespace vcglearn {

namespace {

// Enumeration beyond this is considered infeasible for the exact Vmax.
constexpr int kEnumerationLimit = 200000;

}  // namespace

void MarketInstance::check_agent(int agent) const {
  if (agent < 0 || agent >= n_agents) {
    throw InputError("agent index " + std::to_string(agent) + " out of range [0, " +
                     std::to_string(n_agents) + ")");
  }
}

void MarketInstance::check_outcome(int outcome) const {
  if (outcome < 0 || outcome >= num_outcomes()) {
    throw InputError("outcome index " + std::to_string(outcome) + " out of range [0, " +
                     std::to_string(num_outcomes()) + ")");
  }
}

void MarketInstance::check_allocation(int allocation) const {
  if (allocation < 0 || allocation >= num_allocations()) {
    throw InputError("allocation index " + std::to_string(allocation) + " out of range [0, " +
                     std::to_string(num_allocations()) + ")");
  }
}

void MarketInstance::validate() const {
  if (n_agents < 1) throw InputError("n_agents must be positive");
  if (num_outcomes() < 1) throw InputError("outcome set must be non-empty");
  if (num_allocations() < 1) throw InputError("allocation set must be non-empty");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw InputError("noise_sigma must be finite and >= 0");
  }
  if (explore_rounds_K < 1) throw InputError("explore_rounds_K must be positive");
  if (static_cast<int>(agent_map.size()) != n_agents ||
      static_cast<int>(agent_values.size()) != n_agents) {
    throw InputError("agent_map/agent_values must have one row per agent");
  }
  for (int i = 0; i < n_agents; ++i) {
    if (static_cast<int>(agent_map[i].size()) != num_outcomes()) {
      throw InputError("agent_map row " + std::to_string(i) + " must be total over outcomes");
    }
    for (int w = 0; w < num_outcomes(); ++w) {
      int s = agent_map[i][w];
      if (s < 0 || s >= num_allocations()) {
        throw InputError("agent_map[" + std::to_string(i) + "][" + std::to_string(w) +
                         "] refers to an unknown allocation");
      }
    }
    if (static_cast<int>(agent_values[i].size()) != num_allocations()) {
      throw InputError("agent_values row " + std::to_string(i) + " must cover all allocations");
    }
    for (double v : agent_values[i]) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw InputError("agent values must lie in [0, 1]");
      }
    }
  }
  if (static_cast<int>(seller_values.size()) != num_outcomes()) {
    throw InputError("seller_values must cover all outcomes");
  }
  for (double v : seller_values) {
    if (!std::isfinite(v)) throw InputError("seller values must be finite");
  }
  if (!deterministic.empty()) {
    if (static_cast<int>(deterministic.size()) != n_agents) {
      throw InputError("deterministic flags must have one row per agent");
    }
    for (const auto& row : deterministic) {
      if (static_cast<int>(row.size()) != num_allocations()) {
        throw InputError("deterministic flag rows must cover all allocations");
      }
    }
  }
  // Throws InstanceError when no covering schedule of length K exists.
  build_explore_schedule(*this);
}

double welfare(const MarketInstance& market, int outcome) {
  market.check_outcome(outcome);
  double total = market.seller_values[outcome];
  for (int i = 0; i < market.n_agents; ++i) {
    total += market.value_of(i, market.allocation_of(i, outcome));
  }
  return total;
}

double welfare_without(const MarketInstance& market, int agent, int outcome) {
  market.check_agent(agent);
  market.check_outcome(outcome);
  double total = market.seller_values[outcome];
  for (int j = 0; j < market.n_agents; ++j) {
    if (j == agent) continue;
    total += market.value_of(j, market.allocation_of(j, outcome));
  }
  return total;
}

VcgSolution vcg_solve(const MarketInstance& market) {
  const int num_outcomes = market.num_outcomes();
  if (num_outcomes < 1) throw InputError("cannot solve an empty market");

  VcgSolution solution;
  solution.optimal_outcome = 0;
  solution.max_welfare = -std::numeric_limits<double>::infinity();
  for (int w = 0; w < num_outcomes; ++w) {
    double val = welfare(market, w);
    if (val > solution.max_welfare) {
      solution.max_welfare = val;
      solution.optimal_outcome = w;
    }
  }

  const int opt = solution.optimal_outcome;
  solution.prices.resize(market.n_agents);
  solution.agent_utilities.resize(market.n_agents);
  solution.without_agent_optimum.resize(market.n_agents);
  solution.without_agent_welfare.resize(market.n_agents);
  double price_sum = 0.0;
  for (int i = 0; i < market.n_agents; ++i) {
    int best_without = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int w = 0; w < num_outcomes; ++w) {
      double val = welfare_without(market, i, w);
      if (val > best_val) {
        best_val = val;
        best_without = w;
      }
    }
    solution.without_agent_optimum[i] = best_without;
    solution.without_agent_welfare[i] = best_val;
    solution.prices[i] = best_val - welfare_without(market, i, opt);
    solution.agent_utilities[i] =
        market.value_of(i, market.allocation_of(i, opt)) - solution.prices[i];
    price_sum += solution.prices[i];
  }
  solution.seller_utility = market.seller_values[opt] + price_sum;
  return solution;
}

WelfareUpperBound max_welfare_upper_bound(const MarketInstance& market) {
  WelfareUpperBound bound;
  if (market.num_outcomes() <= kEnumerationLimit) {
    bound.exact = true;
    bound.value = -std::numeric_limits<double>::infinity();
    for (int w = 0; w < market.num_outcomes(); ++w) {
      bound.value = std::max(bound.value, welfare(market, w));
    }
  } else {
    bound.exact = false;
    double max_seller = 0.0;
    for (double v : market.seller_values) max_seller = std::max(max_seller, v);
    bound.value = max_seller + market.n_agents;
  }
  return bound;
}

}  // namespace vcglearn
