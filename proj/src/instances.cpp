#include "vcglearn/instances.hpp"

#include <cmath>
#include <random>
#include <string>

#include "vcglearn/agents.hpp"

namespace vcglearn {

namespace {

MarketInstance lower_bound_base(int n_agents, int num_outcomes, double bump) {
  MarketInstance m;
  m.n_agents = n_agents;
  m.noise_sigma = 1.0;
  m.explore_rounds_K = num_outcomes;  // identity maps: one round per outcome
  m.outcome_names.reserve(num_outcomes);
  for (int w = 0; w < num_outcomes; ++w) {
    m.outcome_names.push_back("outcome_" + std::to_string(w));
  }
  m.allocation_names = m.outcome_names;
  m.agent_map.assign(n_agents, {});
  m.agent_values.assign(n_agents, {});
  for (int i = 0; i < n_agents; ++i) {
    m.agent_map[i].resize(num_outcomes);
    m.agent_values[i].resize(num_outcomes);
    for (int w = 0; w < num_outcomes; ++w) {
      m.agent_map[i][w] = w;
      if (w == 0) {
        m.agent_values[i][w] = 0.5;
      } else if (w <= n_agents) {
        m.agent_values[i][w] = (w == i + 1) ? 0.0 : 0.5 + bump;
      } else {
        m.agent_values[i][w] = 0.2;  // any value below 1/4 works; fixed for determinism
      }
    }
  }
  m.seller_values.assign(num_outcomes, 0.0);
  return m;
}

}  // namespace

LowerBoundPair lower_bound_pair(int n_agents, int num_outcomes, std::int64_t horizon) {
  if (n_agents < 2) throw PreconditionError("lower_bound_pair requires n >= 2");
  if (num_outcomes < n_agents + 1) {
    throw PreconditionError("lower_bound_pair requires at least n + 1 outcomes");
  }
  if (horizon <= 128LL * n_agents) {
    throw PreconditionError("lower_bound_pair requires T > 128 n so that delta < 1/(2(n-1))");
  }
  LowerBoundPair pair;
  pair.delta = std::cbrt(16.0 / (static_cast<double>(horizon) *
                                 static_cast<double>(n_agents - 1) *
                                 static_cast<double>(n_agents - 1)));
  pair.theta1 = lower_bound_base(n_agents, num_outcomes, 0.0);
  pair.theta2 = lower_bound_base(n_agents, num_outcomes, pair.delta);
  pair.theta1.validate();
  pair.theta2.validate();
  return pair;
}

MarketInstance single_item_benchmark() {
  constexpr int kAgents = 10;
  MarketInstance m;
  m.n_agents = kAgents;
  m.allocation_names = {"item", "none"};
  m.noise_sigma = std::sqrt(0.5);  // N(mu, 0.5) read as variance 0.5
  m.explore_rounds_K = kAgents;
  m.agent_map.assign(kAgents, std::vector<int>(kAgents, 1));
  m.agent_values.assign(kAgents, std::vector<double>(2, 0.0));
  m.deterministic.assign(kAgents, std::vector<bool>(2, false));
  for (int k = 0; k < kAgents; ++k) {
    m.outcome_names.push_back("assign_agent_" + std::to_string(k + 1));
    m.agent_map[k][k] = 0;  // agent k receives the item under outcome k
    m.agent_values[k][0] = 0.9 - 0.7 * k / 9.0;
    m.deterministic[k][1] = true;  // going without the item is non-stochastic
  }
  m.seller_values.assign(kAgents, 0.0);
  m.validate();
  return m;
}

MarketInstance random_instance(int n_agents, int num_allocations, InstanceStructure structure,
                               std::uint64_t seed) {
  if (n_agents < 1 || num_allocations < 1) {
    throw InputError("random_instance requires positive sizes");
  }
  MarketInstance m;
  m.n_agents = n_agents;
  m.noise_sigma = 1.0;
  for (int s = 0; s < num_allocations; ++s) {
    m.allocation_names.push_back("alloc_" + std::to_string(s));
  }

  if (structure == InstanceStructure::Product) {
    double size = std::pow(static_cast<double>(num_allocations), n_agents);
    if (size > 1e6) throw InputError("product outcome space too large to materialise");
    int num_outcomes = static_cast<int>(size + 0.5);
    m.explore_rounds_K = num_allocations;
    m.agent_map.assign(n_agents, std::vector<int>(num_outcomes, 0));
    for (int w = 0; w < num_outcomes; ++w) {
      m.outcome_names.push_back("outcome_" + std::to_string(w));
      int digits = w;
      for (int i = 0; i < n_agents; ++i) {
        m.agent_map[i][w] = digits % num_allocations;
        digits /= num_allocations;
      }
    }
  } else {
    if (num_allocations != 2) {
      throw InputError("single-slot structure uses exactly two allocations (slot, none)");
    }
    if (n_agents < 2) {
      throw InputError("single-slot structure needs n >= 2 so everyone can miss the slot");
    }
    m.allocation_names = {"slot", "none"};
    m.explore_rounds_K = n_agents;
    m.agent_map.assign(n_agents, std::vector<int>(n_agents, 1));
    for (int k = 0; k < n_agents; ++k) {
      m.outcome_names.push_back("assign_agent_" + std::to_string(k + 1));
      m.agent_map[k][k] = 0;
    }
  }

  std::mt19937_64 rng(split_seed(seed, 0x52414e44));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  m.agent_values.assign(n_agents, std::vector<double>(num_allocations, 0.0));
  for (int i = 0; i < n_agents; ++i) {
    for (int s = 0; s < num_allocations; ++s) {
      m.agent_values[i][s] = uniform(rng);
    }
  }
  m.seller_values.resize(m.num_outcomes());
  for (double& v : m.seller_values) v = uniform(rng);
  m.validate();
  return m;
}

}  // namespace vcglearn
