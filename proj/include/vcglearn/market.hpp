#pragma once

#include <string>
#include <vector>

#include "vcglearn/errors.hpp"

namespace vcglearn {

/// A static market: n agents, a finite outcome set, a finite allocation set,
/// per-agent maps from outcomes to allocations, bounded agent values,
/// unrestricted seller values, and the reward-noise scale.
///
/// Instances are immutable after construction and safe to share across
/// threads; every operation on them is pure.
struct MarketInstance {
  int n_agents = 0;
  std::vector<std::string> outcome_names;
  std::vector<std::string> allocation_names;
  // agent_map[i][w] is the allocation index agent i receives under outcome w.
  std::vector<std::vector<int>> agent_map;
  // agent_values[i][s] in [0, 1].
  std::vector<std::vector<double>> agent_values;
  // seller_values[w]; may be negative (costs).
  std::vector<double> seller_values;
  // Sub-Gaussian scale of reward noise.
  double noise_sigma = 0.0;
  // Declared length of one explore phase; must admit a covering schedule.
  int explore_rounds_K = 0;
  // Optional flags: deterministic[i][s] marks rewards that realise exactly
  // as agent_values[i][s] with no noise.
  std::vector<std::vector<bool>> deterministic;

  int num_outcomes() const { return static_cast<int>(outcome_names.size()); }
  int num_allocations() const { return static_cast<int>(allocation_names.size()); }
  int allocation_of(int agent, int outcome) const { return agent_map[agent][outcome]; }
  double value_of(int agent, int allocation) const { return agent_values[agent][allocation]; }
  bool is_deterministic(int agent, int allocation) const {
    return !deterministic.empty() && deterministic[agent][allocation];
  }

  void check_agent(int agent) const;
  void check_outcome(int outcome) const;
  void check_allocation(int allocation) const;

  // Validates shapes, ranges, map totality, and explore-schedule feasibility.
  // Throws InputError / InstanceError.
  void validate() const;
};

/// Full-information VCG reference: the welfare-maximising outcome, the
/// externality prices, and the resulting utilities.
struct VcgSolution {
  int optimal_outcome = 0;
  std::vector<double> prices;            // p_i*
  std::vector<double> agent_utilities;   // u_i* = v_i(phi_i(w*)) - p_i*
  double seller_utility = 0.0;           // u_0* = v_0(w*) + sum_i p_i*
  double max_welfare = 0.0;              // Val(w*)
  std::vector<int> without_agent_optimum;       // argmax_w Val_{-i}(w)
  std::vector<double> without_agent_welfare;    // Val_{-i} at that optimum
};

/// Val(w) = v_0(w) + sum_i v_i(phi_i(w)).
double welfare(const MarketInstance& market, int outcome);

/// Val_{-i}(w) = v_0(w) + sum_{j != i} v_j(phi_j(w)).
double welfare_without(const MarketInstance& market, int agent, int outcome);

/// Exact VCG oracle by enumeration over outcomes. Argmax ties break to the
/// lowest outcome index.
VcgSolution vcg_solve(const MarketInstance& market);

struct WelfareUpperBound {
  double value = 0.0;
  bool exact = false;  // true when obtained by enumerating the outcome set
};

/// Vmax: exact max_w Val(w) when the outcome set is small enough to
/// enumerate, otherwise the loose bound max(0, max_w v_0(w)) + n.
WelfareUpperBound max_welfare_upper_bound(const MarketInstance& market);

}  // namespace vcglearn
