#pragma once

#include <cstdint>

#include "vcglearn/market.hpp"

namespace vcglearn {

/// The adversarial instance pair behind the minimax lower bound. Both share
/// outcome 0 (everyone at 1/2), the distractor outcomes above n (everyone
/// at 0.2), and each agent j's own zero at outcome j; they differ by
/// exactly +delta on outcomes 1..n for the non-owning agents.
struct LowerBoundPair {
  MarketInstance theta1;
  MarketInstance theta2;
  double delta = 0.0;
};

/// Requires n >= 2, num_outcomes >= n + 1, T > 128 n. Outcomes double as
/// allocations (identity maps), rewards are unit-variance Gaussian, and
/// delta = (16 / (T (n-1)^2))^{1/3}.
LowerBoundPair lower_bound_pair(int n_agents, int num_outcomes, std::int64_t horizon);

/// The ten-agent single-item market of the simulation study: values on a
/// descending grid from 0.9 (agent 1) to 0.2 (agent 10), variance-0.5
/// Gaussian rewards for the item, a non-stochastic zero for going without,
/// and K = 10.
MarketInstance single_item_benchmark();

enum class InstanceStructure { Product, SingleSlot };

/// Seeded random market. Product: outcomes are all allocation tuples
/// (|Omega| = |S|^n, K = |S|). SingleSlot: one item, |S| = 2, outcomes
/// assign it to one agent each (K = n, needs n >= 2). Agent values are
/// uniform on [0, 1]; seller values are zero; sigma = 1.
MarketInstance random_instance(int n_agents, int num_allocations, InstanceStructure structure,
                               std::uint64_t seed);

}  // namespace vcglearn
