#include "vcglearn/agents.hpp"

#include <cmath>

namespace vcglearn {

AgentPolicy AgentPolicy::truthful_rewards() { return AgentPolicy{}; }

AgentPolicy AgentPolicy::truthful_bids() {
  AgentPolicy p;
  p.kind = PolicyKind::TruthfulBids;
  return p;
}

AgentPolicy AgentPolicy::false_bids(std::vector<double> bid) {
  AgentPolicy p;
  p.kind = PolicyKind::FalseBids;
  p.bid = std::move(bid);
  return p;
}

AgentPolicy AgentPolicy::misreport_affine(std::vector<double> scale, std::vector<double> shift) {
  AgentPolicy p;
  p.kind = PolicyKind::StationaryMisreport;
  p.report_scale = std::move(scale);
  p.report_shift = std::move(shift);
  return p;
}

AgentPolicy AgentPolicy::misreport_fixed(std::vector<double> mean, std::vector<double> sd) {
  AgentPolicy p;
  p.kind = PolicyKind::StationaryMisreport;
  p.fixed_mean = std::move(mean);
  p.fixed_sd = std::move(sd);
  return p;
}

AgentPolicy AgentPolicy::scripted_policy(ScriptedReport fn) {
  AgentPolicy p;
  p.kind = PolicyKind::Scripted;
  p.scripted = std::move(fn);
  return p;
}

double realize_reward(const MarketInstance& market, int agent, int allocation,
                      std::mt19937_64& rng) {
  market.check_agent(agent);
  market.check_allocation(allocation);
  double mean = market.value_of(agent, allocation);
  if (market.is_deterministic(agent, allocation) || market.noise_sigma == 0.0) {
    return mean;
  }
  std::normal_distribution<double> noise(mean, market.noise_sigma);
  return noise(rng);
}

namespace {

double at_or(const std::vector<double>& table, int index, double fallback) {
  if (table.empty()) return fallback;
  return table[static_cast<std::size_t>(index)];
}

}  // namespace

std::optional<double> report(const AgentPolicy& policy, const AgentHistory& history,
                             int allocation, double price, double realized,
                             std::mt19937_64& rng) {
  switch (policy.kind) {
    case PolicyKind::TruthfulBids:
    case PolicyKind::FalseBids:
      return std::nullopt;
    case PolicyKind::TruthfulRewards:
      return realized;
    case PolicyKind::StationaryMisreport: {
      if (!policy.fixed_mean.empty()) {
        double sd = at_or(policy.fixed_sd, allocation, 0.0);
        double mean = policy.fixed_mean[static_cast<std::size_t>(allocation)];
        if (sd == 0.0) return mean;
        std::normal_distribution<double> dist(mean, sd);
        return dist(rng);
      }
      double scale = at_or(policy.report_scale, allocation, 1.0);
      double shift = at_or(policy.report_shift, allocation, 0.0);
      return scale * realized + shift;
    }
    case PolicyKind::Scripted:
      return policy.scripted(history, allocation, price, realized, rng);
  }
  return std::nullopt;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over the mixed words.
  std::uint64_t x = seed;
  for (std::uint64_t word : {a + 0x9e3779b97f4a7c15ULL, b + 0xbf58476d1ce4e5b9ULL}) {
    x += word;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x = x ^ (x >> 31);
  }
  return x;
}

RewardSampler::RewardSampler(const MarketInstance& market, std::uint64_t seed)
    : num_allocations_(market.num_allocations()) {
  streams_.reserve(static_cast<std::size_t>(market.n_agents) * num_allocations_ * 2);
  for (int i = 0; i < market.n_agents; ++i) {
    for (int s = 0; s < num_allocations_; ++s) {
      for (int phase = 0; phase < 2; ++phase) {
        streams_.emplace_back(split_seed(seed, static_cast<std::uint64_t>(i),
                                         static_cast<std::uint64_t>(2 * s + phase)));
      }
    }
  }
}

double RewardSampler::realize(const MarketInstance& market, int agent, int allocation,
                              Phase phase) {
  market.check_agent(agent);
  market.check_allocation(allocation);
  std::size_t index =
      (static_cast<std::size_t>(agent) * num_allocations_ + allocation) * 2 +
      (phase == Phase::Exploit ? 1 : 0);
  return realize_reward(market, agent, allocation, streams_[index]);
}

}  // namespace vcglearn
