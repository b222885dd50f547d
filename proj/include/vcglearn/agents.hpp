#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "vcglearn/estimator.hpp"
#include "vcglearn/market.hpp"

namespace vcglearn {

/// One round of an agent's private view: the allocation she received, the
/// price charged, the reward she realised, and what she reported (if she
/// participates by rewards).
struct AgentHistoryEntry {
  int allocation = 0;
  double price = 0.0;
  double realized = 0.0;
  std::optional<double> reported;
};
using AgentHistory = std::vector<AgentHistoryEntry>;

/// Arbitrary reporting strategy: full private history plus the current
/// (allocation, price, realized reward), and a private randomness source.
/// May return nothing to withhold a report.
using ScriptedReport = std::function<std::optional<double>(
    const AgentHistory& history, int allocation, double price, double realized,
    std::mt19937_64& rng)>;

enum class PolicyKind {
  TruthfulRewards,
  TruthfulBids,
  FalseBids,
  StationaryMisreport,
  Scripted,
};

/// Agent strategy model. Bid variants participate once before round 1 and
/// never report; reward variants produce a report every round. A stationary
/// misreport maps the realised reward through a per-allocation affine
/// transform, or draws from a fixed per-allocation normal distribution —
/// either way the reporting distribution depends only on the allocation and
/// the realised reward, never on the round index.
struct AgentPolicy {
  PolicyKind kind = PolicyKind::TruthfulRewards;
  std::vector<double> bid;           // FalseBids only; in [0, 1]
  std::vector<double> report_scale;  // StationaryMisreport: Y = scale[s] * X + shift[s]
  std::vector<double> report_shift;
  std::vector<double> fixed_mean;    // StationaryMisreport alternative: Y ~ N(mean[s], sd[s]^2)
  std::vector<double> fixed_sd;
  ScriptedReport scripted;

  static AgentPolicy truthful_rewards();
  static AgentPolicy truthful_bids();
  static AgentPolicy false_bids(std::vector<double> bid);
  static AgentPolicy misreport_affine(std::vector<double> scale, std::vector<double> shift = {});
  static AgentPolicy misreport_fixed(std::vector<double> mean, std::vector<double> sd);
  static AgentPolicy scripted_policy(ScriptedReport fn);

  bool participates_by_bids() const {
    return kind == PolicyKind::TruthfulBids || kind == PolicyKind::FalseBids;
  }
};

/// Draws X ~ N(v_i(s), sigma^2) from the given engine, or returns v_i(s)
/// exactly for pairs flagged deterministic (no randomness consumed).
double realize_reward(const MarketInstance& market, int agent, int allocation,
                      std::mt19937_64& rng);

/// Produces the agent's report for one round, or nothing for bid
/// participants / withholding scripted agents.
std::optional<double> report(const AgentPolicy& policy, const AgentHistory& history,
                             int allocation, double price, double realized,
                             std::mt19937_64& rng);

/// Exogenous randomness for one run. Each (agent, allocation, phase) triple
/// owns an independent substream derived from the seed, so the k-th draw
/// for a given triple is the same value in any run sharing the seed, no
/// matter when it happens. Explore rounds therefore realise identical
/// rewards round-for-round across paired runs (the schedule is
/// policy-independent), and exploit rewards pair by draw count per
/// (agent, allocation). This is what makes paired deviation experiments
/// compare strategies under one fixed realisation of the environment.
class RewardSampler {
 public:
  RewardSampler(const MarketInstance& market, std::uint64_t seed);

  double realize(const MarketInstance& market, int agent, int allocation, Phase phase);

 private:
  int num_allocations_;
  std::vector<std::mt19937_64> streams_;
};

/// Deterministic 64-bit stream splitter used to derive substream seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace vcglearn
