#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vcglearn/agents.hpp"
#include "vcglearn/estimator.hpp"
#include "vcglearn/market.hpp"

namespace vcglearn {

enum class PriceMethod { Age, Sel };  // agent-favourable / seller-favourable

struct MechanismConfig {
  EstMethod est_method = EstMethod::Etc;
  PriceMethod price_method = PriceMethod::Age;
};

struct BracketPosition {
  std::int64_t round_t = 1;   // 1-based global round index
  std::int64_t bracket_q = 1; // 1-based bracket index
  Phase phase = Phase::Explore;
  std::int64_t offset = 0;    // 0-based position within the phase
};

/// (explore_len, exploit_len) of bracket q: (K, floor(5/6 * K * sqrt(q))).
std::pair<std::int64_t, std::int64_t> bracket_lengths(std::int64_t q, std::int64_t K);

/// Locates round t within the bracket schedule for explore length K.
BracketPosition phase_of_round(std::int64_t t, std::int64_t K);

/// Incremental equivalent of phase_of_round for sequential loops.
class BracketClock {
 public:
  explicit BracketClock(std::int64_t K);
  BracketPosition advance();  // position of the next round

 private:
  std::int64_t K_;
  std::int64_t t_ = 0;
  std::int64_t q_ = 1;
  Phase phase_ = Phase::Explore;
  std::int64_t offset_ = -1;
  std::int64_t exploit_len_;
};

/// A length-K outcome sequence that gives every agent every allocation at
/// least once (greedy max-coverage, ties to the lowest outcome index,
/// padded with outcome 0). Reused verbatim for every bracket's explore
/// phase. Throws InstanceError when K rounds cannot cover all pairs.
std::vector<int> build_explore_schedule(const MarketInstance& market);

/// argmax_w [v_0(w) + sum_i ucb_i(phi_i(w))], ties to the lowest index.
/// Exploit rounds only; every rewards agent needs at least one sample per
/// allocation.
int select_outcome(const std::vector<AgentStats>& stats, const MarketInstance& market,
                   std::int64_t t, std::int64_t q);

/// F/G pricing on explicit per-agent tables: p_i = max_w F_{-i}(w) - G_{-i}(chosen)
/// with F_{-i}(w) = v_0(w) + sum_{j != i} f_j(phi_j(w)) and G alike.
struct PricingResult {
  std::vector<double> prices;
  std::vector<double> max_f_without;     // max_w F_{-i}(w)
  std::vector<double> g_without_chosen;  // G_{-i}(chosen)
};
PricingResult prices_from_tables(const MarketInstance& market,
                                 const std::vector<std::vector<double>>& f_table,
                                 const std::vector<std::vector<double>>& g_table, int chosen);

/// Applies the price-method convention (AGE: f=lcb, g=ucb; SEL: f=ucb,
/// g=lcb) to the current confidence bounds. Exploit rounds only; prices may
/// be negative under AGE.
std::vector<double> compute_prices(const std::vector<AgentStats>& stats,
                                   const MarketInstance& market, int chosen, std::int64_t t,
                                   std::int64_t q, const MechanismConfig& config);

/// One simulated round.
struct RoundRecord {
  std::int64_t round_t = 0;
  std::int64_t bracket_q = 0;
  Phase phase = Phase::Explore;
  int outcome = 0;
  std::vector<int> allocations;                 // phi_i(w_t)
  std::vector<double> prices;                   // 0 in explore rounds
  std::vector<double> realized;                 // X_it
  std::vector<std::optional<double>> reported;  // Y_it; absent for bid agents
  // Exploit-round diagnostic: max over agents of the defect in the utility
  // identity u_it = v_i - g_i + G_t(w_t) - max_w F_{-i}(w).
  double utility_identity_gap = 0.0;
};

/// Sequential driver for one run: owns the estimator bank, the explore
/// schedule, and the bracket clock. Confined to a single run; never shared.
class MechanismState {
 public:
  MechanismState(const MarketInstance& market, const MechanismConfig& config);

  /// Submits bids for bid-participating policies, then locks bidding
  /// (Alg. line 1: bids are collected once, before round 1).
  void collect_bids(const std::vector<AgentPolicy>& policies);

  /// Advances one round: explore rounds follow the schedule at price zero
  /// and always collect reports; exploit rounds select the optimistic
  /// outcome and price it. Reports flow through AgentStats retention rules.
  RoundRecord step(const std::vector<AgentPolicy>& policies, RewardSampler& sampler,
                   std::vector<std::mt19937_64>& policy_rngs,
                   std::vector<AgentHistory>* histories);

  const std::vector<AgentStats>& stats() const { return stats_; }
  const EstimatorConfig& estimator_config() const { return est_config_; }
  const std::vector<int>& explore_schedule() const { return schedule_; }
  std::int64_t rounds_completed() const { return t_; }

 private:
  const MarketInstance* market_;
  MechanismConfig config_;
  EstimatorConfig est_config_;
  std::vector<AgentStats> stats_;
  std::vector<int> schedule_;
  BracketClock clock_;
  std::int64_t t_ = 0;
  bool bids_collected_ = false;
};

}  // namespace vcglearn
