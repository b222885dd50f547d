#pragma once

#include <cstdint>
#include <vector>

#include "vcglearn/errors.hpp"

namespace vcglearn {

enum class EstMethod { Etc, Opt };
enum class Phase { Explore, Exploit };

struct EstimatorConfig {
  EstMethod est_method = EstMethod::Etc;
  double sigma = 0.0;
  int num_allocations = 1;
  // Explore-phase length; enters the width multiplier via t - qK + 1.
  std::int64_t explore_rounds = 1;
};

/// beta_t = sqrt(5 ln(t - qK + 1) + 2 ln |S|), the confidence-width
/// multiplier at round t of bracket q. `t_minus_qk_plus_1` must be >= 1.
double beta_t(std::int64_t t_minus_qk_plus_1, int num_allocations);

struct ConfidenceTriple {
  double lcb = 0.0;
  double mean = 0.0;
  double ucb = 0.0;
};

/// Per-agent reward statistics. An agent participates either by rewards
/// (per-allocation counts and sums feed the confidence bounds) or by a
/// one-shot bid submitted before round 1 (degenerate bounds equal to the
/// bid everywhere, counts frozen at zero).
class AgentStats {
 public:
  explicit AgentStats(int num_allocations);

  bool by_bids() const { return by_bids_; }
  std::int64_t count(int allocation) const { return counts_[allocation]; }
  double sum(int allocation) const { return sums_[allocation]; }
  const std::vector<double>& bid() const { return bid_; }

  /// Switches this agent to bid participation. Only allowed before the run
  /// starts (lock_bids()); bid values must lie in [0, 1].
  void set_bid(const std::vector<double>& bid);

  /// Called by the run loop at round 1; set_bid afterwards is a UsageError.
  void lock_bids() { locked_ = true; }

  /// Called at the start of each bracket's explore phase (ETC retention is
  /// once per allocation per bracket).
  void begin_bracket();

  /// Feeds one reported reward. Under ETC only the first explore-phase
  /// report per allocation per bracket is retained; under OPT every report
  /// is retained. Reports for bid participants are a UsageError; non-finite
  /// reports are an InputError.
  void record_reward(const EstimatorConfig& config, int allocation, double reported, Phase phase);

  /// (lcb, mean, ucb) for one allocation at round t of bracket q. The mean
  /// is clipped to [0, 1]; the bounds are mean -/+ sigma * beta_t / sqrt(N)
  /// and are not clipped. Bid participants return (b, b, b).
  ConfidenceTriple confidence(const EstimatorConfig& config, int allocation, std::int64_t t,
                              std::int64_t q) const;

 private:
  void check_allocation(int allocation) const;

  bool by_bids_ = false;
  bool locked_ = false;
  std::vector<double> bid_;
  std::vector<std::int64_t> counts_;
  std::vector<double> sums_;
  std::vector<bool> retained_this_bracket_;
};

}  // namespace vcglearn
