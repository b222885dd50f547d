#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vcglearn/agents.hpp"
#include "vcglearn/market.hpp"
#include "vcglearn/mechanism.hpp"
#include "vcglearn/metrics.hpp"

namespace vcglearn {

enum class TraceDetail {
  Minimal,  // final ledger only
  Ledger,   // + per-round regret series
  Full,     // + every RoundRecord
};

struct RunConfig {
  std::int64_t horizon = 1;
  std::uint64_t seed = 0;
  MechanismConfig mechanism;
  // One policy per agent; empty means everyone reports truthfully.
  std::vector<AgentPolicy> policies;
  TraceDetail detail = TraceDetail::Ledger;
};

/// Per-round cumulative series of one run (index t-1 holds the state after
/// round t).
struct RegretSeries {
  std::vector<double> welfare;             // R_T
  std::vector<double> agent_sum;           // R_aT
  std::vector<double> seller;              // R_mechT
  std::vector<double> vcg_max;             // R_maxT
  std::vector<std::vector<double>> agent;  // [i] -> R_iT
  std::vector<double> realized_welfare;    // auxiliary series
};

struct RunTrace {
  RegretLedger ledger;                // final accumulators + VCG reference
  RegretSeries series;                // Ledger/Full detail
  std::vector<RoundRecord> records;   // Full detail
  double max_utility_identity_gap = 0.0;
};

/// One complete simulation. Deterministic in (market, config): the seed
/// derives independent substreams per (agent, allocation) and per agent's
/// reporting policy. The returned trace references `market`, which must
/// outlive it.
RunTrace run(const MarketInstance& market, const RunConfig& config);

struct AggregateSeries {
  std::vector<double> mean;
  std::vector<double> se;  // sample standard deviation / sqrt(#seeds)
};

struct AggregateCurves {
  std::int64_t horizon = 0;
  std::size_t num_seeds = 0;
  AggregateSeries welfare;
  AggregateSeries agent_sum;
  AggregateSeries seller;
  AggregateSeries vcg_max;
  std::vector<AggregateSeries> agent;
};

/// Mean and standard error of every regret series across seeds. The
/// reduction is performed in seed order regardless of `parallelism`, so the
/// output is independent of scheduling.
AggregateCurves run_many(const MarketInstance& market, const RunConfig& base,
                         const std::vector<std::uint64_t>& seeds, int parallelism = 1);

struct DeviationResult {
  std::vector<double> per_seed;  // U^pi_iT - U_iT, pseudo-utilities
  double mean = 0.0;
};

/// Paired comparison of a deviating strategy for one agent against the
/// baseline in `base.policies` (the truthful counterpart), holding every
/// other agent's policy and all exogenous randomness fixed per seed.
/// Rewards pair by draw count per (agent, allocation).
DeviationResult deviation_experiment(const MarketInstance& market, int agent,
                                     const AgentPolicy& deviation, const RunConfig& base,
                                     const std::vector<std::uint64_t>& seeds,
                                     int parallelism = 1);

struct ScalingPoint {
  std::int64_t horizon = 0;
  double mean_vcg_regret = 0.0;
  bool usable = true;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<ScalingPoint> points;
  std::vector<std::string> warnings;
};

/// Ordinary least squares on (ln T, ln x); points with x <= 0 are excluded
/// with a warning.
ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Runs the mechanism at each horizon and fits the log-log slope of the
/// mean VCG regret. Requires at least three horizons, each > 2K.
ScalingFit scaling_experiment(const MarketInstance& market, const RunConfig& base,
                              const std::vector<std::int64_t>& horizons,
                              const std::vector<std::uint64_t>& seeds, int parallelism = 1);

/// Maps an item-indexed job over [0, count) with a fixed-size thread pool;
/// results must be written into index-addressed slots by the job itself.
void parallel_for_indexed(std::size_t count, int parallelism,
                          const std::function<void(std::size_t)>& job);

}  // namespace vcglearn
