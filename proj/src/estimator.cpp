#include "vcglearn/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vcglearn {

double beta_t(std::int64_t t_minus_qk_plus_1, int num_allocations) {
  if (t_minus_qk_plus_1 < 1) {
    throw PreconditionError("beta_t requires t - qK + 1 >= 1");
  }
  if (num_allocations < 1) {
    throw InputError("beta_t requires at least one allocation");
  }
  return std::sqrt(5.0 * std::log(static_cast<double>(t_minus_qk_plus_1)) +
                   2.0 * std::log(static_cast<double>(num_allocations)));
}

AgentStats::AgentStats(int num_allocations)
    : counts_(num_allocations, 0),
      sums_(num_allocations, 0.0),
      retained_this_bracket_(num_allocations, false) {
  if (num_allocations < 1) throw InputError("AgentStats requires at least one allocation");
}

void AgentStats::check_allocation(int allocation) const {
  if (allocation < 0 || allocation >= static_cast<int>(counts_.size())) {
    throw InputError("allocation index " + std::to_string(allocation) + " out of range");
  }
}

void AgentStats::set_bid(const std::vector<double>& bid) {
  if (locked_) throw UsageError("bids may only be submitted before the first round");
  if (bid.size() != counts_.size()) {
    throw InputError("bid table must cover every allocation");
  }
  for (double b : bid) {
    if (!std::isfinite(b) || b < 0.0 || b > 1.0) {
      throw InputError("bid values must lie in [0, 1]");
    }
  }
  by_bids_ = true;
  bid_ = bid;
}

void AgentStats::begin_bracket() {
  std::fill(retained_this_bracket_.begin(), retained_this_bracket_.end(), false);
}

void AgentStats::record_reward(const EstimatorConfig& config, int allocation, double reported,
                               Phase phase) {
  if (by_bids_) throw UsageError("cannot record rewards for an agent participating by bids");
  check_allocation(allocation);
  if (!std::isfinite(reported)) throw InputError("reported reward must be finite");

  bool retain = false;
  if (config.est_method == EstMethod::Opt) {
    retain = true;
  } else if (phase == Phase::Explore && !retained_this_bracket_[allocation]) {
    retain = true;
    retained_this_bracket_[allocation] = true;
  }
  if (retain) {
    counts_[allocation] += 1;
    sums_[allocation] += reported;
  }
}

ConfidenceTriple AgentStats::confidence(const EstimatorConfig& config, int allocation,
                                        std::int64_t t, std::int64_t q) const {
  check_allocation(allocation);
  if (by_bids_) {
    double b = bid_[allocation];
    return {b, b, b};
  }
  std::int64_t n = counts_[allocation];
  if (n < 1) {
    throw PreconditionError("confidence queried before any sample for allocation " +
                            std::to_string(allocation));
  }
  double beta = beta_t(t - q * config.explore_rounds + 1, config.num_allocations);
  double mean = std::clamp(sums_[allocation] / static_cast<double>(n), 0.0, 1.0);
  double half_width = config.sigma * beta / std::sqrt(static_cast<double>(n));
  return {mean - half_width, mean, mean + half_width};
}

}  // namespace vcglearn
