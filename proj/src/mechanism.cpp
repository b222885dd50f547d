#include "vcglearn/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vcglearn {

std::pair<std::int64_t, std::int64_t> bracket_lengths(std::int64_t q, std::int64_t K) {
  if (q < 1) throw InputError("bracket index must be >= 1");
  if (K < 1) throw InputError("explore length K must be >= 1");
  std::int64_t root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(q))));
  std::int64_t exploit;
  if (root * root == q) {
    exploit = (5 * K * root) / 6;  // exact when sqrt(q) is integral
  } else {
    exploit = static_cast<std::int64_t>(
        std::floor(5.0 * static_cast<double>(K) * std::sqrt(static_cast<double>(q)) / 6.0));
  }
  return {K, exploit};
}

BracketPosition phase_of_round(std::int64_t t, std::int64_t K) {
  if (t < 1) throw InputError("round index must be >= 1");
  std::int64_t completed = 0;
  for (std::int64_t q = 1;; ++q) {
    auto [explore_len, exploit_len] = bracket_lengths(q, K);
    if (t <= completed + explore_len) {
      return {t, q, Phase::Explore, t - completed - 1};
    }
    if (t <= completed + explore_len + exploit_len) {
      return {t, q, Phase::Exploit, t - completed - explore_len - 1};
    }
    completed += explore_len + exploit_len;
  }
}

BracketClock::BracketClock(std::int64_t K) : K_(K) {
  if (K < 1) throw InputError("explore length K must be >= 1");
  exploit_len_ = bracket_lengths(1, K).second;
}

BracketPosition BracketClock::advance() {
  ++t_;
  ++offset_;
  if (phase_ == Phase::Explore && offset_ >= K_) {
    if (exploit_len_ > 0) {
      phase_ = Phase::Exploit;
      offset_ = 0;
    } else {
      ++q_;
      exploit_len_ = bracket_lengths(q_, K_).second;
      offset_ = 0;  // next bracket's explore phase (empty exploit phase)
    }
  } else if (phase_ == Phase::Exploit && offset_ >= exploit_len_) {
    ++q_;
    exploit_len_ = bracket_lengths(q_, K_).second;
    phase_ = Phase::Explore;
    offset_ = 0;
  }
  return {t_, q_, phase_, offset_};
}

std::vector<int> build_explore_schedule(const MarketInstance& market) {
  const int n = market.n_agents;
  const int num_outcomes = market.num_outcomes();
  const int num_allocations = market.num_allocations();
  const std::int64_t K = market.explore_rounds_K;

  std::vector<bool> covered(static_cast<std::size_t>(n) * num_allocations, false);
  std::int64_t uncovered = static_cast<std::int64_t>(n) * num_allocations;
  auto pair_index = [num_allocations](int agent, int allocation) {
    return static_cast<std::size_t>(agent) * num_allocations + allocation;
  };

  std::vector<int> schedule;
  schedule.reserve(static_cast<std::size_t>(K));
  while (uncovered > 0) {
    if (static_cast<std::int64_t>(schedule.size()) >= K) {
      throw InstanceError("explore_rounds_K=" + std::to_string(K) +
                          " rounds cannot cover every (agent, allocation) pair");
    }
    int best_outcome = -1;
    int best_gain = 0;
    for (int w = 0; w < num_outcomes; ++w) {
      int gain = 0;
      for (int i = 0; i < n; ++i) {
        if (!covered[pair_index(i, market.allocation_of(i, w))]) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_outcome = w;
      }
    }
    if (best_outcome < 0) {
      throw InstanceError("some (agent, allocation) pair is unreachable by any outcome");
    }
    for (int i = 0; i < n; ++i) {
      covered[pair_index(i, market.allocation_of(i, best_outcome))] = true;
    }
    uncovered -= best_gain;
    schedule.push_back(best_outcome);
  }
  while (static_cast<std::int64_t>(schedule.size()) < K) schedule.push_back(0);
  return schedule;
}

namespace {

EstimatorConfig estimator_config_for(const MarketInstance& market, EstMethod est) {
  return EstimatorConfig{est, market.noise_sigma, market.num_allocations(),
                         market.explore_rounds_K};
}

// Confidence triples for every (agent, allocation) at round t of bracket q.
std::vector<std::vector<ConfidenceTriple>> all_confidences(const std::vector<AgentStats>& stats,
                                                           const MarketInstance& market,
                                                           std::int64_t t, std::int64_t q) {
  EstimatorConfig config = estimator_config_for(market, EstMethod::Etc);  // est unused here
  std::vector<std::vector<ConfidenceTriple>> triples(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    triples[i].resize(market.num_allocations());
    for (int s = 0; s < market.num_allocations(); ++s) {
      triples[i][s] = stats[i].confidence(config, s, t, q);
    }
  }
  return triples;
}

void require_exploit_round(const MarketInstance& market, std::int64_t t, const char* op) {
  if (phase_of_round(t, market.explore_rounds_K).phase != Phase::Exploit) {
    throw UsageError(std::string(op) + " is only defined on exploit rounds");
  }
}

}  // namespace

int select_outcome(const std::vector<AgentStats>& stats, const MarketInstance& market,
                   std::int64_t t, std::int64_t q) {
  require_exploit_round(market, t, "select_outcome");
  auto triples = all_confidences(stats, market, t, q);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int w = 0; w < market.num_outcomes(); ++w) {
    double value = market.seller_values[w];
    for (int i = 0; i < market.n_agents; ++i) {
      value += triples[i][market.allocation_of(i, w)].ucb;
    }
    if (value > best_value) {
      best_value = value;
      best = w;
    }
  }
  return best;
}

PricingResult prices_from_tables(const MarketInstance& market,
                                 const std::vector<std::vector<double>>& f_table,
                                 const std::vector<std::vector<double>>& g_table, int chosen) {
  market.check_outcome(chosen);
  const int n = market.n_agents;
  PricingResult result;
  result.prices.resize(n);
  result.max_f_without.assign(n, -std::numeric_limits<double>::infinity());
  result.g_without_chosen.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int w = 0; w < market.num_outcomes(); ++w) {
      double f_without = market.seller_values[w];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        f_without += f_table[j][market.allocation_of(j, w)];
      }
      result.max_f_without[i] = std::max(result.max_f_without[i], f_without);
    }
    double g_without = market.seller_values[chosen];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      g_without += g_table[j][market.allocation_of(j, chosen)];
    }
    result.g_without_chosen[i] = g_without;
    result.prices[i] = result.max_f_without[i] - g_without;
  }
  return result;
}

std::vector<double> compute_prices(const std::vector<AgentStats>& stats,
                                   const MarketInstance& market, int chosen, std::int64_t t,
                                   std::int64_t q, const MechanismConfig& config) {
  require_exploit_round(market, t, "compute_prices");
  auto triples = all_confidences(stats, market, t, q);
  const int n = market.n_agents;
  std::vector<std::vector<double>> f_table(n), g_table(n);
  for (int i = 0; i < n; ++i) {
    f_table[i].resize(market.num_allocations());
    g_table[i].resize(market.num_allocations());
    for (int s = 0; s < market.num_allocations(); ++s) {
      if (config.price_method == PriceMethod::Age) {
        f_table[i][s] = triples[i][s].lcb;
        g_table[i][s] = triples[i][s].ucb;
      } else {
        f_table[i][s] = triples[i][s].ucb;
        g_table[i][s] = triples[i][s].lcb;
      }
    }
  }
  return prices_from_tables(market, f_table, g_table, chosen).prices;
}

MechanismState::MechanismState(const MarketInstance& market, const MechanismConfig& config)
    : market_(&market),
      config_(config),
      est_config_(estimator_config_for(market, config.est_method)),
      schedule_(build_explore_schedule(market)),
      clock_(market.explore_rounds_K) {
  stats_.reserve(market.n_agents);
  for (int i = 0; i < market.n_agents; ++i) {
    stats_.emplace_back(market.num_allocations());
  }
}

void MechanismState::collect_bids(const std::vector<AgentPolicy>& policies) {
  if (bids_collected_) throw UsageError("bids were already collected for this run");
  if (static_cast<int>(policies.size()) != market_->n_agents) {
    throw InputError("one policy per agent is required");
  }
  for (int i = 0; i < market_->n_agents; ++i) {
    const AgentPolicy& policy = policies[i];
    if (policy.kind == PolicyKind::TruthfulBids) {
      stats_[i].set_bid(market_->agent_values[i]);
    } else if (policy.kind == PolicyKind::FalseBids) {
      stats_[i].set_bid(policy.bid);
    }
    stats_[i].lock_bids();
  }
  bids_collected_ = true;
}

RoundRecord MechanismState::step(const std::vector<AgentPolicy>& policies, RewardSampler& sampler,
                                 std::vector<std::mt19937_64>& policy_rngs,
                                 std::vector<AgentHistory>* histories) {
  if (!bids_collected_) throw UsageError("collect_bids must run before the first round");
  const int n = market_->n_agents;
  BracketPosition pos = clock_.advance();
  t_ = pos.round_t;

  RoundRecord record;
  record.round_t = pos.round_t;
  record.bracket_q = pos.bracket_q;
  record.phase = pos.phase;
  record.allocations.resize(n);
  record.reported.resize(n);

  if (pos.phase == Phase::Explore) {
    if (pos.offset == 0) {
      for (auto& stats : stats_) stats.begin_bracket();
    }
    record.outcome = schedule_[static_cast<std::size_t>(pos.offset)];
    record.prices.assign(n, 0.0);
  } else {
    auto triples = all_confidences(stats_, *market_, pos.round_t, pos.bracket_q);
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int w = 0; w < market_->num_outcomes(); ++w) {
      double value = market_->seller_values[w];
      for (int i = 0; i < n; ++i) {
        value += triples[i][market_->allocation_of(i, w)].ucb;
      }
      if (value > best_value) {
        best_value = value;
        best = w;
      }
    }
    record.outcome = best;

    const bool age = config_.price_method == PriceMethod::Age;
    std::vector<std::vector<double>> f_table(n), g_table(n);
    for (int i = 0; i < n; ++i) {
      f_table[i].resize(market_->num_allocations());
      g_table[i].resize(market_->num_allocations());
      for (int s = 0; s < market_->num_allocations(); ++s) {
        f_table[i][s] = age ? triples[i][s].lcb : triples[i][s].ucb;
        g_table[i][s] = age ? triples[i][s].ucb : triples[i][s].lcb;
      }
    }
    PricingResult pricing = prices_from_tables(*market_, f_table, g_table, record.outcome);
    record.prices = pricing.prices;

    // Numerical check of the exploit-round utility identity:
    // u_it = v_i - g_i(phi_i(w_t)) + G_t(w_t) - max_w F_{-i}(w).
    double g_full = market_->seller_values[record.outcome];
    for (int j = 0; j < n; ++j) {
      g_full += g_table[j][market_->allocation_of(j, record.outcome)];
    }
    for (int i = 0; i < n; ++i) {
      int alloc = market_->allocation_of(i, record.outcome);
      double utility = market_->value_of(i, alloc) - record.prices[i];
      double decomposed =
          market_->value_of(i, alloc) - g_table[i][alloc] + g_full - pricing.max_f_without[i];
      record.utility_identity_gap =
          std::max(record.utility_identity_gap, std::abs(utility - decomposed));
    }
  }

  record.realized.reserve(n);
  for (int i = 0; i < n; ++i) {
    record.allocations[i] = market_->allocation_of(i, record.outcome);
  }
  for (int i = 0; i < n; ++i) {
    double realized = sampler.realize(*market_, i, record.allocations[i], pos.phase);
    record.realized.push_back(realized);
    const AgentPolicy& policy = policies[i];
    std::optional<double> reported;
    if (!policy.participates_by_bids()) {
      static const AgentHistory kEmptyHistory;
      const AgentHistory& history = histories ? (*histories)[i] : kEmptyHistory;
      reported = report(policy, history, record.allocations[i], record.prices[i], realized,
                        policy_rngs[i]);
      record.reported[i] = reported;
      if (reported.has_value()) {
        stats_[i].record_reward(est_config_, record.allocations[i], *reported, pos.phase);
      }
    }
    if (histories) {
      (*histories)[i].push_back(
          AgentHistoryEntry{record.allocations[i], record.prices[i], realized, reported});
    }
  }
  return record;
}

}  // namespace vcglearn
