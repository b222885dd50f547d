#include "vcglearn/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace vcglearn {

double vcg_regret(int n_agents, double welfare_regret, double agent_sum_regret,
                  double seller_regret) {
  return std::max({n_agents * welfare_regret, agent_sum_regret, seller_regret});
}

RegretLedger::RegretLedger(const MarketInstance& market, VcgSolution reference)
    : market_(&market), reference_(std::move(reference)) {
  outcome_welfare_.resize(market.num_outcomes());
  for (int w = 0; w < market.num_outcomes(); ++w) {
    outcome_welfare_[w] = welfare(market, w);
  }
  sum_reference_without_ = 0.0;
  for (double val : reference_.without_agent_welfare) sum_reference_without_ += val;
  agent_regret_.assign(market.n_agents, 0.0L);
}

void RegretLedger::update(const RoundRecord& record) {
  const MarketInstance& market = *market_;
  const int n = market.n_agents;
  const int outcome = record.outcome;
  const double round_welfare = outcome_welfare_[outcome];

  rounds_ += 1;
  welfare_regret_ += outcome_welfare_[reference_.optimal_outcome] - round_welfare;

  // The price sum uses plain double accumulation in agent order, the same
  // shape as vcg_solve's seller utility, so all-bidder runs cancel exactly.
  double price_sum = 0.0;
  long double agent_round_sum = 0.0L;
  long double h_round = 0.0L;
  double realized_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double value = market.value_of(i, record.allocations[i]);
    const double price = record.prices[i];
    const double utility = value - price;
    const double regret = reference_.agent_utilities[i] - utility;
    agent_regret_[i] += regret;
    agent_round_sum += regret;
    price_sum += price;
    h_round += price + (round_welfare - value);  // Val_{-i}(w_t) = Val(w_t) - v_i
    realized_sum += record.realized[i];
  }
  agent_sum_regret_ += agent_round_sum;
  const double seller_utility = market.seller_values[outcome] + price_sum;
  seller_regret_ += reference_.seller_utility - seller_utility;
  h_numerator_ += h_round;
  realized_regret_ += outcome_welfare_[reference_.optimal_outcome] -
                      (market.seller_values[outcome] + realized_sum);
}

double RegretLedger::agent_regret(int agent) const {
  market_->check_agent(agent);
  return static_cast<double>(agent_regret_[agent]);
}

double RegretLedger::vcg_regret() const {
  return vcglearn::vcg_regret(market_->n_agents, welfare_regret(), agent_sum_regret(),
                              seller_regret());
}

double RegretLedger::h_T() const {
  if (rounds_ == 0) return 0.0;
  return static_cast<double>(h_numerator_ / static_cast<long double>(rounds_));
}

double RegretLedger::w_T() const { return h_T() - sum_reference_without_; }

std::pair<double, double> RegretLedger::decomposition() const {
  const long double t = static_cast<long double>(rounds_);
  const long double t_w = h_numerator_ - t * static_cast<long double>(sum_reference_without_);
  const long double n = static_cast<long double>(market_->n_agents);
  return {static_cast<double>(n * welfare_regret_ + t_w),
          static_cast<double>(-(n - 1.0L) * welfare_regret_ - t_w)};
}

double vali_expl(const MarketInstance& market, int agent, const VcgSolution& solution) {
  market.check_agent(agent);
  double min_value = market.agent_values[agent][0];
  for (double v : market.agent_values[agent]) min_value = std::min(min_value, v);
  return std::max(solution.agent_utilities[agent] - min_value, 0.0);
}

namespace {

struct BoundTerms {
  double sqrt_log;   // sqrt(ln(|S| T))
  double kt;         // K^{1/3} T^{2/3}
  double sqrt_st;    // sqrt(|S| T ln(|S| T))
};

BoundTerms bound_terms(const BoundParams& p) {
  const double st = static_cast<double>(p.num_allocations) * static_cast<double>(p.horizon);
  BoundTerms terms;
  terms.sqrt_log = std::sqrt(std::log(st));
  terms.kt = std::cbrt(static_cast<double>(p.explore_rounds)) *
             std::pow(static_cast<double>(p.horizon), 2.0 / 3.0);
  terms.sqrt_st = std::sqrt(st * std::log(st));
  return terms;
}

}  // namespace

double theorem_bound(const std::string& theorem, const BoundParams& p) {
  if (p.n_agents < 1 || p.num_allocations < 1 || p.explore_rounds < 1) {
    throw InputError("bound parameters must describe a non-empty market");
  }
  if (p.horizon <= 2 * p.explore_rounds) {
    throw PreconditionError("theorem bounds require T > 2K");
  }
  const BoundTerms terms = bound_terms(p);
  const double n = static_cast<double>(p.n_agents);
  const double sigma = p.sigma;
  const double vmax = p.vmax;
  const double kappa = p.participation == Participation::Rewards ? 1.0 : 0.0;
  const bool etc = p.est_method == EstMethod::Etc;
  const bool age = p.price_method == PriceMethod::Age;

  if (theorem == "truthfulness") {
    if (etc) {
      if (p.participation == Participation::Bids) return 0.0;  // U^pi - U <= 0 a.s.
      return 10.0 * sigma * terms.sqrt_log * terms.kt + 4.0;
    }
    return 10.0 * sigma * (6.0 * n + 2.0) * terms.sqrt_log * terms.kt + 12.0 * n;
  }
  if (theorem == "ir") {
    if (etc) {
      if (age) {
        if (p.participation == Participation::Bids) return 0.0;  // U_iT >= 0 a.s.
        return 10.0 * sigma * terms.sqrt_log * terms.kt + 4.0;
      }
      return 10.0 * sigma * n * terms.sqrt_log * terms.kt + 4.0;
    }
    if (age) {
      if (p.participation == Participation::Bids) return 0.0;  // U_iT >= 0 a.s.
      return 9.0 * sigma * terms.sqrt_st + 6.0;
    }
    return 9.0 * sigma * n * terms.sqrt_st + 6.0;
  }
  if (theorem == "vcg-regret") {
    if (etc) {
      return (3.0 * vmax * (n + 3.0) + 10.0 * (5.0 * n * n + n) * terms.sqrt_log) * terms.kt +
             4.0 * vmax * (n * n + 3.0 * n);
    }
    return 9.0 * sigma * (3.0 * n * n + n) * terms.sqrt_st +
           (3.0 * vmax * (n + 3.0) + 20.0 * sigma * n * n * terms.sqrt_log) * terms.kt +
           6.0 * vmax * (n * n + 3.0 * n);
  }
  if (theorem == "welfare-regret") {
    if (etc) {
      return (3.0 * vmax + 10.0 * n * terms.sqrt_log) * terms.kt + 4.0 * vmax * n;
    }
    return 9.0 * n * terms.sqrt_st + 3.0 * vmax * terms.kt + 6.0 * vmax * n;
  }
  if (theorem == "agent-regret") {
    if (etc) {
      if (age) {
        return (3.0 * p.vali_expl + 10.0 * sigma * kappa * terms.sqrt_log) * terms.kt + 4.0 * n;
      }
      return (3.0 * p.vali_expl + 20.0 * sigma * n * terms.sqrt_log) * terms.kt + 4.0 * n;
    }
    if (age) {
      return 9.0 * sigma * kappa * terms.sqrt_st + 3.0 * p.vali_expl * terms.kt + 6.0 * n;
    }
    return 9.0 * sigma * n * terms.sqrt_st +
           (3.0 * p.vali_expl + 20.0 * sigma * n * terms.sqrt_log) * terms.kt + 6.0 * n;
  }
  if (theorem == "seller-regret") {
    if (etc) {
      if (age) {
        return (3.0 * vmax + 20.0 * sigma * n * n * terms.sqrt_log) * terms.kt + 4.0 * vmax * n;
      }
      return 3.0 * vmax * terms.kt + 4.0 * vmax * n;
    }
    if (age) {
      return 9.0 * sigma * n * n * terms.sqrt_st +
             (3.0 * vmax + 10.0 * sigma * n * n * terms.sqrt_log) * terms.kt + 6.0 * vmax * n;
    }
    return 3.0 * vmax * terms.kt + 6.0 * vmax * n;
  }
  throw UsageError("unknown theorem identifier: " + theorem);
}

double lower_bound_value(int n_agents, std::int64_t horizon) {
  if (n_agents < 2) throw PreconditionError("the lower bound requires n >= 2");
  if (horizon < 128LL * n_agents) {
    throw PreconditionError("the lower bound requires T >= 128 n");
  }
  return std::pow(static_cast<double>(n_agents - 1), 4.0 / 3.0) *
         std::pow(static_cast<double>(horizon), 2.0 / 3.0) / 50.0;
}

}  // namespace vcglearn
