#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vcglearn/market.hpp"
#include "vcglearn/mechanism.hpp"

namespace vcglearn {

/// R_maxT = max(n R_T, R_aT, R_mechT).
double vcg_regret(int n_agents, double welfare_regret, double agent_sum_regret,
                  double seller_regret);

/// Running pseudo-regret accumulators for one run, measured against the
/// full-information VCG reference. Instantaneous terms use expected values:
/// r_t = Val(w*) - Val(w_t), r_it = u_i* - (v_i(phi_i(w_t)) - p_it),
/// r_mech,t = u_0* - (v_0(w_t) + sum_i p_it). Accumulation is in extended
/// precision so the exact identities stay testable at 1e-9 over long runs.
class RegretLedger {
 public:
  RegretLedger(const MarketInstance& market, VcgSolution reference);

  void update(const RoundRecord& record);

  std::int64_t rounds() const { return rounds_; }
  double welfare_regret() const { return static_cast<double>(welfare_regret_); }    // R_T
  double agent_regret(int agent) const;                                             // R_iT
  double agent_sum_regret() const { return static_cast<double>(agent_sum_regret_); } // R_aT
  double seller_regret() const { return static_cast<double>(seller_regret_); }      // R_mechT
  double vcg_regret() const;                                                        // R_maxT
  double h_T() const;
  double w_T() const;

  /// (n R_T + T W_T, -(n-1) R_T - T W_T): the closed forms that must equal
  /// (R_aT, R_mechT).
  std::pair<double, double> decomposition() const;

  /// Auxiliary series (never used by acceptance checks): welfare regret
  /// with realised rewards in place of expected agent values.
  double realized_welfare_regret() const { return static_cast<double>(realized_regret_); }

  const VcgSolution& reference() const { return reference_; }
  const MarketInstance& market() const { return *market_; }

 private:
  const MarketInstance* market_;
  VcgSolution reference_;
  std::vector<double> outcome_welfare_;  // cached Val(w)
  double sum_reference_without_;         // sum_i Val_{-i}(w*_{-i})

  std::int64_t rounds_ = 0;
  long double welfare_regret_ = 0.0L;
  long double agent_sum_regret_ = 0.0L;
  long double seller_regret_ = 0.0L;
  long double h_numerator_ = 0.0L;  // sum_t sum_i (p_it + Val_{-i}(w_t))
  long double realized_regret_ = 0.0L;
  std::vector<long double> agent_regret_;
};

/// eps_i = max(u_i* - min_s v_i(s), 0): the worst per-round regret a truthful
/// agent can accrue in an explore round.
double vali_expl(const MarketInstance& market, int agent, const VcgSolution& solution);

enum class Participation { Rewards, Bids };

/// Inputs to the closed-form theorem bounds. `vali_expl` only enters the
/// agent-regret bound; `vmax` only the welfare/seller/VCG-regret bounds.
struct BoundParams {
  int n_agents = 1;
  std::int64_t horizon = 0;       // T
  std::int64_t explore_rounds = 1;  // K
  int num_allocations = 1;        // |S|
  double sigma = 0.0;
  double vmax = 0.0;
  double vali_expl = 0.0;
  EstMethod est_method = EstMethod::Etc;
  PriceMethod price_method = PriceMethod::Age;
  Participation participation = Participation::Rewards;
};

/// Evaluates the stated finite-T bound for one theorem case. All bounds are
/// on non-negative deficit quantities: "truthfulness" bounds E[U^pi - U],
/// "ir" bounds -E[U_iT], and the regret identifiers bound the corresponding
/// expected regret. The log factor is standardised as sqrt(ln(|S| T)).
/// Identifiers: truthfulness, ir, vcg-regret, welfare-regret, agent-regret,
/// seller-regret. Unsupported combinations raise UsageError; T <= 2K raises
/// PreconditionError.
double theorem_bound(const std::string& theorem, const BoundParams& params);

/// (1/50) (n-1)^{4/3} T^{2/3}, the minimax lower bound on E[R_maxT].
/// Requires n >= 2 and T >= 128 n.
double lower_bound_value(int n_agents, std::int64_t horizon);

}  // namespace vcglearn
