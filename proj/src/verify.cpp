#include "vcglearn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "vcglearn/io.hpp"

namespace vcglearn {

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<std::uint64_t> seed_range(std::uint64_t first, int count) {
  std::vector<std::uint64_t> seeds(count);
  for (int k = 0; k < count; ++k) seeds[k] = first + static_cast<std::uint64_t>(k);
  return seeds;
}

std::string fmt(double v) { return format_double(v); }

// The 200 deterministic market shapes used by the oracle checks.
MarketInstance oracle_instance(int index) {
  if (index % 4 == 3) {
    int n = 2 + index % 37;
    return random_instance(n, 2, InstanceStructure::SingleSlot,
                           static_cast<std::uint64_t>(index));
  }
  static constexpr std::pair<int, int> kShapes[] = {
      {2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}, {2, 5}, {4, 2}, {2, 6},
      {3, 4}, {2, 7}, {5, 2}, {3, 5}, {4, 3}, {2, 10}, {6, 2}, {3, 6},
      {2, 20}, {4, 4}, {7, 2}, {3, 7}, {2, 40}, {5, 3}, {2, 44}, {10, 2},
  };
  auto [n, s] = kShapes[(index / 4 * 3 + index % 4) % std::size(kShapes)];
  return random_instance(n, s, InstanceStructure::Product, static_cast<std::uint64_t>(index));
}

// Brute-force VCG reference, computed with its own loops so it shares no
// code path with vcg_solve.
struct BruteVcg {
  int outcome = 0;
  double max_welfare = 0.0;
  std::vector<double> prices;
  std::vector<double> utilities;
  double seller_utility = 0.0;
  std::vector<int> without_optimum;
  std::vector<double> without_welfare;
};

BruteVcg brute_force_vcg(const MarketInstance& m) {
  BruteVcg out;
  const int num_outcomes = m.num_outcomes();
  double best = -std::numeric_limits<double>::infinity();
  for (int w = 0; w < num_outcomes; ++w) {
    double val = m.seller_values[w];
    for (int i = 0; i < m.n_agents; ++i) val += m.agent_values[i][m.agent_map[i][w]];
    if (val > best) {
      best = val;
      out.outcome = w;
    }
  }
  out.max_welfare = best;
  out.prices.resize(m.n_agents);
  out.utilities.resize(m.n_agents);
  out.without_optimum.resize(m.n_agents);
  out.without_welfare.resize(m.n_agents);
  double price_total = 0.0;
  for (int i = 0; i < m.n_agents; ++i) {
    double best_without = -std::numeric_limits<double>::infinity();
    int best_w = 0;
    double at_opt = 0.0;
    for (int w = 0; w < num_outcomes; ++w) {
      double val = m.seller_values[w];
      for (int j = 0; j < m.n_agents; ++j) {
        if (j != i) val += m.agent_values[j][m.agent_map[j][w]];
      }
      if (val > best_without) {
        best_without = val;
        best_w = w;
      }
      if (w == out.outcome) at_opt = val;
    }
    out.without_optimum[i] = best_w;
    out.without_welfare[i] = best_without;
    out.prices[i] = best_without - at_opt;
    out.utilities[i] = m.agent_values[i][m.agent_map[i][out.outcome]] - out.prices[i];
    price_total += out.prices[i];
  }
  out.seller_utility = m.seller_values[out.outcome] + price_total;
  return out;
}

RunConfig benchmark_run_config(EstMethod est, PriceMethod price, std::int64_t horizon = 3000) {
  RunConfig config;
  config.horizon = horizon;
  config.mechanism = {est, price};
  config.detail = TraceDetail::Ledger;
  return config;
}

BoundParams benchmark_bound_params(const MarketInstance& benchmark, EstMethod est,
                                   PriceMethod price, std::int64_t horizon = 3000) {
  BoundParams p;
  p.n_agents = benchmark.n_agents;
  p.horizon = horizon;
  p.explore_rounds = benchmark.explore_rounds_K;
  p.num_allocations = benchmark.num_allocations();
  p.sigma = benchmark.noise_sigma;
  p.vmax = max_welfare_upper_bound(benchmark).value;
  p.est_method = est;
  p.price_method = price;
  p.participation = Participation::Rewards;
  return p;
}

constexpr EstMethod kEstGrid[] = {EstMethod::Etc, EstMethod::Opt};
constexpr PriceMethod kPriceGrid[] = {PriceMethod::Age, PriceMethod::Sel};

const char* est_name(EstMethod est) { return est == EstMethod::Etc ? "etc" : "opt"; }
const char* price_name(PriceMethod price) { return price == PriceMethod::Age ? "age" : "sel"; }

}  // namespace

VerifyContext::VerifyContext(int parallelism) : parallelism_(std::max(1, parallelism)) {}

const MarketInstance& VerifyContext::benchmark() {
  if (!benchmark_) benchmark_ = std::make_unique<MarketInstance>(single_item_benchmark());
  return *benchmark_;
}

const AggregateCurves& VerifyContext::benchmark_grid(EstMethod est, PriceMethod price) {
  auto key = std::make_pair(static_cast<int>(est), static_cast<int>(price));
  auto it = grid_.find(key);
  if (it == grid_.end()) {
    RunConfig config = benchmark_run_config(est, price);
    it = grid_.emplace(key, run_many(benchmark(), config, seed_range(1, 50), parallelism_))
             .first;
  }
  return it->second;
}

CheckResult check_vcg_oracle_brute_force(VerifyContext& ctx) {
  (void)ctx;
  Timer timer;
  constexpr double kTol = 1e-12;
  double worst = 0.0;
  int mismatches = 0;
  for (int k = 0; k < 200; ++k) {
    MarketInstance m = oracle_instance(k);
    VcgSolution fast = vcg_solve(m);
    BruteVcg slow = brute_force_vcg(m);
    if (fast.optimal_outcome != slow.outcome) ++mismatches;
    worst = std::max(worst, std::abs(fast.max_welfare - slow.max_welfare));
    worst = std::max(worst, std::abs(fast.seller_utility - slow.seller_utility));
    for (int i = 0; i < m.n_agents; ++i) {
      worst = std::max(worst, std::abs(fast.prices[i] - slow.prices[i]));
      worst = std::max(worst, std::abs(fast.agent_utilities[i] - slow.utilities[i]));
      worst = std::max(worst, std::abs(fast.without_agent_welfare[i] - slow.without_welfare[i]));
      if (fast.without_agent_optimum[i] != slow.without_optimum[i]) ++mismatches;
    }
  }
  CheckResult result;
  result.name = "vcg-oracle-brute-force";
  result.seconds = timer.seconds();
  result.passed = mismatches == 0 && worst <= kTol && result.seconds < 10.0;
  result.detail = "200 instances, max |diff|=" + fmt(worst) + ", index mismatches=" +
                  std::to_string(mismatches) + ", " + fmt(result.seconds) + "s (budget 10s)";
  return result;
}

CheckResult check_vcg_utility_identities(VerifyContext& ctx) {
  Timer timer;
  constexpr double kTol = 1e-12;
  double worst = 0.0;
  bool negative_price = false;
  auto examine = [&](const MarketInstance& m) {
    VcgSolution sol = vcg_solve(m);
    double val_opt = welfare(m, sol.optimal_outcome);
    double sum_without = 0.0;
    double sum_utilities = 0.0;
    for (int i = 0; i < m.n_agents; ++i) {
      // u_i* = Val(w*) - Val_{-i}(w*_{-i})
      worst = std::max(worst,
                       std::abs(sol.agent_utilities[i] -
                                (val_opt - sol.without_agent_welfare[i])));
      sum_without += sol.without_agent_welfare[i];
      sum_utilities += sol.agent_utilities[i];
      if (sol.prices[i] < 0.0) negative_price = true;
    }
    // u_0* = sum_i Val_{-i}(w*_{-i}) - (n-1) Val(w*)
    worst = std::max(worst, std::abs(sol.seller_utility -
                                     (sum_without - (m.n_agents - 1) * val_opt)));
    // utilities distribute the maximal welfare
    worst = std::max(worst, std::abs(sol.seller_utility + sum_utilities - val_opt));
  };
  for (int k = 0; k < 200; ++k) examine(oracle_instance(k));
  examine(ctx.benchmark());
  auto pair = lower_bound_pair(3, 5, 4000);
  examine(pair.theta1);
  examine(pair.theta2);

  CheckResult result;
  result.name = "vcg-utility-identities";
  result.seconds = timer.seconds();
  result.passed = worst <= kTol && !negative_price;
  result.detail = "max identity defect=" + fmt(worst) + " (tol 1e-12), prices non-negative: " +
                  (negative_price ? "no" : "yes");
  return result;
}

CheckResult check_regret_decomposition(VerifyContext& ctx) {
  Timer timer;
  constexpr double kTol = 1e-9;
  const MarketInstance& m = ctx.benchmark();
  const VcgSolution reference = vcg_solve(m);
  double worst = 0.0;
  for (EstMethod est : kEstGrid) {
    for (PriceMethod price : kPriceGrid) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::vector<AgentPolicy> policies(m.n_agents, AgentPolicy::truthful_rewards());
        MechanismState state(m, {est, price});
        state.collect_bids(policies);
        RewardSampler sampler(m, seed);
        std::vector<std::mt19937_64> rngs;
        for (int i = 0; i < m.n_agents; ++i) {
          rngs.emplace_back(split_seed(seed, i, 0x504f4cULL));
        }
        RegretLedger ledger(m, reference);
        for (std::int64_t t = 1; t <= 3000; ++t) {
          ledger.update(state.step(policies, sampler, rngs, nullptr));
          double direct_sum = ledger.agent_sum_regret() + ledger.seller_regret();
          worst = std::max(worst, std::abs(direct_sum - ledger.welfare_regret()));
          auto [agents_closed, seller_closed] = ledger.decomposition();
          worst = std::max(worst, std::abs(agents_closed - ledger.agent_sum_regret()));
          worst = std::max(worst, std::abs(seller_closed - ledger.seller_regret()));
        }
      }
    }
  }
  CheckResult result;
  result.name = "regret-decomposition";
  result.seconds = timer.seconds();
  result.passed = worst <= kTol;
  result.detail = "20 runs x 3000 rounds, max defect=" + fmt(worst) + " (tol 1e-9)";
  return result;
}

CheckResult check_bracket_growth_bounds(VerifyContext& ctx) {
  (void)ctx;
  Timer timer;
  constexpr std::int64_t kHorizon = 100000;
  std::int64_t violations = 0;
  std::int64_t clock_mismatches = 0;
  for (std::int64_t K : {1, 2, 5, 10}) {
    BracketClock clock(K);
    for (std::int64_t t = 1; t <= kHorizon; ++t) {
      BracketPosition pos = clock.advance();
      if (t % 997 == 1) {
        BracketPosition direct = phase_of_round(t, K);
        if (direct.bracket_q != pos.bracket_q || direct.phase != pos.phase ||
            direct.offset != pos.offset) {
          ++clock_mismatches;
        }
      }
      if (t <= 2 * K) continue;
      double scale = std::pow(static_cast<double>(t), 2.0 / 3.0) /
                     std::cbrt(static_cast<double>(K * K));
      double q = static_cast<double>(pos.bracket_q);
      if (q > 3.0 * scale) ++violations;
      if (pos.phase == Phase::Exploit && q < 0.5 * scale) ++violations;
    }
  }
  CheckResult result;
  result.name = "bracket-growth-bounds";
  result.seconds = timer.seconds();
  result.passed = violations == 0 && clock_mismatches == 0 && result.seconds < 5.0;
  result.detail = "K in {1,2,5,10}, T<=1e5: bound violations=" + std::to_string(violations) +
                  ", clock mismatches=" + std::to_string(clock_mismatches) + ", " +
                  fmt(result.seconds) + "s (budget 5s)";
  return result;
}

CheckResult check_bidder_truthfulness_almost_sure(VerifyContext& ctx) {
  Timer timer;
  constexpr double kTol = 1e-9;
  const MarketInstance& m = ctx.benchmark();
  std::mt19937_64 bid_rng(split_seed(20250809, 0xb1d5ULL));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double worst = -std::numeric_limits<double>::infinity();
  const auto seeds = seed_range(1, 20);
  for (int d = 0; d < 25; ++d) {
    int agent = d % m.n_agents;
    std::vector<double> bid(m.num_allocations());
    for (double& b : bid) b = uniform(bid_rng);
    for (PriceMethod price : kPriceGrid) {
      RunConfig base = benchmark_run_config(EstMethod::Etc, price);
      base.policies.assign(m.n_agents, AgentPolicy::truthful_bids());
      DeviationResult dev = deviation_experiment(m, agent, AgentPolicy::false_bids(bid), base,
                                                 seeds, ctx.parallelism());
      for (double diff : dev.per_seed) worst = std::max(worst, diff);
    }
  }
  CheckResult result;
  result.name = "bidder-truthfulness-almost-sure";
  result.seconds = timer.seconds();
  result.passed = worst <= kTol;
  result.detail = "25 false bids x 20 seeds x both pricings: max(U^pi - U)=" + fmt(worst) +
                  " (tol 1e-9)";
  return result;
}

CheckResult check_bidder_ir_almost_sure(VerifyContext& ctx) {
  Timer timer;
  constexpr double kTol = -1e-9;
  const MarketInstance& m = ctx.benchmark();
  const std::vector<int> bidders = {0, 4, 9};
  double worst = std::numeric_limits<double>::infinity();
  for (EstMethod est : kEstGrid) {
    RunConfig config = benchmark_run_config(est, PriceMethod::Age);
    config.policies.assign(m.n_agents, AgentPolicy::truthful_rewards());
    for (int b : bidders) config.policies[b] = AgentPolicy::truthful_bids();
    config.policies[1] = AgentPolicy::misreport_affine({0.5, 0.5});
    config.policies[6] = AgentPolicy::misreport_affine({0.5, 0.5});
    std::vector<double> minima(20, std::numeric_limits<double>::infinity());
    const auto seeds = seed_range(1, 20);
    parallel_for_indexed(seeds.size(), ctx.parallelism(), [&](std::size_t k) {
      RunConfig run_config = config;
      run_config.seed = seeds[k];
      RunTrace trace = run(m, run_config);
      double lowest = std::numeric_limits<double>::infinity();
      for (int b : bidders) {
        double ref_utility = trace.ledger.reference().agent_utilities[b];
        const auto& regret = trace.series.agent[b];
        for (std::size_t t = 0; t < regret.size(); ++t) {
          double cumulative_utility = static_cast<double>(t + 1) * ref_utility - regret[t];
          lowest = std::min(lowest, cumulative_utility);
        }
      }
      minima[k] = lowest;
    });
    for (double v : minima) worst = std::min(worst, v);
  }
  CheckResult result;
  result.name = "bidder-ir-almost-sure";
  result.seconds = timer.seconds();
  result.passed = worst >= kTol;
  result.detail = "truthful bidders, age pricing, both est, 20 seeds: min running U_iT=" +
                  fmt(worst) + " (tol -1e-9)";
  return result;
}

CheckResult check_rewards_ir_mean(VerifyContext& ctx) {
  Timer timer;
  const MarketInstance& m = ctx.benchmark();
  const VcgSolution reference = vcg_solve(m);
  bool passed = true;
  double tightest_margin = std::numeric_limits<double>::infinity();
  std::ostringstream detail;
  for (EstMethod est : kEstGrid) {
    for (PriceMethod price : kPriceGrid) {
      const AggregateCurves& curves = ctx.benchmark_grid(est, price);
      BoundParams params = benchmark_bound_params(m, est, price);
      double bound = theorem_bound("ir", params);
      for (int i = 0; i < m.n_agents; ++i) {
        double mean_regret = curves.agent[i].mean.back();
        double mean_utility =
            static_cast<double>(curves.horizon) * reference.agent_utilities[i] - mean_regret;
        double margin = mean_utility + bound;  // needs >= 0
        tightest_margin = std::min(tightest_margin, margin);
        if (margin < 0.0) passed = false;
      }
      detail << est_name(est) << "/" << price_name(price) << " bound=" << fmt(bound) << " ";
    }
  }
  CheckResult result;
  result.name = "rewards-ir-mean";
  result.seconds = timer.seconds();
  result.passed = passed;
  result.detail = "all agents, 4 cells, 50 seeds: min(meanU + bound)=" + fmt(tightest_margin) +
                  " >= 0; " + detail.str();
  return result;
}

CheckResult check_misreport_deficit_bound(VerifyContext& ctx) {
  Timer timer;
  const MarketInstance& m = ctx.benchmark();
  BoundParams params = benchmark_bound_params(m, EstMethod::Etc, PriceMethod::Age);
  const double bound = theorem_bound("truthfulness", params);
  bool passed = true;
  std::ostringstream detail;
  detail << "bound=" << fmt(bound);
  for (PriceMethod price : kPriceGrid) {
    RunConfig base = benchmark_run_config(EstMethod::Etc, price);
    DeviationResult dev =
        deviation_experiment(m, 0, AgentPolicy::misreport_affine({0.5, 0.5}), base,
                             seed_range(1, 50), ctx.parallelism());
    if (dev.mean > bound) passed = false;
    detail << ", mean(U^pi - U)[" << price_name(price) << "]=" << fmt(dev.mean);
  }
  CheckResult result;
  result.name = "misreport-deficit-bound";
  result.seconds = timer.seconds();
  result.passed = passed;
  result.detail = detail.str();
  return result;
}

CheckResult check_vcg_regret_envelope(VerifyContext& ctx) {
  Timer timer;
  const MarketInstance& m = ctx.benchmark();
  bool passed = true;
  std::ostringstream detail;
  for (EstMethod est : kEstGrid) {
    BoundParams params = benchmark_bound_params(m, est, PriceMethod::Age);
    double bound = theorem_bound("vcg-regret", params);
    for (PriceMethod price : kPriceGrid) {
      double observed = ctx.benchmark_grid(est, price).vcg_max.mean.back();
      if (observed > bound) passed = false;
      detail << est_name(est) << "/" << price_name(price) << ": mean R_max=" << fmt(observed)
             << " <= " << fmt(bound) << "; ";
    }
  }
  CheckResult result;
  result.name = "vcg-regret-envelope";
  result.seconds = timer.seconds();
  result.passed = passed;
  result.detail = detail.str();
  return result;
}

CheckResult check_figure_ordinal(VerifyContext& ctx) {
  Timer timer;
  std::ostringstream detail;
  bool passed = true;
  auto fail_if = [&](bool bad, const std::string& label) {
    if (bad) {
      passed = false;
      detail << "FAILED " << label << "; ";
    }
  };

  // (a) welfare regret: opt < etc for both pricings
  for (PriceMethod price : kPriceGrid) {
    double etc = ctx.benchmark_grid(EstMethod::Etc, price).welfare.mean.back();
    double opt = ctx.benchmark_grid(EstMethod::Opt, price).welfare.mean.back();
    detail << "welfare[" << price_name(price) << "]: opt=" << fmt(opt) << " etc=" << fmt(etc)
           << "; ";
    fail_if(!(opt < etc), std::string("welfare opt<etc (") + price_name(price) + ")");
  }
  // (b) seller regret: sel < age for both est methods
  for (EstMethod est : kEstGrid) {
    double age = ctx.benchmark_grid(est, PriceMethod::Age).seller.mean.back();
    double sel = ctx.benchmark_grid(est, PriceMethod::Sel).seller.mean.back();
    detail << "seller[" << est_name(est) << "]: sel=" << fmt(sel) << " age=" << fmt(age) << "; ";
    fail_if(!(sel < age), std::string("seller sel<age (") + est_name(est) + ")");
  }
  // (c) agent-1 regret: age < sel for both est methods
  for (EstMethod est : kEstGrid) {
    double age = ctx.benchmark_grid(est, PriceMethod::Age).agent[0].mean.back();
    double sel = ctx.benchmark_grid(est, PriceMethod::Sel).agent[0].mean.back();
    detail << "agent1[" << est_name(est) << "]: age=" << fmt(age) << " sel=" << fmt(sel) << "; ";
    fail_if(!(age < sel), std::string("agent1 age<sel (") + est_name(est) + ")");
  }
  // (d) agents 3 and 10 go negative before the horizon and stay negative
  // (agent-favourable pricing, both est methods).
  for (EstMethod est : kEstGrid) {
    const AggregateCurves& curves = ctx.benchmark_grid(est, PriceMethod::Age);
    for (int agent : {2, 9}) {
      const auto& mean = curves.agent[agent].mean;
      std::size_t stays_negative_from = mean.size();
      for (std::size_t t = mean.size(); t-- > 0;) {
        if (mean[t] < 0.0) {
          stays_negative_from = t;
        } else {
          break;
        }
      }
      bool ok = !mean.empty() && mean.back() < 0.0 && stays_negative_from + 2 <= mean.size();
      detail << "agent" << agent + 1 << "[" << est_name(est)
             << "/age]: final=" << fmt(mean.empty() ? 0.0 : mean.back())
             << " negative from t=" << (stays_negative_from + 1) << "; ";
      fail_if(!ok, "agent " + std::to_string(agent + 1) + " negative trajectory (" +
                       est_name(est) + ")");
    }
  }

  CheckResult result;
  result.name = "figure-ordinal-checks";
  result.seconds = timer.seconds();
  result.passed = passed;
  result.detail = detail.str();
  return result;
}

CheckResult check_scaling_slope(VerifyContext& ctx) {
  Timer timer;
  RunConfig base = benchmark_run_config(EstMethod::Etc, PriceMethod::Age);
  ScalingFit fit = scaling_experiment(ctx.benchmark(), base, {1000, 3000, 9000, 27000},
                                      seed_range(1, 30), ctx.parallelism());
  CheckResult result;
  result.name = "scaling-slope";
  result.seconds = timer.seconds();
  result.passed = fit.slope >= 0.5 && fit.slope <= 0.85;
  std::ostringstream detail;
  detail << "log-log slope of mean R_max=" << fmt(fit.slope) << " (window [0.5, 0.85]); points:";
  for (const auto& p : fit.points) {
    detail << " T=" << p.horizon << " -> " << fmt(p.mean_vcg_regret);
  }
  result.detail = detail.str();
  return result;
}

CheckResult check_lower_bound_sanity(VerifyContext& ctx) {
  Timer timer;
  LowerBoundPair pair = lower_bound_pair(2, 3, 512);
  const double bound = lower_bound_value(2, 512);
  double best = -std::numeric_limits<double>::infinity();
  std::ostringstream detail;
  for (const MarketInstance* m : {&pair.theta1, &pair.theta2}) {
    std::vector<double> finals(100, 0.0);
    const auto seeds = seed_range(1, 100);
    parallel_for_indexed(seeds.size(), ctx.parallelism(), [&](std::size_t k) {
      RunConfig config;
      config.horizon = 512;
      config.seed = seeds[k];
      config.mechanism = {EstMethod::Etc, PriceMethod::Age};
      config.detail = TraceDetail::Minimal;
      finals[k] = run(*m, config).ledger.vcg_regret();
    });
    double mean = 0.0;
    for (double v : finals) mean += v;
    mean /= static_cast<double>(finals.size());
    best = std::max(best, mean);
    detail << "mean R_max=" << fmt(mean) << "; ";
  }
  CheckResult result;
  result.name = "lower-bound-sanity";
  result.seconds = timer.seconds();
  result.passed = best >= bound && result.seconds < 60.0;
  result.detail = detail.str() + "max over pair=" + fmt(best) + " >= " + fmt(bound) + ", " +
                  fmt(result.seconds) + "s (budget 60s)";
  return result;
}

CheckResult check_known_values_zero_regret(VerifyContext& ctx) {
  Timer timer;
  std::vector<MarketInstance> markets;
  markets.push_back(ctx.benchmark());
  markets.push_back(random_instance(3, 3, InstanceStructure::Product, 7));
  markets.push_back(random_instance(5, 2, InstanceStructure::SingleSlot, 11));
  std::int64_t nonzero = 0;
  std::int64_t exploit_rounds = 0;
  for (const MarketInstance& m : markets) {
    VcgSolution sol = vcg_solve(m);
    for (EstMethod est : kEstGrid) {
      for (PriceMethod price : kPriceGrid) {
        std::vector<AgentPolicy> policies(m.n_agents, AgentPolicy::truthful_bids());
        MechanismState state(m, {est, price});
        state.collect_bids(policies);
        RewardSampler sampler(m, 1);
        std::vector<std::mt19937_64> rngs;
        for (int i = 0; i < m.n_agents; ++i) rngs.emplace_back(split_seed(1, i, 0x504f4cULL));
        for (std::int64_t t = 1; t <= 300; ++t) {
          RoundRecord rec = state.step(policies, sampler, rngs, nullptr);
          if (rec.phase != Phase::Exploit) continue;
          ++exploit_rounds;
          if (rec.outcome != sol.optimal_outcome) ++nonzero;
          if (welfare(m, sol.optimal_outcome) - welfare(m, rec.outcome) != 0.0) ++nonzero;
          double price_sum = 0.0;
          for (int i = 0; i < m.n_agents; ++i) {
            double utility = m.value_of(i, rec.allocations[i]) - rec.prices[i];
            if (sol.agent_utilities[i] - utility != 0.0) ++nonzero;
            price_sum += rec.prices[i];
          }
          double seller_utility = m.seller_values[rec.outcome] + price_sum;
          if (sol.seller_utility - seller_utility != 0.0) ++nonzero;
        }
      }
    }
  }
  CheckResult result;
  result.name = "known-values-zero-regret";
  result.seconds = timer.seconds();
  result.passed = nonzero == 0 && exploit_rounds > 0;
  result.detail = "all-bidder runs, 4 cells, 3 markets: " + std::to_string(exploit_rounds) +
                  " exploit rounds, exact-zero violations=" + std::to_string(nonzero);
  return result;
}

std::vector<std::string> suite_names() {
  return {"identities", "truthfulness", "ir", "brackets", "lower-bound", "scaling", "figure"};
}

std::vector<CheckResult> run_suite(const std::string& suite, VerifyContext& ctx) {
  if (suite == "identities") {
    return {check_vcg_oracle_brute_force(ctx), check_vcg_utility_identities(ctx),
            check_regret_decomposition(ctx), check_known_values_zero_regret(ctx)};
  }
  if (suite == "truthfulness") {
    return {check_bidder_truthfulness_almost_sure(ctx), check_misreport_deficit_bound(ctx)};
  }
  if (suite == "ir") {
    return {check_bidder_ir_almost_sure(ctx), check_rewards_ir_mean(ctx)};
  }
  if (suite == "brackets") {
    return {check_bracket_growth_bounds(ctx)};
  }
  if (suite == "lower-bound") {
    return {check_lower_bound_sanity(ctx)};
  }
  if (suite == "scaling") {
    return {check_scaling_slope(ctx)};
  }
  if (suite == "figure") {
    return {check_vcg_regret_envelope(ctx), check_figure_ordinal(ctx)};
  }
  throw UsageError("unknown verify suite \"" + suite + "\"");
}

std::vector<CheckResult> run_all_checks(VerifyContext& ctx) {
  return {
      check_vcg_oracle_brute_force(ctx),
      check_vcg_utility_identities(ctx),
      check_regret_decomposition(ctx),
      check_bracket_growth_bounds(ctx),
      check_bidder_truthfulness_almost_sure(ctx),
      check_bidder_ir_almost_sure(ctx),
      check_rewards_ir_mean(ctx),
      check_misreport_deficit_bound(ctx),
      check_vcg_regret_envelope(ctx),
      check_figure_ordinal(ctx),
      check_scaling_slope(ctx),
      check_lower_bound_sanity(ctx),
      check_known_values_zero_regret(ctx),
  };
}

}  // namespace vcglearn
