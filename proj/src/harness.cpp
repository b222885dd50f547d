#include "vcglearn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace vcglearn {

void parallel_for_indexed(std::size_t count, int parallelism,
                          const std::function<void(std::size_t)>& job) {
  int workers = std::max(1, parallelism);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  workers = std::min<std::size_t>(workers, count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr failure = nullptr;
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::vector<AgentPolicy> effective_policies(const MarketInstance& market,
                                            const RunConfig& config) {
  if (config.policies.empty()) {
    return std::vector<AgentPolicy>(market.n_agents, AgentPolicy::truthful_rewards());
  }
  if (static_cast<int>(config.policies.size()) != market.n_agents) {
    throw InputError("run config must supply one policy per agent");
  }
  return config.policies;
}

}  // namespace

RunTrace run(const MarketInstance& market, const RunConfig& config) {
  if (config.horizon < 1) throw InputError("horizon must be >= 1");
  const std::vector<AgentPolicy> policies = effective_policies(market, config);
  const int n = market.n_agents;

  VcgSolution reference = vcg_solve(market);
  RunTrace trace{RegretLedger(market, std::move(reference)), {}, {}, 0.0};

  MechanismState state(market, config.mechanism);
  state.collect_bids(policies);

  RewardSampler sampler(market, config.seed);
  std::vector<std::mt19937_64> policy_rngs;
  policy_rngs.reserve(n);
  for (int i = 0; i < n; ++i) {
    policy_rngs.emplace_back(split_seed(config.seed, static_cast<std::uint64_t>(i), 0x504f4cULL));
  }
  bool any_scripted = false;
  for (const auto& policy : policies) {
    if (policy.kind == PolicyKind::Scripted) any_scripted = true;
  }
  std::vector<AgentHistory> histories;
  if (any_scripted) histories.resize(n);

  const bool keep_series = config.detail != TraceDetail::Minimal;
  if (keep_series) {
    auto reserve = [&](std::vector<double>& v) { v.reserve(config.horizon); };
    reserve(trace.series.welfare);
    reserve(trace.series.agent_sum);
    reserve(trace.series.seller);
    reserve(trace.series.vcg_max);
    reserve(trace.series.realized_welfare);
    trace.series.agent.resize(n);
    for (auto& column : trace.series.agent) column.reserve(config.horizon);
  }

  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    RoundRecord record =
        state.step(policies, sampler, policy_rngs, any_scripted ? &histories : nullptr);
    trace.ledger.update(record);
    trace.max_utility_identity_gap =
        std::max(trace.max_utility_identity_gap, record.utility_identity_gap);
    if (keep_series) {
      trace.series.welfare.push_back(trace.ledger.welfare_regret());
      trace.series.agent_sum.push_back(trace.ledger.agent_sum_regret());
      trace.series.seller.push_back(trace.ledger.seller_regret());
      trace.series.vcg_max.push_back(trace.ledger.vcg_regret());
      trace.series.realized_welfare.push_back(trace.ledger.realized_welfare_regret());
      for (int i = 0; i < n; ++i) {
        trace.series.agent[i].push_back(trace.ledger.agent_regret(i));
      }
    }
    if (config.detail == TraceDetail::Full) {
      trace.records.push_back(std::move(record));
    }
  }
  return trace;
}

namespace {

struct SeriesAccumulator {
  std::vector<double> sum;
  std::vector<double> sum_sq;

  void init(std::size_t length) {
    sum.assign(length, 0.0);
    sum_sq.assign(length, 0.0);
  }
  void add(const std::vector<double>& series) {
    for (std::size_t t = 0; t < series.size(); ++t) {
      sum[t] += series[t];
      sum_sq[t] += series[t] * series[t];
    }
  }
  AggregateSeries finish(std::size_t m) const {
    AggregateSeries out;
    out.mean.resize(sum.size());
    out.se.resize(sum.size());
    for (std::size_t t = 0; t < sum.size(); ++t) {
      double mean = sum[t] / static_cast<double>(m);
      out.mean[t] = mean;
      if (m < 2) {
        out.se[t] = 0.0;
      } else {
        double var = (sum_sq[t] - static_cast<double>(m) * mean * mean) /
                     static_cast<double>(m - 1);
        out.se[t] = std::sqrt(std::max(var, 0.0) / static_cast<double>(m));
      }
    }
    return out;
  }
};

}  // namespace

AggregateCurves run_many(const MarketInstance& market, const RunConfig& base,
                         const std::vector<std::uint64_t>& seeds, int parallelism) {
  if (seeds.empty()) throw InputError("run_many requires at least one seed");
  const int n = market.n_agents;

  AggregateCurves out;
  out.horizon = base.horizon;
  out.num_seeds = seeds.size();

  SeriesAccumulator welfare, agent_sum, seller, vcg_max;
  std::vector<SeriesAccumulator> agent(n);
  welfare.init(base.horizon);
  agent_sum.init(base.horizon);
  seller.init(base.horizon);
  vcg_max.init(base.horizon);
  for (auto& acc : agent) acc.init(base.horizon);

  // Chunked: up to `parallelism` runs in flight, folded in seed order.
  const std::size_t chunk = std::max(1, parallelism);
  std::vector<RunTrace> traces;
  for (std::size_t begin = 0; begin < seeds.size(); begin += chunk) {
    const std::size_t end = std::min(begin + chunk, seeds.size());
    traces.clear();
    traces.resize(end - begin, RunTrace{RegretLedger(market, vcg_solve(market)), {}, {}, 0.0});
    parallel_for_indexed(end - begin, parallelism, [&](std::size_t k) {
      RunConfig config = base;
      config.seed = seeds[begin + k];
      config.detail = TraceDetail::Ledger;
      traces[k] = run(market, config);
    });
    for (std::size_t k = 0; k < traces.size(); ++k) {
      welfare.add(traces[k].series.welfare);
      agent_sum.add(traces[k].series.agent_sum);
      seller.add(traces[k].series.seller);
      vcg_max.add(traces[k].series.vcg_max);
      for (int i = 0; i < n; ++i) agent[i].add(traces[k].series.agent[i]);
    }
  }

  out.welfare = welfare.finish(seeds.size());
  out.agent_sum = agent_sum.finish(seeds.size());
  out.seller = seller.finish(seeds.size());
  out.vcg_max = vcg_max.finish(seeds.size());
  out.agent.reserve(n);
  for (int i = 0; i < n; ++i) out.agent.push_back(agent[i].finish(seeds.size()));
  return out;
}

DeviationResult deviation_experiment(const MarketInstance& market, int agent,
                                     const AgentPolicy& deviation, const RunConfig& base,
                                     const std::vector<std::uint64_t>& seeds, int parallelism) {
  market.check_agent(agent);
  if (seeds.empty()) throw InputError("deviation_experiment requires at least one seed");
  const std::vector<AgentPolicy> truthful_policies = [&] {
    RunConfig probe = base;
    return effective_policies(market, probe);
  }();

  DeviationResult result;
  result.per_seed.assign(seeds.size(), 0.0);
  parallel_for_indexed(seeds.size(), parallelism, [&](std::size_t k) {
    RunConfig truthful = base;
    truthful.policies = truthful_policies;
    truthful.seed = seeds[k];
    truthful.detail = TraceDetail::Minimal;

    RunConfig deviating = truthful;
    deviating.policies[agent] = deviation;

    RunTrace truthful_trace = run(market, truthful);
    RunTrace deviating_trace = run(market, deviating);
    // U_iT = T u_i* - R_iT, so the difference flips sign.
    result.per_seed[k] =
        truthful_trace.ledger.agent_regret(agent) - deviating_trace.ledger.agent_regret(agent);
  });
  double total = 0.0;
  for (double d : result.per_seed) total += d;
  result.mean = total / static_cast<double>(result.per_seed.size());
  return result;
}

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  ScalingFit fit;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [horizon, value] : points) {
    ScalingPoint point{static_cast<std::int64_t>(horizon), value, value > 0.0};
    fit.points.push_back(point);
    if (value > 0.0) {
      logs.emplace_back(std::log(horizon), std::log(value));
    } else {
      fit.warnings.push_back("excluded unfittable point at T=" +
                             std::to_string(point.horizon) + " (non-positive mean regret)");
    }
  }
  if (logs.size() < 2) {
    throw UsageError("power-law fit needs at least two fittable points");
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : logs) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= logs.size();
  mean_y /= logs.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  return fit;
}

ScalingFit scaling_experiment(const MarketInstance& market, const RunConfig& base,
                              const std::vector<std::int64_t>& horizons,
                              const std::vector<std::uint64_t>& seeds, int parallelism) {
  if (horizons.size() < 3) {
    throw PreconditionError("scaling_experiment needs at least three horizons");
  }
  for (std::int64_t horizon : horizons) {
    if (horizon <= 2 * market.explore_rounds_K) {
      throw PreconditionError("every scaling horizon must exceed 2K");
    }
  }
  if (seeds.empty()) throw InputError("scaling_experiment requires at least one seed");

  std::vector<std::pair<double, double>> points;
  for (std::int64_t horizon : horizons) {
    std::vector<double> finals(seeds.size(), 0.0);
    parallel_for_indexed(seeds.size(), parallelism, [&](std::size_t k) {
      RunConfig config = base;
      config.horizon = horizon;
      config.seed = seeds[k];
      config.detail = TraceDetail::Minimal;
      finals[k] = run(market, config).ledger.vcg_regret();
    });
    double mean = 0.0;
    for (double v : finals) mean += v;
    mean /= static_cast<double>(finals.size());
    points.emplace_back(static_cast<double>(horizon), mean);
  }
  return fit_power_law(points);
}

}  // namespace vcglearn
