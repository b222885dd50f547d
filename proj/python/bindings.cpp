#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vcglearn/harness.hpp"
#include "vcglearn/instances.hpp"
#include "vcglearn/io.hpp"
#include "vcglearn/serialization.hpp"
#include "vcglearn/verify.hpp"

namespace py = pybind11;
using namespace vcglearn;

namespace {

// Self-contained result types so Python never holds pointers into a market
// it might free.
struct PyRunResult {
  double welfare_regret;
  double agent_sum_regret;
  double seller_regret;
  double vcg_regret;
  double h_value;
  double w_value;
  std::vector<double> agent_regret;
  RegretSeries series;
  double max_utility_identity_gap;
  VcgSolution reference;
};

RunConfig make_run_config(std::int64_t horizon, std::uint64_t seed, const std::string& est,
                          const std::string& price, const std::vector<AgentPolicy>& policies,
                          bool keep_series) {
  RunConfig config;
  config.horizon = horizon;
  config.seed = seed;
  config.mechanism = {est_method_from_string(est), price_method_from_string(price)};
  config.policies = policies;
  config.detail = keep_series ? TraceDetail::Ledger : TraceDetail::Minimal;
  return config;
}

PyRunResult run_simulation(const MarketInstance& market, std::int64_t horizon,
                           std::uint64_t seed, const std::string& est, const std::string& price,
                           const std::vector<AgentPolicy>& policies, bool keep_series) {
  RunTrace trace =
      run(market, make_run_config(horizon, seed, est, price, policies, keep_series));
  PyRunResult result{trace.ledger.welfare_regret(),
                     trace.ledger.agent_sum_regret(),
                     trace.ledger.seller_regret(),
                     trace.ledger.vcg_regret(),
                     trace.ledger.h_T(),
                     trace.ledger.w_T(),
                     {},
                     std::move(trace.series),
                     trace.max_utility_identity_gap,
                     trace.ledger.reference()};
  for (int i = 0; i < market.n_agents; ++i) {
    result.agent_regret.push_back(trace.ledger.agent_regret(i));
  }
  return result;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-round VCG mechanism with bandit feedback: markets, the "
            "bracketed learning mechanism, regret metrics, and experiment drivers.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);

  py::class_<MarketInstance>(m, "MarketInstance")
      .def_readonly("n_agents", &MarketInstance::n_agents)
      .def_readonly("outcome_names", &MarketInstance::outcome_names)
      .def_readonly("allocation_names", &MarketInstance::allocation_names)
      .def_readonly("agent_values", &MarketInstance::agent_values)
      .def_readonly("seller_values", &MarketInstance::seller_values)
      .def_readonly("noise_sigma", &MarketInstance::noise_sigma)
      .def_readonly("explore_rounds_K", &MarketInstance::explore_rounds_K)
      .def("num_outcomes", &MarketInstance::num_outcomes)
      .def("num_allocations", &MarketInstance::num_allocations)
      .def("allocation_of", &MarketInstance::allocation_of, py::arg("agent"),
           py::arg("outcome"))
      .def("to_json", [](const MarketInstance& market) {
        return market_to_json(market).dump(2);
      });

  m.def("market_from_json",
        [](const std::string& text) { return market_from_json(Json::parse(text)); },
        py::arg("text"), "Parse an instance document (strict field checking).");
  m.def("load_market", [](const std::string& path) { return load_market(path); },
        py::arg("path"));

  py::class_<VcgSolution>(m, "VcgSolution")
      .def_readonly("optimal_outcome", &VcgSolution::optimal_outcome)
      .def_readonly("prices", &VcgSolution::prices)
      .def_readonly("agent_utilities", &VcgSolution::agent_utilities)
      .def_readonly("seller_utility", &VcgSolution::seller_utility)
      .def_readonly("max_welfare", &VcgSolution::max_welfare)
      .def_readonly("without_agent_optimum", &VcgSolution::without_agent_optimum)
      .def_readonly("without_agent_welfare", &VcgSolution::without_agent_welfare);

  m.def("welfare", &welfare, py::arg("market"), py::arg("outcome"));
  m.def("welfare_without", &welfare_without, py::arg("market"), py::arg("agent"),
        py::arg("outcome"));
  m.def("vcg_solve", &vcg_solve, py::arg("market"));
  m.def("max_welfare_upper_bound", [](const MarketInstance& market) {
    WelfareUpperBound bound = max_welfare_upper_bound(market);
    return py::make_tuple(bound.value, bound.exact);
  });

  m.def("single_item_benchmark", &single_item_benchmark);
  m.def("lower_bound_pair", [](int n, int num_outcomes, std::int64_t horizon) {
    LowerBoundPair pair = lower_bound_pair(n, num_outcomes, horizon);
    return py::make_tuple(pair.theta1, pair.theta2, pair.delta);
  }, py::arg("n"), py::arg("num_outcomes"), py::arg("horizon"));
  m.def("random_instance", [](int n, int num_allocations, const std::string& structure,
                              std::uint64_t seed) {
    InstanceStructure parsed;
    if (structure == "product") {
      parsed = InstanceStructure::Product;
    } else if (structure == "single_slot") {
      parsed = InstanceStructure::SingleSlot;
    } else {
      throw InputError("structure must be product or single_slot");
    }
    return random_instance(n, num_allocations, parsed, seed);
  }, py::arg("n"), py::arg("num_allocations"), py::arg("structure"), py::arg("seed"));

  m.def("bracket_lengths", [](std::int64_t q, std::int64_t K) {
    auto [explore_len, exploit_len] = bracket_lengths(q, K);
    return py::make_tuple(explore_len, exploit_len);
  }, py::arg("q"), py::arg("K"));
  m.def("phase_of_round", [](std::int64_t t, std::int64_t K) {
    BracketPosition pos = phase_of_round(t, K);
    return py::make_tuple(pos.bracket_q, pos.phase == Phase::Explore ? "explore" : "exploit",
                          pos.offset);
  }, py::arg("t"), py::arg("K"), "Returns (bracket, phase, offset-within-phase).");
  m.def("build_explore_schedule", &build_explore_schedule, py::arg("market"));

  py::class_<AgentPolicy>(m, "AgentPolicy")
      .def_static("truthful_rewards", &AgentPolicy::truthful_rewards)
      .def_static("truthful_bids", &AgentPolicy::truthful_bids)
      .def_static("false_bids", &AgentPolicy::false_bids, py::arg("bid"))
      .def_static("misreport_affine", &AgentPolicy::misreport_affine, py::arg("scale"),
                  py::arg("shift") = std::vector<double>{})
      .def_static("misreport_fixed", &AgentPolicy::misreport_fixed, py::arg("mean"),
                  py::arg("sd"));

  py::class_<RegretSeries>(m, "RegretSeries")
      .def_readonly("welfare", &RegretSeries::welfare)
      .def_readonly("agent_sum", &RegretSeries::agent_sum)
      .def_readonly("seller", &RegretSeries::seller)
      .def_readonly("vcg_max", &RegretSeries::vcg_max)
      .def_readonly("agent", &RegretSeries::agent)
      .def_readonly("realized_welfare", &RegretSeries::realized_welfare);

  py::class_<PyRunResult>(m, "RunResult")
      .def_readonly("welfare_regret", &PyRunResult::welfare_regret)
      .def_readonly("agent_sum_regret", &PyRunResult::agent_sum_regret)
      .def_readonly("seller_regret", &PyRunResult::seller_regret)
      .def_readonly("vcg_regret", &PyRunResult::vcg_regret)
      .def_readonly("h", &PyRunResult::h_value)
      .def_readonly("w", &PyRunResult::w_value)
      .def_readonly("agent_regret", &PyRunResult::agent_regret)
      .def_readonly("series", &PyRunResult::series)
      .def_readonly("max_utility_identity_gap", &PyRunResult::max_utility_identity_gap)
      .def_readonly("reference", &PyRunResult::reference);

  m.def("run", &run_simulation, py::arg("market"), py::arg("horizon"), py::arg("seed"),
        py::arg("est") = "etc", py::arg("price") = "age",
        py::arg("policies") = std::vector<AgentPolicy>{}, py::arg("keep_series") = true,
        "Simulate one run; policies default to everyone reporting truthfully.");

  py::class_<AggregateSeries>(m, "AggregateSeries")
      .def_readonly("mean", &AggregateSeries::mean)
      .def_readonly("se", &AggregateSeries::se);

  py::class_<AggregateCurves>(m, "AggregateCurves")
      .def_readonly("horizon", &AggregateCurves::horizon)
      .def_readonly("num_seeds", &AggregateCurves::num_seeds)
      .def_readonly("welfare", &AggregateCurves::welfare)
      .def_readonly("agent_sum", &AggregateCurves::agent_sum)
      .def_readonly("seller", &AggregateCurves::seller)
      .def_readonly("vcg_max", &AggregateCurves::vcg_max)
      .def_readonly("agent", &AggregateCurves::agent)
      .def("to_csv", &aggregate_curves_csv);

  m.def("run_many", [](const MarketInstance& market, std::int64_t horizon, const std::string& est,
                       const std::string& price, const std::vector<std::uint64_t>& seeds,
                       const std::vector<AgentPolicy>& policies, int parallelism) {
    RunConfig base = make_run_config(horizon, 0, est, price, policies, true);
    py::gil_scoped_release release;
    return run_many(market, base, seeds, parallelism);
  }, py::arg("market"), py::arg("horizon"), py::arg("est") = "etc", py::arg("price") = "age",
        py::arg("seeds") = std::vector<std::uint64_t>{1},
        py::arg("policies") = std::vector<AgentPolicy>{}, py::arg("parallelism") = 1);

  py::class_<DeviationResult>(m, "DeviationResult")
      .def_readonly("per_seed", &DeviationResult::per_seed)
      .def_readonly("mean", &DeviationResult::mean);

  m.def("deviation_experiment",
        [](const MarketInstance& market, int agent, const AgentPolicy& deviation,
           std::int64_t horizon, const std::string& est, const std::string& price,
           const std::vector<std::uint64_t>& seeds, const std::vector<AgentPolicy>& policies,
           int parallelism) {
          RunConfig base = make_run_config(horizon, 0, est, price, policies, false);
          py::gil_scoped_release release;
          return deviation_experiment(market, agent, deviation, base, seeds, parallelism);
        },
        py::arg("market"), py::arg("agent"), py::arg("deviation"), py::arg("horizon"),
        py::arg("est") = "etc", py::arg("price") = "age",
        py::arg("seeds") = std::vector<std::uint64_t>{1},
        py::arg("policies") = std::vector<AgentPolicy>{}, py::arg("parallelism") = 1,
        "Paired U^pi - U under shared exogenous randomness.");

  py::class_<ScalingPoint>(m, "ScalingPoint")
      .def_readonly("horizon", &ScalingPoint::horizon)
      .def_readonly("mean_vcg_regret", &ScalingPoint::mean_vcg_regret)
      .def_readonly("usable", &ScalingPoint::usable);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("slope", &ScalingFit::slope)
      .def_readonly("intercept", &ScalingFit::intercept)
      .def_readonly("points", &ScalingFit::points)
      .def_readonly("warnings", &ScalingFit::warnings);

  m.def("scaling_experiment",
        [](const MarketInstance& market, const std::vector<std::int64_t>& horizons,
           const std::string& est, const std::string& price,
           const std::vector<std::uint64_t>& seeds, int parallelism) {
          RunConfig base = make_run_config(2, 0, est, price, {}, false);
          py::gil_scoped_release release;
          return scaling_experiment(market, base, horizons, seeds, parallelism);
        },
        py::arg("market"), py::arg("horizons"), py::arg("est") = "etc",
        py::arg("price") = "age", py::arg("seeds") = std::vector<std::uint64_t>{1},
        py::arg("parallelism") = 1);
  m.def("fit_power_law", &fit_power_law, py::arg("points"));

  m.def("theorem_bound",
        [](const std::string& theorem, int n, std::int64_t horizon, std::int64_t explore_rounds,
           int num_allocations, double sigma, double vmax, double vali_expl,
           const std::string& est, const std::string& price, const std::string& participation) {
          BoundParams params;
          params.n_agents = n;
          params.horizon = horizon;
          params.explore_rounds = explore_rounds;
          params.num_allocations = num_allocations;
          params.sigma = sigma;
          params.vmax = vmax;
          params.vali_expl = vali_expl;
          params.est_method = est_method_from_string(est);
          params.price_method = price_method_from_string(price);
          if (participation == "rewards") {
            params.participation = Participation::Rewards;
          } else if (participation == "bids") {
            params.participation = Participation::Bids;
          } else {
            throw InputError("participation must be rewards or bids");
          }
          return theorem_bound(theorem, params);
        },
        py::arg("theorem"), py::arg("n"), py::arg("horizon"), py::arg("explore_rounds"),
        py::arg("num_allocations"), py::arg("sigma"), py::arg("vmax") = 0.0,
        py::arg("vali_expl") = 0.0, py::arg("est") = "etc", py::arg("price") = "age",
        py::arg("participation") = "rewards");
  m.def("lower_bound_value", &lower_bound_value, py::arg("n"), py::arg("horizon"));
  m.def("vali_expl", &vali_expl, py::arg("market"), py::arg("agent"), py::arg("solution"));

  m.def("run_verify_suite", [](const std::string& suite, int parallelism) {
    VerifyContext ctx(parallelism);
    py::list out;
    for (const CheckResult& check : run_suite(suite, ctx)) {
      py::dict row;
      row["name"] = check.name;
      row["passed"] = check.passed;
      row["detail"] = check.detail;
      row["seconds"] = check.seconds;
      out.append(row);
    }
    return out;
  }, py::arg("suite"), py::arg("parallelism") = 1);
}
