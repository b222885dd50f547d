#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vcglearn/io.hpp"
#include "vcglearn/serialization.hpp"
#include "vcglearn/verify.hpp"

namespace fs = std::filesystem;
using namespace vcglearn;

namespace {

constexpr const char* kVersion = "0.1.0";

int cmd_run(const fs::path& config_path, fs::path out_dir, bool out_dir_from_flag,
            int parallelism) {
  auto started = std::chrono::steady_clock::now();
  Json doc = load_json(config_path);
  ExperimentConfig config = experiment_config_from_json(doc);
  MarketInstance market = market_from_spec(config.instance_spec, config_path.parent_path());
  if (!out_dir_from_flag && !config.output_dir.empty()) {
    fs::path configured = config.output_dir;
    out_dir = configured.is_relative() ? config_path.parent_path() / configured : configured;
  }

  fs::create_directories(out_dir);
  Json metadata;
  metadata["config"] = config.raw;
  metadata["versions"] = {{"vcglearn", kVersion}, {"compiler", __VERSION__}};
  Json cells = Json::array();

  for (EstMethod est : config.est_methods) {
    for (PriceMethod price : config.price_methods) {
      RunConfig base;
      base.horizon = config.horizon;
      base.mechanism = {est, price};
      base.policies = config.policies;
      AggregateCurves curves = run_many(market, base, config.seeds, parallelism);
      std::string name = "curve_" + to_string(est) + "_" + to_string(price) + ".csv";
      write_file_atomically(out_dir / name, aggregate_curves_csv(curves));
      cells.push_back({{"est", to_string(est)},
                       {"price", to_string(price)},
                       {"file", name},
                       {"final_R_T", curves.welfare.mean.back()},
                       {"final_R_max", curves.vcg_max.mean.back()}});
      std::cout << "wrote " << (out_dir / name).string() << "\n";
    }
  }
  metadata["cells"] = cells;
  metadata["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_file_atomically(out_dir / "metadata.json", metadata.dump(2) + "\n");
  std::cout << "wrote " << (out_dir / "metadata.json").string() << "\n";
  return 0;
}

int cmd_bounds(const fs::path& config_path, const fs::path& out_dir) {
  Json doc = load_json(config_path);
  BoundParams params = bound_params_from_json(doc);

  Json out;
  std::cout << "bounds at n=" << params.n_agents << " T=" << params.horizon
            << " K=" << params.explore_rounds << " |S|=" << params.num_allocations
            << " sigma=" << params.sigma << " Vmax=" << params.vmax << "\n";
  std::cout << "cell      truthfulness        ir                  vcg-regret\n";
  for (EstMethod est : {EstMethod::Etc, EstMethod::Opt}) {
    for (PriceMethod price : {PriceMethod::Age, PriceMethod::Sel}) {
      BoundParams cell = params;
      cell.est_method = est;
      cell.price_method = price;
      cell.participation = Participation::Rewards;
      double truthfulness = theorem_bound("truthfulness", cell);
      double ir = theorem_bound("ir", cell);
      double vcg = theorem_bound("vcg-regret", cell);
      std::string key = to_string(est) + "/" + to_string(price);
      std::printf("%-9s %-19.6g %-19.6g %-19.6g\n", key.c_str(), truthfulness, ir, vcg);
      out[key] = {{"truthfulness", truthfulness}, {"ir", ir}, {"vcg_regret", vcg}};
    }
  }
  fs::create_directories(out_dir);
  write_file_atomically(out_dir / "bounds.json", out.dump(2) + "\n");
  std::cout << "wrote " << (out_dir / "bounds.json").string() << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, int parallelism) {
  VerifyContext ctx(parallelism);
  std::vector<CheckResult> results = run_suite(suite, ctx);
  bool all_passed = true;
  for (const CheckResult& result : results) {
    all_passed = all_passed && result.passed;
    std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << ": " << result.detail
              << " (" << format_double(result.seconds) << "s)\n";
  }
  std::cout << (all_passed ? "suite passed" : "suite FAILED") << "\n";
  return all_passed ? 0 : 1;
}

int cmd_dump_instance(const fs::path& config_path, const fs::path& out_dir) {
  Json spec = load_json(config_path);
  MarketInstance market = market_from_spec(spec, config_path.parent_path());
  std::string body = market_to_json(market).dump(2) + "\n";
  if (out_dir.empty()) {
    std::cout << body;
  } else {
    fs::create_directories(out_dir);
    write_file_atomically(out_dir / "instance.json", body);
    std::cout << "wrote " << (out_dir / "instance.json").string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-round VCG mechanism simulator with bandit feedback"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::string out_dir = "out";
  int parallelism = 1;

  auto* run_cmd = app.add_subcommand("run", "simulate a mechanism grid and write curve CSVs");
  run_cmd->add_option("--config", config_path, "experiment config JSON")->required();
  auto* run_out = run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--parallel", parallelism, "worker threads across seeds");

  auto* bounds_cmd = app.add_subcommand("bounds", "print the closed-form guarantee table");
  bounds_cmd->add_option("--config", config_path, "bound parameter JSON")->required();
  bounds_cmd->add_option("--out", out_dir, "output directory");

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite, "one of: identities, truthfulness, ir, brackets, "
                                         "lower-bound, scaling, figure")
      ->required();
  verify_cmd->add_option("--parallel", parallelism, "worker threads across seeds");

  std::string dump_out;
  auto* dump_cmd = app.add_subcommand("dump-instance", "materialise an instance spec as JSON");
  dump_cmd->add_option("--config", config_path, "instance spec JSON")->required();
  dump_cmd->add_option("--out", dump_out, "output directory (default: stdout)");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) {
      return cmd_run(config_path, out_dir, run_out->count() > 0, parallelism);
    }
    if (bounds_cmd->parsed()) return cmd_bounds(config_path, out_dir);
    if (verify_cmd->parsed()) return cmd_verify(suite, parallelism);
    if (dump_cmd->parsed()) return cmd_dump_instance(config_path, dump_out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
