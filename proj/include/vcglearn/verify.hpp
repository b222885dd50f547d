#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vcglearn/harness.hpp"
#include "vcglearn/instances.hpp"

namespace vcglearn {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // measured values and thresholds
  double seconds = 0.0;
};

/// Shared artifacts for the verification suites. The four-cell benchmark
/// aggregate (50 seeds, 3000 rounds) is computed once and reused by the
/// rationality, envelope, and figure checks.
class VerifyContext {
 public:
  explicit VerifyContext(int parallelism);

  const MarketInstance& benchmark();
  const AggregateCurves& benchmark_grid(EstMethod est, PriceMethod price);
  int parallelism() const { return parallelism_; }

 private:
  int parallelism_;
  std::unique_ptr<MarketInstance> benchmark_;
  std::map<std::pair<int, int>, AggregateCurves> grid_;
};

// Individual checks. Tolerances and sample sizes are fixed here.
CheckResult check_vcg_oracle_brute_force(VerifyContext& ctx);
CheckResult check_vcg_utility_identities(VerifyContext& ctx);
CheckResult check_regret_decomposition(VerifyContext& ctx);
CheckResult check_bracket_growth_bounds(VerifyContext& ctx);
CheckResult check_bidder_truthfulness_almost_sure(VerifyContext& ctx);
CheckResult check_bidder_ir_almost_sure(VerifyContext& ctx);
CheckResult check_rewards_ir_mean(VerifyContext& ctx);
CheckResult check_misreport_deficit_bound(VerifyContext& ctx);
CheckResult check_vcg_regret_envelope(VerifyContext& ctx);
CheckResult check_figure_ordinal(VerifyContext& ctx);
CheckResult check_scaling_slope(VerifyContext& ctx);
CheckResult check_lower_bound_sanity(VerifyContext& ctx);
CheckResult check_known_values_zero_regret(VerifyContext& ctx);

/// Suites: identities, truthfulness, ir, brackets, lower-bound, scaling,
/// and the extended figure suite (envelope + ordinal figure checks).
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& suite, VerifyContext& ctx);

/// Every check, in report order.
std::vector<CheckResult> run_all_checks(VerifyContext& ctx);

}  // namespace vcglearn
