#include "vcglearn/metrics.hpp"

#include <doctest.h>

#include <cmath>

#include "vcglearn/instances.hpp"
#include "test_support.hpp"

using namespace vcglearn;
using vcglearn::testing::single_item_market;

namespace {

RoundRecord fixed_round(const MarketInstance& m, int outcome, std::vector<double> prices,
                        Phase phase = Phase::Exploit) {
  RoundRecord rec;
  rec.round_t = 1;
  rec.bracket_q = 1;
  rec.phase = phase;
  rec.outcome = outcome;
  rec.prices = std::move(prices);
  rec.allocations.resize(m.n_agents);
  rec.realized.resize(m.n_agents);
  for (int i = 0; i < m.n_agents; ++i) {
    rec.allocations[i] = m.allocation_of(i, outcome);
    rec.realized[i] = m.value_of(i, rec.allocations[i]);
  }
  rec.reported.resize(m.n_agents);
  return rec;
}

}  // namespace

TEST_CASE("vcg regret is the max of the three scaled terms") {
  CHECK(vcg_regret(2, 1.0, 3.0, -2.0) == 3.0);
  CHECK(vcg_regret(5, 1.0, 3.0, -2.0) == 5.0);
  CHECK(vcg_regret(1, 0.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("playing the vcg outcome at vcg prices accrues no regret") {
  MarketInstance m = single_item_market({0.9, 0.2, 0.4});
  VcgSolution sol = vcg_solve(m);
  RegretLedger ledger(m, sol);
  for (int t = 0; t < 10; ++t) {
    ledger.update(fixed_round(m, sol.optimal_outcome, sol.prices));
  }
  CHECK(ledger.welfare_regret() == 0.0);
  CHECK(ledger.agent_sum_regret() == 0.0);
  CHECK(ledger.seller_regret() == 0.0);
  CHECK(ledger.vcg_regret() == 0.0);
  auto [agents_closed, seller_closed] = ledger.decomposition();
  CHECK(agents_closed == doctest::Approx(0.0));
  CHECK(seller_closed == doctest::Approx(0.0));
}

TEST_CASE("one suboptimal round on the adversarial instance") {
  auto pair = lower_bound_pair(3, 4, 4000);
  RegretLedger ledger(pair.theta1, vcg_solve(pair.theta1));
  ledger.update(fixed_round(pair.theta1, 1, {0.0, 0.0, 0.0}));
  CHECK(ledger.welfare_regret() == doctest::Approx(0.5).epsilon(1e-12));  // 1.5 - 1.0
}

TEST_CASE("decomposition closed forms track the accumulated sums") {
  MarketInstance m = single_item_market({0.8, 0.6, 0.1}, {0.05, -0.1, 0.0});
  RegretLedger ledger(m, vcg_solve(m));
  // A scripted mix of outcomes and ad-hoc prices.
  ledger.update(fixed_round(m, 1, {0.1, -0.2, 0.3}));
  ledger.update(fixed_round(m, 0, {0.0, 0.0, 0.0}, Phase::Explore));
  ledger.update(fixed_round(m, 2, {1.5, 0.4, -0.9}));
  auto [agents_closed, seller_closed] = ledger.decomposition();
  CHECK(agents_closed == doctest::Approx(ledger.agent_sum_regret()).epsilon(1e-12));
  CHECK(seller_closed == doctest::Approx(ledger.seller_regret()).epsilon(1e-12));
  CHECK(ledger.agent_sum_regret() + ledger.seller_regret() ==
        doctest::Approx(ledger.welfare_regret()).epsilon(1e-12));
  // n = 1 degenerates to R_a = R_T + T W_T.
  MarketInstance solo = single_item_market({0.8});
  RegretLedger solo_ledger(solo, vcg_solve(solo));
  solo_ledger.update(fixed_round(solo, 0, {0.3}));
  auto [ra, rmech] = solo_ledger.decomposition();
  CHECK(ra == doctest::Approx(solo_ledger.welfare_regret() + 1.0 * solo_ledger.w_T()));
  CHECK(rmech == doctest::Approx(-1.0 * solo_ledger.w_T()));
}

TEST_CASE("vali_expl on the benchmark") {
  MarketInstance m = single_item_benchmark();
  VcgSolution sol = vcg_solve(m);
  CHECK(vali_expl(m, 1, sol) == 0.0);                          // u_2* = 0, min value 0
  double grid_gap = 0.9 - (0.9 - 0.7 / 9.0);                   // u_1* = 0.9 - second value
  CHECK(vali_expl(m, 0, sol) == doctest::Approx(grid_gap).epsilon(1e-12));
  // Clamp: a synthetic reference with u_i* below the worst allocation value.
  VcgSolution synthetic = sol;
  synthetic.agent_utilities[3] = -0.25;
  CHECK(vali_expl(m, 3, synthetic) == 0.0);
}

TEST_CASE("theorem bounds evaluate their closed forms") {
  BoundParams p;
  p.n_agents = 10;
  p.horizon = 3000;
  p.explore_rounds = 10;
  p.num_allocations = 2;
  p.sigma = 1.0;
  p.vmax = 0.9;
  p.est_method = EstMethod::Etc;
  p.price_method = PriceMethod::Age;
  p.participation = Participation::Rewards;

  // 10 sigma sqrt(ln(2*3000)) 10^{1/3} 3000^{2/3} + 4, frozen independently.
  CHECK(theorem_bound("truthfulness", p) == doctest::Approx(13221.876329627637).epsilon(1e-12));

  BoundParams bids = p;
  bids.participation = Participation::Bids;
  CHECK(theorem_bound("truthfulness", bids) == 0.0);
  CHECK(theorem_bound("ir", bids) == 0.0);

  BoundParams opt = p;
  opt.est_method = EstMethod::Opt;
  opt.sigma = std::sqrt(0.5);
  CHECK(theorem_bound("ir", opt) == doctest::Approx(1459.9539483130397).epsilon(1e-12));

  BoundParams small = p;
  small.horizon = 20;  // T <= 2K
  CHECK_THROWS_AS(theorem_bound("truthfulness", small), PreconditionError);
  CHECK_THROWS_AS(theorem_bound("no-such-theorem", p), UsageError);
}

TEST_CASE("bounds grow with the horizon") {
  BoundParams p;
  p.n_agents = 4;
  p.explore_rounds = 5;
  p.num_allocations = 3;
  p.sigma = 0.7;
  p.vmax = 2.0;
  p.vali_expl = 0.4;
  for (const char* theorem : {"truthfulness", "ir", "vcg-regret", "welfare-regret",
                              "agent-regret", "seller-regret"}) {
    for (EstMethod est : {EstMethod::Etc, EstMethod::Opt}) {
      for (PriceMethod price : {PriceMethod::Age, PriceMethod::Sel}) {
        p.est_method = est;
        p.price_method = price;
        double previous = 0.0;
        for (std::int64_t horizon : {100, 400, 1600, 6400}) {
          p.horizon = horizon;
          double value = theorem_bound(theorem, p);
          CHECK(value >= previous);
          previous = value;
        }
      }
    }
  }
}

TEST_CASE("seller-favourable pricing costs rationality an n factor") {
  BoundParams p;
  p.n_agents = 10;
  p.horizon = 3000;
  p.explore_rounds = 10;
  p.num_allocations = 2;
  p.sigma = 1.0;
  for (EstMethod est : {EstMethod::Etc, EstMethod::Opt}) {
    p.est_method = est;
    p.price_method = PriceMethod::Age;
    double age = theorem_bound("ir", p);
    p.price_method = PriceMethod::Sel;
    double sel = theorem_bound("ir", p);
    double additive = est == EstMethod::Etc ? 4.0 : 6.0;
    CHECK(sel > age);
    CHECK(sel - additive == doctest::Approx(10.0 * (age - additive)).epsilon(1e-12));
  }
}

TEST_CASE("lower bound value and hypotheses") {
  CHECK(lower_bound_value(2, 512) == doctest::Approx(1.28).epsilon(1e-12));
  CHECK(lower_bound_value(3, 1000) == doctest::Approx(5.039684199579492).epsilon(1e-12));
  CHECK_THROWS_AS(lower_bound_value(2, 200), PreconditionError);  // 200 < 256
  CHECK_THROWS_AS(lower_bound_value(1, 10000), PreconditionError);
}
