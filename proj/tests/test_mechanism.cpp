#include "vcglearn/mechanism.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

#include "vcglearn/instances.hpp"
#include "test_support.hpp"

using namespace vcglearn;
using vcglearn::testing::product_market;
using vcglearn::testing::single_item_market;

namespace {

std::vector<AgentStats> bidder_stats(const MarketInstance& m) {
  std::vector<AgentStats> stats;
  for (int i = 0; i < m.n_agents; ++i) {
    stats.emplace_back(m.num_allocations());
    stats.back().set_bid(m.agent_values[i]);
  }
  return stats;
}

struct LoopContext {
  std::vector<AgentPolicy> policies;
  RewardSampler sampler;
  std::vector<std::mt19937_64> rngs;

  LoopContext(const MarketInstance& m, std::vector<AgentPolicy> p, std::uint64_t seed = 1)
      : policies(std::move(p)), sampler(m, seed) {
    for (int i = 0; i < m.n_agents; ++i) rngs.emplace_back(split_seed(seed, i, 0x504f4cULL));
  }
};

}  // namespace

TEST_CASE("bracket lengths follow floor(5/6 K sqrt(q))") {
  CHECK(bracket_lengths(1, 2) == std::pair<std::int64_t, std::int64_t>{2, 1});
  CHECK(bracket_lengths(4, 2) == std::pair<std::int64_t, std::int64_t>{2, 3});
  CHECK(bracket_lengths(1, 6) == std::pair<std::int64_t, std::int64_t>{6, 5});
  CHECK(bracket_lengths(1, 1).second == 0);  // first bracket of K=1 has no exploit rounds
  CHECK_THROWS_AS(bracket_lengths(0, 2), InputError);
}

TEST_CASE("phase_of_round walks the bracket schedule") {
  struct Expected {
    std::int64_t t;
    std::int64_t q;
    Phase phase;
  };
  const Expected table[] = {
      {1, 1, Phase::Explore}, {2, 1, Phase::Explore}, {3, 1, Phase::Exploit},
      {4, 2, Phase::Explore}, {5, 2, Phase::Explore}, {6, 2, Phase::Exploit},
      {7, 2, Phase::Exploit}, {8, 3, Phase::Explore}, {9, 3, Phase::Explore},
      {10, 3, Phase::Exploit}, {11, 3, Phase::Exploit},
  };
  for (const auto& row : table) {
    BracketPosition pos = phase_of_round(row.t, 2);
    CHECK(pos.bracket_q == row.q);
    CHECK(pos.phase == row.phase);
  }
  CHECK(phase_of_round(1, 7).phase == Phase::Explore);
  CHECK(phase_of_round(1, 7).offset == 0);
}

TEST_CASE("incremental clock agrees with direct location") {
  for (std::int64_t K : {1, 2, 3, 10}) {
    BracketClock clock(K);
    for (std::int64_t t = 1; t <= 500; ++t) {
      BracketPosition inc = clock.advance();
      BracketPosition direct = phase_of_round(t, K);
      CHECK(inc.round_t == t);
      CHECK(inc.bracket_q == direct.bracket_q);
      CHECK(inc.phase == direct.phase);
      CHECK(inc.offset == direct.offset);
    }
  }
}

TEST_CASE("explore schedule covers every pair in K rounds") {
  // Product market: the |S| diagonal outcomes suffice.
  MarketInstance prod = product_market({{0.1, 0.5, 0.9}, {0.2, 0.6, 0.4}});
  auto schedule = build_explore_schedule(prod);
  CHECK(schedule.size() == 3);

  MarketInstance item = single_item_market(std::vector<double>(10, 0.5));
  auto item_schedule = build_explore_schedule(item);
  CHECK(item_schedule.size() == 10);
  std::set<int> distinct(item_schedule.begin(), item_schedule.end());
  CHECK(distinct.size() == 10);

  for (const MarketInstance* m : {&prod, &item}) {
    auto sched = build_explore_schedule(*m);
    for (int i = 0; i < m->n_agents; ++i) {
      std::set<int> seen;
      for (int w : sched) seen.insert(m->allocation_of(i, w));
      CHECK(static_cast<int>(seen.size()) == m->num_allocations());
    }
  }

  MarketInstance starved = single_item_market({0.5, 0.5});
  starved.explore_rounds_K = 1;
  CHECK_THROWS_AS(build_explore_schedule(starved), InstanceError);
}

TEST_CASE("truthful bids make the optimistic choice the vcg outcome") {
  MarketInstance m = single_item_market({0.4, 0.8, 0.3});
  auto stats = bidder_stats(m);
  // K = 3, bracket 1 exploit starts at t = 4.
  CHECK(select_outcome(stats, m, 4, 1) == vcg_solve(m).optimal_outcome);
  CHECK_THROWS_AS(select_outcome(stats, m, 1, 1), UsageError);
}

TEST_CASE("optimistic ties resolve to the lowest outcome") {
  MarketInstance m = single_item_market({0.6, 0.6});
  auto stats = bidder_stats(m);
  CHECK(select_outcome(stats, m, 3, 1) == 0);
}

TEST_CASE("noiseless explore data already identifies the welfare argmax") {
  MarketInstance m = single_item_market({0.9, 0.2, 0.6}, {}, 0.0);
  std::vector<AgentPolicy> policies(3, AgentPolicy::truthful_rewards());
  MechanismState state(m, {EstMethod::Etc, PriceMethod::Age});
  state.collect_bids(policies);
  LoopContext ctx(m, policies);
  for (int t = 0; t < 3; ++t) state.step(ctx.policies, ctx.sampler, ctx.rngs, nullptr);
  RoundRecord first_exploit = state.step(ctx.policies, ctx.sampler, ctx.rngs, nullptr);
  CHECK(first_exploit.phase == Phase::Exploit);
  CHECK(first_exploit.outcome == vcg_solve(m).optimal_outcome);
}

TEST_CASE("prices from explicit tables follow the F/G rule") {
  // Two agents, single item; agent 2's interval is [0.1, 0.5] on the item
  // and degenerate zero off it. Outcome 0 assigns the item to agent 1.
  MarketInstance m = single_item_market({0.9, 0.2});
  std::vector<std::vector<double>> lcb = {{0.0, 0.0}, {0.1, 0.0}};
  std::vector<std::vector<double>> ucb = {{0.0, 0.0}, {0.5, 0.0}};
  PricingResult age = prices_from_tables(m, lcb, ucb, 0);
  CHECK(age.prices[0] == doctest::Approx(0.1));
  PricingResult sel = prices_from_tables(m, ucb, lcb, 0);
  CHECK(sel.prices[0] == doctest::Approx(0.5));
}

TEST_CASE("all-bidder prices reduce to vcg prices under both methods") {
  MarketInstance m = single_item_market({0.9, 0.2, 0.55});
  auto stats = bidder_stats(m);
  VcgSolution sol = vcg_solve(m);
  for (PriceMethod price : {PriceMethod::Age, PriceMethod::Sel}) {
    auto prices =
        compute_prices(stats, m, sol.optimal_outcome, 5, 1, {EstMethod::Etc, price});
    for (int i = 0; i < m.n_agents; ++i) {
      CHECK(prices[i] == doctest::Approx(sol.prices[i]).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(compute_prices(stats, m, 0, 1, 1, MechanismConfig{}), UsageError);
}

TEST_CASE("a lone agent pays nothing when the seller is indifferent") {
  MarketInstance m = product_market({{0.3, 0.8}});
  std::vector<AgentStats> stats;
  stats.emplace_back(2);
  stats.back().set_bid({0.3, 0.8});
  auto prices = compute_prices(stats, m, 1, 3, 1, MechanismConfig{});
  CHECK(prices[0] == 0.0);
}

TEST_CASE("explore rounds charge zero and follow the schedule") {
  MarketInstance m = single_item_market({0.7, 0.4, 0.2}, {}, 0.3);
  std::vector<AgentPolicy> policies(3, AgentPolicy::truthful_rewards());
  MechanismState state(m, {EstMethod::Etc, PriceMethod::Sel});
  state.collect_bids(policies);
  LoopContext ctx(m, policies);
  for (int t = 1; t <= 3; ++t) {
    RoundRecord rec = state.step(ctx.policies, ctx.sampler, ctx.rngs, nullptr);
    CHECK(rec.phase == Phase::Explore);
    CHECK(rec.outcome == state.explore_schedule()[t - 1]);
    for (double p : rec.prices) CHECK(p == 0.0);
    for (auto& y : rec.reported) CHECK(y.has_value());
  }
  for (int i = 0; i < 3; ++i) {
    for (int s = 0; s < 2; ++s) CHECK(state.stats()[i].count(s) == 1);
  }
}

TEST_CASE("etc ignores exploit reports, opt consumes them") {
  MarketInstance m = single_item_market({0.7, 0.4}, {}, 0.2);
  std::vector<AgentPolicy> policies(2, AgentPolicy::truthful_rewards());
  for (EstMethod est : {EstMethod::Etc, EstMethod::Opt}) {
    MechanismState state(m, {est, PriceMethod::Age});
    state.collect_bids(policies);
    LoopContext ctx(m, policies);
    for (int t = 1; t <= 2; ++t) state.step(ctx.policies, ctx.sampler, ctx.rngs, nullptr);
    RoundRecord rec = state.step(ctx.policies, ctx.sampler, ctx.rngs, nullptr);
    CHECK(rec.phase == Phase::Exploit);
    CHECK(rec.reported[0].has_value());  // kept in the record either way
    std::int64_t winner_count = state.stats()[rec.outcome].count(0);
    if (est == EstMethod::Etc) {
      CHECK(winner_count == 1);  // explore sample only
    } else {
      CHECK(winner_count == 2);
    }
  }
}

TEST_CASE("etc widths are allocation-independent and argmaxes coincide") {
  MarketInstance m = single_item_market({0.9, 0.5, 0.3}, {}, 0.8);
  std::vector<AgentPolicy> policies(3, AgentPolicy::truthful_rewards());
  MechanismState state(m, {EstMethod::Etc, PriceMethod::Age});
  state.collect_bids(policies);
  LoopContext ctx(m, policies, 42);
  std::int64_t checked = 0;
  for (int t = 1; t <= 200; ++t) {
    RoundRecord rec = state.step(ctx.policies, ctx.sampler, ctx.rngs, nullptr);
    if (rec.phase != Phase::Exploit) continue;
    ++checked;
    auto config = state.estimator_config();
    int best_ucb = -1, best_lcb = -1, best_mean = -1;
    double top_ucb = -1e300, top_lcb = -1e300, top_mean = -1e300;
    for (int w = 0; w < m.num_outcomes(); ++w) {
      double total_ucb = 0.0, total_lcb = 0.0, total_mean = 0.0;
      for (int i = 0; i < m.n_agents; ++i) {
        auto triple =
            state.stats()[i].confidence(config, m.allocation_of(i, w), rec.round_t,
                                        rec.bracket_q);
        total_ucb += triple.ucb;
        total_lcb += triple.lcb;
        total_mean += triple.mean;
      }
      if (total_ucb > top_ucb) top_ucb = total_ucb, best_ucb = w;
      if (total_lcb > top_lcb) top_lcb = total_lcb, best_lcb = w;
      if (total_mean > top_mean) top_mean = total_mean, best_mean = w;
    }
    // One retained sample per allocation per bracket makes the three
    // objectives vertical shifts of each other.
    CHECK(best_ucb == best_lcb);
    CHECK(best_ucb == best_mean);
    CHECK(rec.outcome == best_ucb);
    for (int i = 0; i < m.n_agents; ++i) {
      for (int s = 0; s < m.num_allocations(); ++s) {
        CHECK(state.stats()[i].count(s) == rec.bracket_q);
      }
    }
    for (int i = 0; i < m.n_agents; ++i) {
      auto item = state.stats()[i].confidence(config, 0, rec.round_t, rec.bracket_q);
      auto none = state.stats()[i].confidence(config, 1, rec.round_t, rec.bracket_q);
      CHECK(item.ucb - item.mean == doctest::Approx(none.ucb - none.mean).epsilon(1e-12));
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("step demands bids before the first round") {
  MarketInstance m = single_item_market({0.7, 0.4});
  MechanismState state(m, MechanismConfig{});
  LoopContext ctx(m, std::vector<AgentPolicy>(2, AgentPolicy::truthful_rewards()));
  CHECK_THROWS_AS(state.step(ctx.policies, ctx.sampler, ctx.rngs, nullptr), UsageError);
}
