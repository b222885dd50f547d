#include "vcglearn/agents.hpp"

#include <doctest.h>

#include <cmath>

#include "vcglearn/instances.hpp"
#include "test_support.hpp"

using namespace vcglearn;
using vcglearn::testing::single_item_market;

TEST_CASE("zero noise realises the value exactly") {
  MarketInstance m = single_item_market({0.37, 0.5}, {}, 0.0);
  std::mt19937_64 rng(1);
  CHECK(realize_reward(m, 0, 0, rng) == 0.37);
  CHECK(realize_reward(m, 1, 1, rng) == 0.0);
}

TEST_CASE("deterministic pairs bypass the noise entirely") {
  MarketInstance m = single_item_benchmark();
  std::mt19937_64 rng(9);
  for (int i = 0; i < m.n_agents; ++i) {
    CHECK(realize_reward(m, i, 1, rng) == 0.0);  // "none" is non-stochastic
  }
  std::mt19937_64 untouched(9);
  CHECK(rng() == untouched());  // no randomness consumed
}

TEST_CASE("sample mean concentrates around the value") {
  MarketInstance m = single_item_market({0.63, 0.2}, {}, 1.0);
  std::mt19937_64 rng(123);
  const int draws = 100000;
  double total = 0.0;
  for (int k = 0; k < draws; ++k) total += realize_reward(m, 0, 0, rng);
  double mean = total / draws;
  CHECK(std::abs(mean - 0.63) < 4.0 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("reports follow the policy") {
  std::mt19937_64 rng(5);
  AgentHistory history;

  auto truthful = AgentPolicy::truthful_rewards();
  CHECK(report(truthful, history, 0, 0.1, 0.37, rng) == 0.37);

  auto squash = AgentPolicy::misreport_affine({0.5, 0.5});
  CHECK(report(squash, history, 1, 0.0, 0.8, rng) == doctest::Approx(0.4));

  auto bids = AgentPolicy::truthful_bids();
  CHECK_FALSE(report(bids, history, 0, 0.1, 0.9, rng).has_value());

  auto fixed = AgentPolicy::misreport_fixed({0.3, 0.3}, {0.0, 0.0});
  CHECK(report(fixed, history, 0, 0.0, 0.77, rng) == doctest::Approx(0.3));

  int seen = 0;
  auto scripted = AgentPolicy::scripted_policy(
      [&seen](const AgentHistory& h, int, double, double realized,
              std::mt19937_64&) -> std::optional<double> {
        seen = static_cast<int>(h.size());
        if (realized < 0.0) return std::nullopt;
        return realized + 0.01;
      });
  history.push_back({0, 0.0, 0.5, 0.5});
  CHECK(report(scripted, history, 0, 0.0, 0.2, rng) == doctest::Approx(0.21));
  CHECK(seen == 1);
  CHECK_FALSE(report(scripted, history, 0, 0.0, -1.0, rng).has_value());
}

TEST_CASE("identity misreport matches truthful reporting") {
  std::mt19937_64 rng(5);
  auto identity = AgentPolicy::misreport_affine({1.0, 1.0});
  for (double x : {0.0, 0.25, 1.3, -0.4}) {
    CHECK(report(identity, {}, 0, 0.2, x, rng) == x);
  }
}

TEST_CASE("paired draws depend only on the draw count per pair and phase") {
  MarketInstance m = single_item_market({0.6, 0.4}, {}, 0.5);
  RewardSampler a(m, 77);
  RewardSampler b(m, 77);
  // Interleave differently; per-(pair, phase) sequences must agree.
  std::vector<double> a_draws, b_draws;
  for (int k = 0; k < 5; ++k) a_draws.push_back(a.realize(m, 0, 0, Phase::Explore));
  a.realize(m, 1, 0, Phase::Explore);  // other pairs use their own streams
  a.realize(m, 0, 0, Phase::Exploit);  // so does the exploit phase
  for (int k = 0; k < 5; ++k) a_draws.push_back(a.realize(m, 0, 0, Phase::Explore));
  for (int k = 0; k < 10; ++k) b_draws.push_back(b.realize(m, 0, 0, Phase::Explore));
  CHECK(a_draws == b_draws);

  RewardSampler c(m, 78);
  bool all_equal = true;
  for (int k = 0; k < 10; ++k) {
    all_equal = all_equal && (c.realize(m, 0, 0, Phase::Explore) == b_draws[k]);
  }
  CHECK_FALSE(all_equal);  // different seed, different stream
}
