#include "vcglearn/estimator.hpp"

#include <doctest.h>

#include <cmath>

using namespace vcglearn;

namespace {

EstimatorConfig etc_config(double sigma = 1.0, int allocations = 2, std::int64_t K = 2) {
  return EstimatorConfig{EstMethod::Etc, sigma, allocations, K};
}

EstimatorConfig opt_config(double sigma = 1.0, int allocations = 2, std::int64_t K = 2) {
  return EstimatorConfig{EstMethod::Opt, sigma, allocations, K};
}

}  // namespace

TEST_CASE("beta_t vanishes when both logarithms do") {
  CHECK(beta_t(1, 1) == 0.0);
  CHECK(beta_t(2, 2) == doctest::Approx(std::sqrt(7.0 * std::log(2.0))));
  CHECK_THROWS_AS(beta_t(0, 2), PreconditionError);
}

TEST_CASE("beta_t grows through an exploit phase") {
  double previous = 0.0;
  for (std::int64_t elapsed = 1; elapsed <= 64; ++elapsed) {
    double value = beta_t(elapsed, 3);
    CHECK(value >= previous);
    previous = value;
  }
}

TEST_CASE("etc retains one explore report per allocation per bracket") {
  AgentStats stats(2);
  auto config = etc_config();
  stats.begin_bracket();
  stats.record_reward(config, 0, 0.8, Phase::Explore);
  stats.record_reward(config, 0, 0.1, Phase::Explore);  // duplicate coverage round
  CHECK(stats.count(0) == 1);
  CHECK(stats.sum(0) == doctest::Approx(0.8));  // first occurrence kept

  stats.record_reward(config, 0, 0.5, Phase::Exploit);  // ignored under etc
  CHECK(stats.count(0) == 1);
  CHECK(stats.sum(0) == doctest::Approx(0.8));

  stats.begin_bracket();
  stats.record_reward(config, 0, 0.4, Phase::Explore);
  CHECK(stats.count(0) == 2);
}

TEST_CASE("opt retains every report from every phase") {
  AgentStats stats(2);
  auto config = opt_config();
  stats.begin_bracket();
  stats.record_reward(config, 1, 0.3, Phase::Explore);
  stats.record_reward(config, 1, 0.5, Phase::Exploit);
  stats.record_reward(config, 1, 0.7, Phase::Exploit);
  CHECK(stats.count(1) == 3);
  CHECK(stats.sum(1) == doctest::Approx(1.5));
}

TEST_CASE("reports are validated") {
  AgentStats stats(2);
  auto config = etc_config();
  CHECK_THROWS_AS(stats.record_reward(config, 0, std::nan(""), Phase::Explore), InputError);
  CHECK_THROWS_AS(stats.record_reward(config, 7, 0.5, Phase::Explore), InputError);

  AgentStats bidder(2);
  bidder.set_bid({0.4, 0.0});
  CHECK_THROWS_AS(bidder.record_reward(config, 0, 0.5, Phase::Explore), UsageError);
}

TEST_CASE("confidence for bidders is the degenerate bid triple") {
  AgentStats bidder(2);
  bidder.set_bid({0.4, 0.0});
  auto triple = bidder.confidence(etc_config(), 0, 5, 1);
  CHECK(triple.lcb == 0.4);
  CHECK(triple.mean == 0.4);
  CHECK(triple.ucb == 0.4);
}

TEST_CASE("confidence clips the mean but not the bounds") {
  // Two retained samples {1.5, 0.7}: raw mean 1.1 clips to 1.0. With
  // sigma=1, |S|=2 and t-qK+1 = 2 the width multiplier is sqrt(7 ln 2).
  AgentStats stats(2);
  auto config = opt_config(1.0, 2, 2);
  stats.begin_bracket();
  stats.record_reward(config, 0, 1.5, Phase::Explore);
  stats.record_reward(config, 0, 0.7, Phase::Explore);
  auto triple = stats.confidence(config, 0, 5, 2);  // t - qK + 1 = 2
  CHECK(triple.mean == 1.0);
  CHECK(triple.ucb == doctest::Approx(2.5575670553654533).epsilon(1e-12));
  CHECK(triple.lcb == doctest::Approx(-0.557567055365453).epsilon(1e-12));

  // Degenerate multiplier: t - qK + 1 = 1 with a single allocation.
  AgentStats single(1);
  auto config1 = opt_config(1.0, 1, 2);
  single.begin_bracket();
  single.record_reward(config1, 0, 0.25, Phase::Explore);
  auto flat = single.confidence(config1, 0, 4, 2);  // 4 - 4 + 1 = 1
  CHECK(flat.lcb == flat.mean);
  CHECK(flat.ucb == flat.mean);
  CHECK(flat.mean == doctest::Approx(0.25));
}

TEST_CASE("confidence requires a sample") {
  AgentStats stats(2);
  CHECK_THROWS_AS(stats.confidence(etc_config(), 0, 5, 1), PreconditionError);
}

TEST_CASE("bids lock at round one") {
  AgentStats stats(2);
  stats.lock_bids();
  CHECK_THROWS_AS(stats.set_bid({0.1, 0.2}), UsageError);

  AgentStats early(2);
  CHECK_THROWS_AS(early.set_bid({1.5, 0.0}), InputError);
  CHECK_NOTHROW(early.set_bid({1.0, 0.0}));
  CHECK(early.by_bids());
}

TEST_CASE("triples keep lcb <= mean <= ucb with symmetric width") {
  AgentStats stats(3);
  auto config = opt_config(0.7, 3, 4);
  stats.begin_bracket();
  for (int s = 0; s < 3; ++s) {
    stats.record_reward(config, s, 0.2 * s, Phase::Explore);
    stats.record_reward(config, s, 0.9 - 0.3 * s, Phase::Exploit);
  }
  for (std::int64_t t = 9; t < 40; t += 7) {
    for (int s = 0; s < 3; ++s) {
      auto triple = stats.confidence(config, s, t, 2);
      CHECK(triple.lcb <= triple.mean);
      CHECK(triple.mean <= triple.ucb);
      CHECK(triple.mean >= 0.0);
      CHECK(triple.mean <= 1.0);
      CHECK(triple.ucb - triple.mean == doctest::Approx(triple.mean - triple.lcb));
      double expected_width = 0.7 * beta_t(t - 2 * 4 + 1, 3) / std::sqrt(2.0);
      CHECK(triple.ucb - triple.lcb == doctest::Approx(2 * expected_width));
    }
  }
}
