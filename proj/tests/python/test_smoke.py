"""Smoke tests for the compiled module: a quick pass over every exposed surface."""

import math

import pytest

import vcglearn as vl


def test_benchmark_and_vcg_solve():
    market = vl.single_item_benchmark()
    assert market.n_agents == 10
    assert market.num_allocations() == 2
    solution = vl.vcg_solve(market)
    assert solution.optimal_outcome == 0
    assert solution.prices[0] == pytest.approx(0.9 - 0.7 / 9.0)
    assert solution.agent_utilities[1] == pytest.approx(0.0)
    value, exact = vl.max_welfare_upper_bound(market)
    assert exact and value == pytest.approx(0.9)


def test_welfare_matches_python_sum():
    market = vl.random_instance(3, 3, "product", seed=7)
    for outcome in range(market.num_outcomes()):
        by_hand = market.seller_values[outcome] + sum(
            market.agent_values[i][market.allocation_of(i, outcome)] for i in range(3)
        )
        assert vl.welfare(market, outcome) == pytest.approx(by_hand, abs=1e-12)


def test_run_is_deterministic_and_consistent():
    market = vl.single_item_benchmark()
    a = vl.run(market, horizon=200, seed=3, est="opt", price="sel")
    b = vl.run(market, horizon=200, seed=3, est="opt", price="sel")
    assert a.series.vcg_max == b.series.vcg_max
    assert a.welfare_regret >= 0.0
    assert a.agent_sum_regret + a.seller_regret == pytest.approx(a.welfare_regret, abs=1e-9)
    assert a.max_utility_identity_gap <= 1e-9
    assert len(a.series.agent) == 10
    assert len(a.series.welfare) == 200


def test_run_many_and_csv():
    market = vl.random_instance(2, 2, "product", seed=1)
    curves = vl.run_many(market, horizon=30, est="etc", price="age", seeds=[1, 2, 3])
    assert curves.num_seeds == 3
    assert len(curves.welfare.mean) == 30
    csv = curves.to_csv()
    assert csv.splitlines()[0].startswith("t,R_T,R_a,R_mech,R_max")
    assert len(csv.splitlines()) == 31


def test_bounds_and_lower_bound():
    bound = vl.theorem_bound(
        "truthfulness", n=10, horizon=3000, explore_rounds=10,
        num_allocations=2, sigma=1.0, est="etc",
    )
    expected = 10 * math.sqrt(math.log(6000)) * 10 ** (1 / 3) * 3000 ** (2 / 3) + 4
    assert bound == pytest.approx(expected, rel=1e-12)
    assert vl.lower_bound_value(2, 512) == pytest.approx(1.28)
    with pytest.raises(RuntimeError):
        vl.lower_bound_value(2, 200)


def test_identity_deviation_is_free():
    market = vl.single_item_benchmark()
    result = vl.deviation_experiment(
        market, agent=1, deviation=vl.AgentPolicy.truthful_rewards(),
        horizon=60, seeds=[1, 2],
    )
    assert result.per_seed == [0.0, 0.0]


def test_market_json_roundtrip_and_errors():
    market = vl.single_item_benchmark()
    text = market.to_json()
    back = vl.market_from_json(text)
    assert back.to_json() == text
    with pytest.raises(ValueError):
        vl.market_from_json('{"n_agents": 1}')
    with pytest.raises(ValueError):
        vl.random_instance(1, 2, "single_slot", seed=0)


def test_bracket_schedule_helpers():
    assert vl.bracket_lengths(4, 2) == (2, 3)
    q, phase, offset = vl.phase_of_round(1, 5)
    assert (q, phase, offset) == (1, "explore", 0)
    market = vl.single_item_benchmark()
    schedule = vl.build_explore_schedule(market)
    assert sorted(schedule) == list(range(10))


def test_power_law_fit():
    fit = vl.fit_power_law([(t, 2.0 * t ** (2 / 3)) for t in (100.0, 1000.0, 10000.0)])
    assert fit.slope == pytest.approx(2 / 3)
