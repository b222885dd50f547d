"""Multi-round VCG mechanism simulation with bandit feedback.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (  # noqa: F401
    AgentPolicy,
    AggregateCurves,
    AggregateSeries,
    DeviationResult,
    InputError,
    InstanceError,
    MarketInstance,
    PreconditionError,
    RegretSeries,
    RunResult,
    ScalingFit,
    ScalingPoint,
    UsageError,
    VcgSolution,
    bracket_lengths,
    build_explore_schedule,
    deviation_experiment,
    fit_power_law,
    load_market,
    lower_bound_pair,
    lower_bound_value,
    market_from_json,
    max_welfare_upper_bound,
    phase_of_round,
    random_instance,
    run,
    run_many,
    run_verify_suite,
    scaling_experiment,
    single_item_benchmark,
    theorem_bound,
    vali_expl,
    vcg_solve,
    welfare,
    welfare_without,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
