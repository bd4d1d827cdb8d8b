"""Parameter grids: best-epsilon selection and sensitivity sweeps."""

import logging
from typing import Callable, List, Optional, Sequence, Tuple, Union

from observability import traced
from policies.constants import POLICY_EPS_GREEDY, PARAM_EPSILON, PARAM_TARGETS
from .config import ExperimentConfig, PolicySpec
from .runner import ReplicationResult, run_experiment
from .summary import SummaryStats

logger = logging.getLogger(__name__)

StepSink = Optional[Callable[[ReplicationResult], None]]


@traced("epsilon_grid_best")
def epsilon_grid_best(
    config: ExperimentConfig,
    grid: Sequence[float],
    step_sink: StepSink = None,
) -> Tuple[float, SummaryStats]:
    """
    Run epsilon-Greedy for every grid value on the same replication seeds and
    return the value with the lowest mean total regret (first one on ties).

    When `step_sink` is given, only the winning value's replications reach it.
    The winner is re-run alone on its own streams, which reproduces the grid
    run exactly.
    """
    if not grid:
        raise ValueError("epsilon grid is empty")
    base = next((p for p in config.policies if p.name == POLICY_EPS_GREEDY), None)
    if base is None:
        base = PolicySpec(name=POLICY_EPS_GREEDY)
    variants = [base.with_value(PARAM_EPSILON, float(e)) for e in grid]
    stats = run_experiment(config.with_policies(variants))

    best_index = 0
    for i, s in enumerate(stats):
        if s.mean < stats[best_index].mean:
            best_index = i
    best = float(grid[best_index])
    logger.info(f"Best epsilon over {len(grid)} grid values: {best} (mean total regret {stats[best_index].mean:.3f})")
    if step_sink is not None:
        stats[best_index] = run_experiment(config.with_policies([variants[best_index]]), step_sink=step_sink)[0]
    return best, stats[best_index]


@traced("sensitivity_sweep")
def sensitivity_sweep(
    config: ExperimentConfig,
    parameter: str,
    values: Sequence[Union[float, str]],
    include_baselines: bool = True,
    step_sink: StepSink = None,
) -> List[SummaryStats]:
    """
    Re-run every policy that takes `parameter` once per value, over shared
    seeds. Policies that do not take it run once as benchmarks unless
    `include_baselines` is False.
    """
    if not values:
        raise ValueError(f"no values given for sweep parameter '{parameter}'")
    if parameter not in PARAM_TARGETS:
        raise ValueError(f"unknown sweep parameter '{parameter}'")
    targets = [p for p in config.policies if p.name in PARAM_TARGETS[parameter]]
    if not targets:
        raise ValueError(f"no configured policy takes sweep parameter '{parameter}'")

    variants: List[PolicySpec] = [spec.with_value(parameter, value) for value in values for spec in targets]
    if include_baselines:
        variants += [p for p in config.policies if p.name not in PARAM_TARGETS[parameter]]
    logger.info(f"Sweeping {parameter} over {len(values)} values for {len(targets)} policies")
    return run_experiment(config.with_policies(variants), step_sink=step_sink)
