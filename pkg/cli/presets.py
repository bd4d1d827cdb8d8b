"""Canned experiments for each benchmark family."""

import logging
from typing import Dict, List, Optional, Sequence

from environments.constants import CASES, CASE_ARMS, MODEL_SMALL_CHANGE
from harness import EnvSpec, ExperimentConfig, PolicySpec, SweepSpec
from harness.constants import DEFAULT_HORIZON, DEFAULT_REPLICATIONS, DEFAULT_SEED, EPSILON_GRID
from policies.constants import (
    BASELINE_POLICIES,
    AFF_POLICIES,
    POLICY_D_UCB,
    POLICY_SW_UCB,
    POLICY_DTS,
    POLICY_AFF_DTS1,
    POLICY_AFF_DTS2,
    POLICY_AFF_OTS,
    PARAM_ETA,
    PARAM_LAMBDA_FIXED,
    PARAM_W,
    PARAM_C,
    AUTO,
    ETA_MODE_ADAPTIVE,
)
from .config_parser import ConfigError

logger = logging.getLogger(__name__)

PRESET_SMALL_CHANGE = "small-change"
PRESET_LARGE_ARMS = "large-arms"
PRESET_ETA_SWEEP = "eta-sweep"
PRESET_BASELINE_SWEEP = "baseline-sweep"
PRESET_DTS_C = "dts-c"
CASE_PRESETS = {f"case{n}": n for n in CASES}

PRESET_NAMES = (
    PRESET_SMALL_CHANGE,
    *CASE_PRESETS,
    PRESET_LARGE_ARMS,
    PRESET_ETA_SWEEP,
    PRESET_BASELINE_SWEEP,
    PRESET_DTS_C,
)

LARGE_ARM_COUNTS = (50, 100)
SWEEP_CASE = 3
DTS_C_CASE = 1

ETA_SWEEP_VALUES = [0.0001, 0.001, 0.01, ETA_MODE_ADAPTIVE]
LAMBDA_SWEEP_VALUES = [AUTO, 0.99, 0.8, 0.5]
WINDOW_SWEEP_VALUES = [AUTO, 10.0, 100.0, 1000.0]
C_SWEEP_VALUES = [5.0, 10.0, 100.0, 1000.0]

COMPARISON_POLICIES = BASELINE_POLICIES + AFF_POLICIES


def case_env(case: int, num_arms: Optional[int] = None) -> EnvSpec:
    """Environment of benchmark case 1-4, parameters assigned cyclically over the arms."""
    if case not in CASES:
        raise ConfigError(f"unknown case {case}; expected one of {', '.join(map(str, CASES))}", field="case")
    model, params = CASES[case]
    return EnvSpec(model=model, num_arms=num_arms or CASE_ARMS, **{k: list(v) for k, v in params.items()})


def _policies(names: Sequence[str]) -> List[PolicySpec]:
    return [PolicySpec(name=name) for name in names]


def preset(
    name: str,
    arms: Optional[int] = None,
    case: Optional[int] = None,
    reps: Optional[int] = None,
    seed: Optional[int] = None,
    horizon: Optional[int] = None,
    steps_every: int = 1,
) -> ExperimentConfig:
    """
    Build the configuration of a named benchmark experiment.

    Args:
        name: One of PRESET_NAMES
        arms: Arm count for large-arms (50 or 100)
        case: Benchmark case for large-arms (default 1)
        reps: Replications (default 100)
        seed: Master seed
        horizon: Steps per replication (default 10000)
        steps_every: Keep every k-th step in the step log (0 disables it)

    Raises:
        ConfigError: unknown preset or invalid argument
    """
    comparison = _policies(COMPARISON_POLICIES)
    epsilon_grid: Optional[List[float]] = None
    sweeps: List[SweepSpec] = []

    if name == PRESET_SMALL_CHANGE:
        env = EnvSpec(model=MODEL_SMALL_CHANGE)
        policies, epsilon_grid = comparison, list(EPSILON_GRID)
    elif name in CASE_PRESETS:
        env = case_env(CASE_PRESETS[name])
        policies, epsilon_grid = comparison, list(EPSILON_GRID)
    elif name == PRESET_LARGE_ARMS:
        arms = arms or LARGE_ARM_COUNTS[0]
        if arms not in LARGE_ARM_COUNTS:
            raise ConfigError(f"large-arms runs with 50 or 100 arms, got {arms}", field="arms")
        env = case_env(case or 1, arms)
        policies, epsilon_grid = comparison, list(EPSILON_GRID)
    elif name == PRESET_ETA_SWEEP:
        env = case_env(SWEEP_CASE)
        policies = _policies(AFF_POLICIES)
        sweeps = [SweepSpec(parameter=PARAM_ETA, values=ETA_SWEEP_VALUES)]
    elif name == PRESET_BASELINE_SWEEP:
        env = case_env(SWEEP_CASE)
        policies = _policies((POLICY_D_UCB, POLICY_SW_UCB))
        sweeps = [
            SweepSpec(parameter=PARAM_LAMBDA_FIXED, values=LAMBDA_SWEEP_VALUES),
            SweepSpec(parameter=PARAM_W, values=WINDOW_SWEEP_VALUES),
        ]
    elif name == PRESET_DTS_C:
        env = case_env(DTS_C_CASE)
        policies = _policies((POLICY_DTS, POLICY_AFF_DTS1, POLICY_AFF_DTS2, POLICY_AFF_OTS))
        sweeps = [SweepSpec(parameter=PARAM_C, values=C_SWEEP_VALUES)]
    else:
        raise ConfigError(f"unknown preset '{name}'; expected one of {', '.join(PRESET_NAMES)}", field="preset")

    overrides: Dict[str, int] = {
        "horizon": DEFAULT_HORIZON if horizon is None else horizon,
        "replications": DEFAULT_REPLICATIONS if reps is None else reps,
        "seed": DEFAULT_SEED if seed is None else seed,
        "steps_every": steps_every,
    }
    logger.debug(f"Preset {name}: env={env.model}, arms={env.arms}, policies={len(policies)}")
    return ExperimentConfig(env=env, policies=policies, epsilon_grid=epsilon_grid, sweeps=sweeps, **overrides)
