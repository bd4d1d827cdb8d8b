"""Replicated experiment execution, regret accounting and parameter sweeps."""

from .config import HarnessConfig, EnvSpec, PolicySpec, SweepSpec, ExperimentConfig, format_value
from .seeding import stream, replication_seed, label_key
from .runner import StepRecord, PolicyRun, ReplicationResult, run_policy, run_replication, run_experiment
from .summary import SummaryStats, SummaryAccumulator, summarize, summary_frame, curves_frame
from .sweeps import epsilon_grid_best, sensitivity_sweep

__all__ = [
    "HarnessConfig",
    "EnvSpec",
    "PolicySpec",
    "SweepSpec",
    "ExperimentConfig",
    "format_value",
    "stream",
    "replication_seed",
    "label_key",
    "StepRecord",
    "PolicyRun",
    "ReplicationResult",
    "run_policy",
    "run_replication",
    "run_experiment",
    "SummaryStats",
    "SummaryAccumulator",
    "summarize",
    "summary_frame",
    "curves_frame",
    "epsilon_grid_best",
    "sensitivity_sweep",
]
