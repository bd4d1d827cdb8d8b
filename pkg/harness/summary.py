"""Cross-replication aggregation of regret and correct-selection rates."""

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
import pandas as pd

from .constants import SUMMARY_COLUMNS, CURVE_COLUMNS

logger = logging.getLogger(__name__)


@dataclass
class SummaryStats:
    """Total-regret distribution plus per-step mean curves for one policy."""

    label: str
    policy_name: str
    total_regrets: np.ndarray
    mean: float
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean_cum_regret: np.ndarray
    pct_correct: np.ndarray

    @property
    def reps(self) -> int:
        return int(self.total_regrets.size)


class SummaryAccumulator:
    """
    Running per-step sums for one policy.

    Runs must be added in replication order; floating-point sums then come out
    identical no matter how replications were scheduled.
    """

    def __init__(self, label: str, policy_name: str, horizon: int):
        self.label = label
        self.policy_name = policy_name
        self.cum_regret_sum = np.zeros(horizon, dtype=np.float64)
        self.correct_count = np.zeros(horizon, dtype=np.int64)
        self.totals: List[float] = []

    def add(self, run) -> None:
        cum = run.regret_cum
        self.cum_regret_sum += cum
        self.correct_count += run.correct
        self.totals.append(float(cum[-1]))

    def finalize(self) -> SummaryStats:
        if not self.totals:
            raise ValueError(f"no replications recorded for policy '{self.label}'")
        reps = len(self.totals)
        totals = np.asarray(self.totals)
        q1, median, q3 = np.percentile(totals, [25, 50, 75])
        return SummaryStats(
            label=self.label,
            policy_name=self.policy_name,
            total_regrets=totals,
            mean=float(totals.mean()),
            min=float(totals.min()),
            q1=float(q1),
            median=float(median),
            q3=float(q3),
            max=float(totals.max()),
            mean_cum_regret=self.cum_regret_sum / reps,
            pct_correct=100.0 * self.correct_count / reps,
        )


def summarize(label: str, policy_name: str, runs: Sequence) -> SummaryStats:
    """Summary of a list of PolicyRuns given in replication order."""
    if not runs:
        raise ValueError(f"no replications recorded for policy '{label}'")
    acc = SummaryAccumulator(label, policy_name, len(runs[0].arms))
    for run in runs:
        acc.add(run)
    return acc.finalize()


def summary_frame(stats: Sequence[SummaryStats]) -> pd.DataFrame:
    return pd.DataFrame(
        [[s.label, s.reps, s.mean, s.min, s.q1, s.median, s.q3, s.max] for s in stats],
        columns=SUMMARY_COLUMNS,
    )


def curves_frame(stats: Sequence[SummaryStats], every: int = 1) -> pd.DataFrame:
    every = max(every, 1)
    frames = []
    for s in stats:
        horizon = s.mean_cum_regret.size
        keep = np.arange(every - 1, horizon, every)
        frames.append(pd.DataFrame({
            "policy": s.label,
            "t": keep + 1,
            "mean_cum_regret": s.mean_cum_regret[keep],
            "pct_correct": s.pct_correct[keep],
        }, columns=CURVE_COLUMNS))
    if not frames:
        return pd.DataFrame(columns=CURVE_COLUMNS)
    return pd.concat(frames, ignore_index=True)
