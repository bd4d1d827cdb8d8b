"""Precomputed mean trajectories shared by all policies of a replication."""

import hashlib
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .models import EnvModel

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ["rep", "t", "arm", "mu"]


@dataclass(frozen=True, eq=False)
class TrajectoryLog:
    """
    Mean matrix for steps 1..T plus the optimal arm per step.

    Row t - 1 of `means` holds mu_t for every arm. Instances are treated as
    read-only once built and may be shared across threads.
    """

    means: np.ndarray
    optimal: np.ndarray
    switch_points: int

    @property
    def horizon(self) -> int:
        return self.means.shape[0]

    @property
    def num_arms(self) -> int:
        return self.means.shape[1]

    def mu(self, t: int, arm: int) -> float:
        return float(self.means[t - 1, arm])

    def mu_opt(self, t: int) -> float:
        return float(self.means[t - 1, self.optimal[t - 1]])

    @property
    def optimal_means(self) -> np.ndarray:
        return self.means[np.arange(self.horizon), self.optimal]

    def digest(self) -> str:
        """Content hash of the mean matrix."""
        return hashlib.sha256(np.ascontiguousarray(self.means).tobytes()).hexdigest()

    def to_frame(self, rep: int) -> pd.DataFrame:
        """Long-format export with 1-based arm numbers."""
        horizon, num_arms = self.means.shape
        return pd.DataFrame({
            "rep": rep,
            "t": np.repeat(np.arange(1, horizon + 1), num_arms),
            "arm": np.tile(np.arange(1, num_arms + 1), horizon),
            "mu": self.means.ravel(),
        }, columns=TRAJECTORY_COLUMNS)


def _switches(optimal: np.ndarray) -> int:
    return int(np.count_nonzero(np.diff(optimal)))


def count_switch_points(log: TrajectoryLog) -> int:
    """Number of steps at which the optimal arm differs from the previous step."""
    return _switches(np.asarray(log.optimal))


def generate_trajectory(model: EnvModel, horizon: int, rng: np.random.Generator) -> TrajectoryLog:
    """Initialize `model` and record its means for steps 1..horizon."""
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    model.initialize(rng)
    means = np.empty((horizon, model.num_arms), dtype=np.float64)
    for row in range(horizon):
        means[row] = model.step_all(rng)
    means.setflags(write=False)
    optimal = np.argmax(means, axis=1)
    optimal.setflags(write=False)
    log = TrajectoryLog(means=means, optimal=optimal, switch_points=_switches(optimal))
    logger.debug(f"Generated {model.name} trajectory: T={horizon}, arms={model.num_arms}, switches={log.switch_points}")
    return log
