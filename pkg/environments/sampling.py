"""Bernoulli reward draws."""

import numpy as np

from .trajectory import TrajectoryLog


def sample_reward(mu: float, rng: np.random.Generator) -> int:
    """Draw a Bernoulli(mu) reward."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mean reward must lie in [0, 1], got {mu}")
    return int(rng.random() < mu)


def reward_matrix(log: TrajectoryLog, rng: np.random.Generator) -> np.ndarray:
    """Pregenerated T x |A| reward table for common-random-numbers runs."""
    rewards = (rng.random(log.means.shape) < log.means).astype(np.int8)
    rewards.setflags(write=False)
    return rewards
