"""Common select/feed contract shared by every arm-selection policy."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List

import numpy as np

from aff_core import AffState, init, observe

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BetaParams:
    """Beta posterior hyperparameters of one arm."""

    alpha: float
    beta: float

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)


def argmax_random(scores: np.ndarray, rng: np.random.Generator) -> int:
    """Index of the largest score, ties broken uniformly at random."""
    scores = np.asarray(scores, dtype=np.float64)
    best = np.flatnonzero(scores == scores.max())
    if best.size == 1:
        return int(best[0])
    return int(rng.choice(best))


class Policy(ABC):
    """
    Arm-selection policy driven by the harness loop.

    `choose(t)` returns an arm for global step t (1-based); `feed(arm, y, t)` is
    called exactly once per step with the reward of that arm. During the burn-in
    (`burn_in` pulls per arm) arms are played round-robin.
    """

    name: str = "policy"
    burn_in: int = 1

    def __init__(self, num_arms: int, rng: np.random.Generator):
        if num_arms < 1:
            raise ValueError(f"num_arms must be positive, got {num_arms}")
        self.num_arms = num_arms
        self.rng = rng

    @property
    def burn_in_steps(self) -> int:
        return self.burn_in * self.num_arms

    def choose(self, t: int) -> int:
        """Arm to play at step t."""
        if t <= self.burn_in_steps:
            return (t - 1) % self.num_arms
        return self._select(t)

    @abstractmethod
    def _select(self, t: int) -> int:
        """Post burn-in decision rule."""

    @abstractmethod
    def feed(self, arm: int, y: int, t: int) -> None:
        """Record the reward y observed for arm at step t."""


class AffPolicy(Policy):
    """Policy keeping one adaptive-forgetting-factor estimator per arm."""

    def __init__(self, num_arms: int, rng: np.random.Generator, eta: float, adaptive_eta: bool = False):
        super().__init__(num_arms, rng)
        self.eta = eta
        self.states: List[AffState] = [self.new_state(eta, adaptive_eta) for _ in range(num_arms)]

    @staticmethod
    def new_state(eta: float, adaptive_eta: bool = False) -> AffState:
        # eta = 0 is allowed here: it pins lambda at 1 and recovers the static policy
        return init(eta, adaptive_eta, allow_frozen=True)

    def feed(self, arm: int, y: int, t: int) -> None:
        observe(self.states[arm], y, t)
