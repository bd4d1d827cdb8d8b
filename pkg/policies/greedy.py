"""Greedy policies: epsilon-Greedy on sample means and AFF-d-Greedy."""

import logging
from typing import Sequence

import numpy as np

from aff_core import AffState, mean
from .base import Policy, AffPolicy, argmax_random
from .constants import POLICY_EPS_GREEDY, POLICY_AFF_D_GREEDY

logger = logging.getLogger(__name__)


def select_eps_greedy(estimates: Sequence[float], epsilon: float, rng: np.random.Generator) -> int:
    """
    With probability epsilon pick a uniform arm, otherwise the best estimate.

    Args:
        estimates: Per-arm sample means
        epsilon: Exploration probability
        rng: Decision randomness

    Returns:
        Selected arm index
    """
    estimates = np.asarray(estimates, dtype=np.float64)
    if rng.random() < epsilon:
        return int(rng.integers(estimates.size))
    return argmax_random(estimates, rng)


def select_aff_d_greedy(states: Sequence[AffState], d: float, rng: np.random.Generator) -> int:
    """
    Greedy on AFF means unless the leading arm's forgetting factor just moved by d or more.

    Args:
        states: Per-arm estimators (each observed at least once)
        d: Threshold on |lambda - lambda_prev| of the greedy arm
        rng: Decision randomness

    Returns:
        The greedy arm, or a uniformly drawn arm (greedy arm included) when the threshold is hit
    """
    leader = argmax_random(np.array([mean(s) for s in states]), rng)
    state = states[leader]
    if abs(state.lambda_ - state.lambda_prev) >= d:
        return int(rng.integers(len(states)))
    return leader


class EpsilonGreedy(Policy):
    """epsilon-Greedy with incrementally maintained sample means."""

    name = POLICY_EPS_GREEDY

    def __init__(self, num_arms: int, rng: np.random.Generator, epsilon: float):
        super().__init__(num_arms, rng)
        self.epsilon = epsilon
        self.counts = np.zeros(num_arms)
        self.sums = np.zeros(num_arms)

    def _select(self, t: int) -> int:
        return select_eps_greedy(self.sums / self.counts, self.epsilon, self.rng)

    def feed(self, arm: int, y: int, t: int) -> None:
        self.counts[arm] += 1
        self.sums[arm] += y


class AffDGreedy(AffPolicy):
    """AFF-d-Greedy: exploration triggered by volatility of the leader's forgetting factor."""

    name = POLICY_AFF_D_GREEDY

    def __init__(self, num_arms: int, rng: np.random.Generator, eta: float, d: float, adaptive_eta: bool = False):
        super().__init__(num_arms, rng, eta, adaptive_eta)
        self.d = d

    def _select(self, t: int) -> int:
        return select_aff_d_greedy(self.states, self.d, self.rng)
