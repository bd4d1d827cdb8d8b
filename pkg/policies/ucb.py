"""Upper-confidence-bound policies: UCB, D-UCB, SW-UCB and the two AFF variants."""

import math
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Sequence, Tuple

import numpy as np

from aff_core import mean
from .base import Policy, AffPolicy, argmax_random
from .bonuses import aff_ucb1_bonus, aff_ucb2_bonus, ucb_bonus
from .constants import (
    POLICY_UCB,
    POLICY_D_UCB,
    POLICY_SW_UCB,
    POLICY_AFF_UCB1,
    POLICY_AFF_UCB2,
    DEFAULT_BASELINE_XI,
    DEFAULT_D_UCB_B,
    DEFAULT_HOEFFDING_XI,
    DEFAULT_M,
)

logger = logging.getLogger(__name__)


def select_ucb(
    sample_means: Sequence[float],
    counts: Sequence[float],
    t: int,
    rng: np.random.Generator,
) -> int:
    """
    UCB1 decision: argmax of mean + sqrt(2 ln t / N).

    Args:
        sample_means: Per-arm sample means
        counts: Per-arm pull counts
        t: Total number of pulls so far
        rng: Tie-break randomness
    """
    scores = np.array([m + ucb_bonus(t, n) for m, n in zip(sample_means, counts)])
    return argmax_random(scores, rng)


class UCB(Policy):
    """UCB1 on sample means."""

    name = POLICY_UCB

    def __init__(self, num_arms: int, rng: np.random.Generator):
        super().__init__(num_arms, rng)
        self.counts = np.zeros(num_arms)
        self.sums = np.zeros(num_arms)

    def _select(self, t: int) -> int:
        return select_ucb(self.sums / self.counts, self.counts, int(self.counts.sum()), self.rng)

    def feed(self, arm: int, y: int, t: int) -> None:
        self.counts[arm] += 1
        self.sums[arm] += y


@dataclass
class DiscountedCounts:
    """Per-arm discounted reward sums and discounted pull counts under a fixed factor."""

    sums: np.ndarray
    counts: np.ndarray

    @classmethod
    def empty(cls, num_arms: int) -> "DiscountedCounts":
        return cls(sums=np.zeros(num_arms), counts=np.zeros(num_arms))

    def update(self, arm: int, y: float, lambda_fixed: float) -> None:
        """Decay every arm, then credit the selected one."""
        self.sums *= lambda_fixed
        self.counts *= lambda_fixed
        self.sums[arm] += y
        self.counts[arm] += 1.0


def select_d_ucb(
    counts: DiscountedCounts,
    rng: np.random.Generator,
    xi: float = DEFAULT_BASELINE_XI,
    bound: float = DEFAULT_D_UCB_B,
) -> int:
    """
    D-UCB decision: discounted mean + 2B sqrt(xi ln n_t / N_t(a)) with n_t the total discounted count.
    """
    n_total = counts.counts.sum()
    log_term = max(math.log(n_total), 0.0) if n_total > 0 else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        means = np.where(counts.counts > 0, counts.sums / counts.counts, 0.0)
        bonus = np.where(
            counts.counts > 0,
            2.0 * bound * np.sqrt(xi * log_term / counts.counts),
            np.inf,
        )
    return argmax_random(means + bonus, rng)


class DiscountedUCB(Policy):
    """Discounted UCB with a fixed forgetting factor."""

    name = POLICY_D_UCB

    def __init__(
        self,
        num_arms: int,
        rng: np.random.Generator,
        lambda_fixed: float,
        xi: float = DEFAULT_BASELINE_XI,
        bound: float = DEFAULT_D_UCB_B,
    ):
        super().__init__(num_arms, rng)
        self.lambda_fixed = lambda_fixed
        self.xi = xi
        self.bound = bound
        self.state = DiscountedCounts.empty(num_arms)

    def _select(self, t: int) -> int:
        return select_d_ucb(self.state, self.rng, self.xi, self.bound)

    def feed(self, arm: int, y: int, t: int) -> None:
        self.state.update(arm, y, self.lambda_fixed)


@dataclass
class SlidingWindow:
    """FIFO history of the last W (arm, reward) pairs with per-arm window tallies."""

    size: int
    num_arms: int
    history: Deque[Tuple[int, float]] = field(default_factory=deque)
    counts: np.ndarray = field(init=False)
    sums: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"window size must be at least 1, got {self.size}")
        self.counts = np.zeros(self.num_arms)
        self.sums = np.zeros(self.num_arms)

    def push(self, arm: int, y: float) -> None:
        if len(self.history) == self.size:
            old_arm, old_y = self.history.popleft()
            self.counts[old_arm] -= 1
            self.sums[old_arm] -= old_y
        self.history.append((arm, y))
        self.counts[arm] += 1
        self.sums[arm] += y

    def __len__(self) -> int:
        return len(self.history)


def select_sw_ucb(window: SlidingWindow, rng: np.random.Generator, xi: float = DEFAULT_BASELINE_XI) -> int:
    """
    SW-UCB decision on window statistics: mean + sqrt(xi ln min(t, W) / N_window(a)).

    Arms absent from the window score +inf.
    """
    log_term = math.log(len(window)) if len(window) > 1 else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        scores = np.where(
            window.counts > 0,
            window.sums / window.counts + np.sqrt(xi * log_term / window.counts),
            np.inf,
        )
    return argmax_random(scores, rng)


class SlidingWindowUCB(Policy):
    """UCB restricted to the last W steps."""

    name = POLICY_SW_UCB

    def __init__(self, num_arms: int, rng: np.random.Generator, window: int, xi: float = DEFAULT_BASELINE_XI):
        super().__init__(num_arms, rng)
        self.xi = xi
        self.window = SlidingWindow(size=int(window), num_arms=num_arms)

    def _select(self, t: int) -> int:
        return select_sw_ucb(self.window, self.rng, self.xi)

    def feed(self, arm: int, y: int, t: int) -> None:
        self.window.push(arm, y)


class AffUCB1(AffPolicy):
    """AFF-UCB1: Hoeffding bonus for fresh arms, variance bonus inflating with idle time."""

    name = POLICY_AFF_UCB1

    def __init__(
        self,
        num_arms: int,
        rng: np.random.Generator,
        eta: float,
        burn_in: int = DEFAULT_M,
        xi: float = DEFAULT_HOEFFDING_XI,
        adaptive_eta: bool = False,
    ):
        super().__init__(num_arms, rng, eta, adaptive_eta)
        self.burn_in = int(burn_in)
        self.xi = xi

    def _select(self, t: int) -> int:
        t_now = t - 1
        scores = np.array([
            mean(s) + aff_ucb1_bonus(s, t_now, self.num_arms, self.xi) for s in self.states
        ])
        return argmax_random(scores, self.rng)


class AffUCB2(AffPolicy):
    """AFF-UCB2: Hoeffding bonus on idle-discounted weight sums."""

    name = POLICY_AFF_UCB2

    def __init__(
        self,
        num_arms: int,
        rng: np.random.Generator,
        eta: float,
        xi: float = DEFAULT_HOEFFDING_XI,
        adaptive_eta: bool = False,
    ):
        super().__init__(num_arms, rng, eta, adaptive_eta)
        self.xi = xi

    def score(self, arm: int, t_now: int) -> float:
        # discounted mean m~/w~ equals m/w for every gap
        state = self.states[arm]
        return mean(state) + aff_ucb2_bonus(state, t_now, self.num_arms, self.xi)

    def _select(self, t: int) -> int:
        scores = np.array([self.score(arm, t - 1) for arm in range(self.num_arms)])
        return argmax_random(scores, self.rng)
