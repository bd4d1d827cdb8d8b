"""Reference policies used to validate regret accounting."""

import numpy as np

from .base import Policy
from .constants import POLICY_ORACLE, POLICY_FIXED_ARM


class FixedArm(Policy):
    """Always plays the same arm."""

    name = POLICY_FIXED_ARM
    burn_in = 0

    def __init__(self, num_arms: int, rng: np.random.Generator, arm: int = 0):
        super().__init__(num_arms, rng)
        if not 0 <= arm < num_arms:
            raise ValueError(f"arm must lie in [0, {num_arms - 1}], got {arm}")
        self.arm = arm

    def _select(self, t: int) -> int:
        return self.arm

    def feed(self, arm: int, y: int, t: int) -> None:
        pass


class Oracle(Policy):
    """Plays the true optimal arm of the bound trajectory at every step."""

    name = POLICY_ORACLE
    burn_in = 0

    def __init__(self, num_arms: int, rng: np.random.Generator):
        super().__init__(num_arms, rng)
        self.optimal = None

    def bind(self, optimal: np.ndarray) -> None:
        """Attach the per-step optimal arm indices (index t - 1 for step t)."""
        self.optimal = np.asarray(optimal)

    def _select(self, t: int) -> int:
        if self.optimal is None:
            raise RuntimeError("oracle policy used before a trajectory was bound")
        return int(self.optimal[t - 1])

    def feed(self, arm: int, y: int, t: int) -> None:
        pass
