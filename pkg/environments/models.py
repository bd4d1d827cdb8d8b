"""
Expected-reward models for dynamic Bernoulli bandits.

Each model holds per-arm latent state and advances the mean of one arm
(`step`) or of all arms at once (`step_all`) by one time step. A model must be
initialized with a generator before it can be stepped.
"""

import logging
from abc import ABC, abstractmethod
from typing import Optional, Sequence, Union

import numpy as np
from scipy.special import expit

from .constants import (
    MODEL_FIXED,
    MODEL_SMALL_CHANGE,
    MODEL_EXPONENTIAL_CLOCK,
    MODEL_REFLECTING_WALK,
    MODEL_LOGISTIC_WALK,
    MODEL_PARAMS,
    SMALL_CHANGE_BASE,
    SMALL_CHANGE_JUMP_ARM,
    SMALL_CHANGE_JUMP_MEAN,
    SMALL_CHANGE_JUMP_START,
    SMALL_CHANGE_JUMP_END,
)

logger = logging.getLogger(__name__)

ArmParam = Union[float, Sequence[float]]


def reflect(x):
    """
    Fold a real value back into [0, 1] with reflecting bounds.

    x' = |x| mod 2, returned as is when x' <= 1 and as 2 - x' otherwise.
    Works on scalars and numpy arrays.
    """
    folded = np.mod(np.abs(x), 2.0)
    reflected = np.where(folded <= 1.0, folded, 2.0 - folded)
    if np.ndim(reflected) == 0:
        return float(reflected)
    return reflected


def cycle_arm_params(values: ArmParam, num_arms: int) -> np.ndarray:
    """Repeat a per-arm parameter list cyclically to num_arms entries."""
    arr = np.atleast_1d(np.asarray(values, dtype=np.float64))
    if arr.size == 0:
        raise ValueError("per-arm parameter list is empty")
    return np.resize(arr, num_arms)


class EnvModel(ABC):
    """Per-arm expected-reward process."""

    name: str = "model"

    def __init__(self, num_arms: int):
        if num_arms < 1:
            raise ValueError(f"num_arms must be positive, got {num_arms}")
        self.num_arms = num_arms
        self._mu: Optional[np.ndarray] = None

    @property
    def initialized(self) -> bool:
        return self._mu is not None

    @property
    def current(self) -> np.ndarray:
        self._require_initialized()
        return self._mu.copy()

    def _require_initialized(self) -> None:
        if self._mu is None:
            raise RuntimeError(f"{self.name} model used before initialize()")

    @abstractmethod
    def initialize(self, rng: np.random.Generator) -> None:
        """Draw the initial latent state of every arm."""

    @abstractmethod
    def step(self, arm: int, rng: np.random.Generator) -> float:
        """Advance one arm by one step and return its new mean."""

    def step_all(self, rng: np.random.Generator) -> np.ndarray:
        """Advance every arm by one step and return the new mean vector."""
        return np.array([self.step(arm, rng) for arm in range(self.num_arms)])


class FixedMeans(EnvModel):
    """Static arms."""

    name = MODEL_FIXED

    def __init__(self, means: Sequence[float]):
        means = np.asarray(means, dtype=np.float64)
        super().__init__(means.size)
        if np.any((means < 0) | (means > 1)):
            raise ValueError(f"fixed means must lie in [0, 1], got {means.tolist()}")
        self.means = means

    def initialize(self, rng: np.random.Generator) -> None:
        self._mu = self.means.copy()

    def step(self, arm: int, rng: np.random.Generator) -> float:
        self._require_initialized()
        return float(self._mu[arm])

    def step_all(self, rng: np.random.Generator) -> np.ndarray:
        self._require_initialized()
        return self._mu.copy()


class SmallChange(EnvModel):
    """
    Three arms at 0.5, 0.3 and 0.4; arm 3 moves to 0.8 on steps [3000, 5000)
    and back to 0.4 from step 5000 on. Breakpoints apply from the stated step.
    """

    name = MODEL_SMALL_CHANGE

    def __init__(self):
        super().__init__(len(SMALL_CHANGE_BASE))
        self._t = np.zeros(self.num_arms, dtype=np.int64)

    @staticmethod
    def mean_at(arm: int, t: int) -> float:
        if arm == SMALL_CHANGE_JUMP_ARM and SMALL_CHANGE_JUMP_START <= t < SMALL_CHANGE_JUMP_END:
            return SMALL_CHANGE_JUMP_MEAN
        return SMALL_CHANGE_BASE[arm]

    def initialize(self, rng: np.random.Generator) -> None:
        self._t[:] = 0
        self._mu = np.array(SMALL_CHANGE_BASE, dtype=np.float64)

    def step(self, arm: int, rng: np.random.Generator) -> float:
        self._require_initialized()
        self._t[arm] += 1
        self._mu[arm] = self.mean_at(arm, int(self._t[arm]))
        return float(self._mu[arm])


class ExponentialClock(EnvModel):
    """
    Abruptly changing arms. A change occurs at a step with probability
    1 - exp(-theta) (at least one Poisson event in a unit interval); the new
    mean is drawn once from U(r_low, r_high).
    """

    name = MODEL_EXPONENTIAL_CLOCK

    def __init__(self, theta: ArmParam, r_low: ArmParam, r_high: ArmParam, num_arms: Optional[int] = None):
        num_arms = num_arms or max(np.size(theta), np.size(r_low), np.size(r_high))
        super().__init__(num_arms)
        self.theta = cycle_arm_params(theta, num_arms)
        self.r_low = cycle_arm_params(r_low, num_arms)
        self.r_high = cycle_arm_params(r_high, num_arms)
        if np.any(self.theta < 0):
            raise ValueError(f"theta must be nonnegative, got {self.theta.tolist()}")
        if np.any((self.r_low < 0) | (self.r_high > 1) | (self.r_low > self.r_high)):
            raise ValueError("uniform bounds must satisfy 0 <= r_low <= r_high <= 1")
        self.change_prob = -np.expm1(-self.theta)

    def initialize(self, rng: np.random.Generator) -> None:
        self._mu = rng.uniform(self.r_low, self.r_high)

    def step(self, arm: int, rng: np.random.Generator) -> float:
        self._require_initialized()
        if rng.random() < self.change_prob[arm]:
            self._mu[arm] = rng.uniform(self.r_low[arm], self.r_high[arm])
        return float(self._mu[arm])

    def step_all(self, rng: np.random.Generator) -> np.ndarray:
        self._require_initialized()
        changed = rng.random(self.num_arms) < self.change_prob
        if changed.any():
            fresh = rng.uniform(self.r_low, self.r_high)
            self._mu = np.where(changed, fresh, self._mu)
        return self._mu.copy()


class ReflectingWalk(EnvModel):
    """Gaussian random walk on [0, 1] with reflecting bounds; starts from U(0, 1)."""

    name = MODEL_REFLECTING_WALK

    def __init__(self, sigma2: ArmParam, num_arms: Optional[int] = None):
        num_arms = num_arms or np.size(sigma2)
        super().__init__(num_arms)
        self.sigma2 = cycle_arm_params(sigma2, num_arms)
        if np.any(self.sigma2 < 0):
            raise ValueError(f"sigma2 must be nonnegative, got {self.sigma2.tolist()}")
        self.scale = np.sqrt(self.sigma2)

    def initialize(self, rng: np.random.Generator) -> None:
        self._mu = rng.uniform(0.0, 1.0, self.num_arms)

    def step(self, arm: int, rng: np.random.Generator) -> float:
        self._require_initialized()
        self._mu[arm] = reflect(self._mu[arm] + rng.normal(0.0, self.scale[arm]))
        return float(self._mu[arm])

    def step_all(self, rng: np.random.Generator) -> np.ndarray:
        self._require_initialized()
        self._mu = reflect(self._mu + rng.normal(0.0, self.scale))
        return self._mu.copy()


class LogisticWalk(EnvModel):
    """Gaussian random walk z_t from z_0 ~ U(0, 1), mapped to the mean by the logistic function."""

    name = MODEL_LOGISTIC_WALK

    def __init__(self, sigma2: ArmParam, num_arms: Optional[int] = None):
        num_arms = num_arms or np.size(sigma2)
        super().__init__(num_arms)
        self.sigma2 = cycle_arm_params(sigma2, num_arms)
        if np.any(self.sigma2 < 0):
            raise ValueError(f"sigma2 must be nonnegative, got {self.sigma2.tolist()}")
        self.scale = np.sqrt(self.sigma2)
        self.z: Optional[np.ndarray] = None

    def initialize(self, rng: np.random.Generator) -> None:
        self.z = rng.uniform(0.0, 1.0, self.num_arms)
        self._mu = expit(self.z)

    def step(self, arm: int, rng: np.random.Generator) -> float:
        self._require_initialized()
        self.z[arm] += rng.normal(0.0, self.scale[arm])
        self._mu[arm] = expit(self.z[arm])
        return float(self._mu[arm])

    def step_all(self, rng: np.random.Generator) -> np.ndarray:
        self._require_initialized()
        self.z = self.z + rng.normal(0.0, self.scale)
        self._mu = expit(self.z)
        return self._mu.copy()


def step_mean(model: EnvModel, arm: int, rng: np.random.Generator) -> float:
    """Advance `arm` of an initialized model by one step and return mu_t(arm)."""
    if not 0 <= arm < model.num_arms:
        raise ValueError(f"arm must lie in [0, {model.num_arms - 1}], got {arm}")
    return model.step(arm, rng)


def build_model(
    model: str,
    num_arms: Optional[int] = None,
    *,
    means: Optional[Sequence[float]] = None,
    theta: Optional[ArmParam] = None,
    r_low: Optional[ArmParam] = None,
    r_high: Optional[ArmParam] = None,
    sigma2: Optional[ArmParam] = None,
) -> EnvModel:
    """
    Construct a model by name. Per-arm parameters shorter than num_arms are
    repeated cyclically.

    Raises:
        ValueError: unknown model, missing parameter or bad arm count
    """
    supplied = {"means": means, "theta": theta, "r_low": r_low, "r_high": r_high, "sigma2": sigma2}
    if model not in MODEL_PARAMS:
        raise ValueError(f"unknown environment model '{model}'")
    missing = [key for key in MODEL_PARAMS[model] if supplied[key] is None]
    if missing:
        raise ValueError(f"environment model '{model}' requires {', '.join(missing)}")

    if model == MODEL_FIXED:
        values = cycle_arm_params(means, num_arms) if num_arms else means
        return FixedMeans(values)
    if model == MODEL_SMALL_CHANGE:
        if num_arms not in (None, len(SMALL_CHANGE_BASE)):
            raise ValueError(f"small_change has {len(SMALL_CHANGE_BASE)} arms, got num_arms={num_arms}")
        return SmallChange()
    if model == MODEL_EXPONENTIAL_CLOCK:
        return ExponentialClock(theta, r_low, r_high, num_arms)
    if model == MODEL_REFLECTING_WALK:
        return ReflectingWalk(sigma2, num_arms)
    return LogisticWalk(sigma2, num_arms)
