"""Adaptive-forgetting-factor estimation of a single Bernoulli reward stream.

Each arm owns one AffState. The state is a plain mutable record: `observe`
updates it in place and returns it, every other operation is a pure read, so an
arm that is not observed keeps bit-identical values until its next reward.
"""

import math
import logging
from dataclasses import dataclass
from typing import Tuple

logger = logging.getLogger(__name__)


@dataclass
class AffState:
    """Per-arm estimator state (forgetting factor, weighted sums, derivatives, variance)."""

    eta: float
    lambda_: float = 1.0
    lambda_prev: float = 1.0
    m: float = 0.0
    w: float = 0.0
    k: float = 0.0
    m_dot: float = 0.0
    w_dot: float = 0.0
    s2: float = 0.0
    v: float = 0.0
    n_obs: int = 0
    t_last: int = 0
    adaptive_eta: bool = False


def init(eta: float, adaptive_eta: bool = False, *, allow_frozen: bool = False) -> AffState:
    """
    Create an empty estimator.

    Args:
        eta: Gradient step size (base step size when adaptive_eta is set)
        adaptive_eta: Divide the step size by the current AFF variance at each update
        allow_frozen: Accept eta = 0, which pins lambda at 1 (plain sample mean)

    Returns:
        AffState with lambda = 1 and all sums at zero

    Raises:
        ValueError: If eta is not positive (or negative when allow_frozen is set)
    """
    if eta < 0 or (eta == 0 and not allow_frozen):
        raise ValueError(f"eta must be positive, got {eta}")
    return AffState(eta=float(eta), adaptive_eta=adaptive_eta)


def step_size(state: AffState) -> float:
    """Step size used by the next gradient step."""
    if state.adaptive_eta and state.n_obs >= 2 and state.s2 > 0:
        return state.eta / state.s2
    return state.eta


def observe(state: AffState, y: float, t: int) -> AffState:
    """
    Feed one reward into the estimator.

    All discounting at this step uses the pre-step forgetting factor; the
    gradient step produces the factor used at the next observation.

    Args:
        state: Estimator to update (modified in place)
        y: Reward in [0, 1]
        t: Global time index of the observation

    Returns:
        The updated state

    Raises:
        ValueError: If y is outside [0, 1] or t does not increase
    """
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"reward must lie in [0, 1], got {y}")
    if t < 0:
        raise ValueError(f"time index must be non-negative, got {t}")
    if state.n_obs > 0 and t <= state.t_last:
        raise ValueError(f"time index must increase: got {t} after {state.t_last}")

    lam = state.lambda_
    m, w, k = state.m, state.w, state.k
    v_prev, s2_prev = state.v, state.s2

    if state.n_obs >= 1:
        y_hat = m / w
        error = y_hat - y
        delta = 2.0 * error * (state.m_dot - state.w_dot * y_hat) / w
    else:
        error = 0.0
        delta = 0.0

    state.lambda_prev = lam
    state.lambda_ = min(1.0, max(0.0, lam - step_size(state) * delta))

    state.m_dot = lam * state.m_dot + m
    state.w_dot = lam * state.w_dot + w

    state.m = lam * m + y
    state.w = lam * w + 1.0
    state.k = lam * lam * k + 1.0

    state.v = state.w * (1.0 - state.k / (state.w * state.w))

    if state.n_obs >= 1 and state.v > 0:
        state.s2 = (lam * v_prev * s2_prev + ((state.w - 1.0) / state.w) * error * error) / state.v
    else:
        state.s2 = 0.0

    state.n_obs += 1
    state.t_last = t
    return state


def mean(state: AffState) -> float:
    """AFF mean m/w."""
    if state.n_obs < 1:
        raise ValueError("mean is undefined for an estimator with no observations")
    return state.m / state.w


def variance(state: AffState) -> float:
    """AFF variance s²; needs at least two observations and v > 0."""
    if state.n_obs < 2 or state.v <= 0:
        raise ValueError(
            f"variance is undefined (n_obs={state.n_obs}, v={state.v}); "
            "at least two observations with a positive normaliser are required"
        )
    return state.s2


def discounted_quantities(state: AffState, t_now: int, num_arms: int) -> Tuple[float, float, float]:
    """
    Discount m, w and k by the time the arm has been idle.

    The exponent (t_now - t_last) / num_arms is real-valued; a zero gap returns
    the stored quantities exactly.

    Args:
        state: Estimator with at least one observation
        t_now: Current time index (>= t_last)
        num_arms: Number of arms in the problem

    Returns:
        Tuple (m_tilde, w_tilde, k_tilde)
    """
    if state.n_obs < 1:
        raise ValueError("discounted quantities are undefined for an estimator with no observations")
    if t_now < state.t_last:
        raise ValueError(f"t_now={t_now} precedes the last observation at {state.t_last}")
    if num_arms < 1:
        raise ValueError(f"num_arms must be positive, got {num_arms}")

    gap = t_now - state.t_last
    if gap == 0 or state.lambda_ == 1.0:
        return state.m, state.w, state.k

    g = gap / num_arms
    factor = math.pow(state.lambda_, g)
    return factor * state.m, factor * state.w, math.pow(state.lambda_ * state.lambda_, g) * state.k
