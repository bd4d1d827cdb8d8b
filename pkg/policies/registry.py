"""Policy registry: parameter resolution with defaults/validation and policy construction."""

import math
import logging
from typing import Any, Callable, Dict, Optional

import numpy as np

from .base import Policy
from .greedy import EpsilonGreedy, AffDGreedy
from .ucb import UCB, DiscountedUCB, SlidingWindowUCB, AffUCB1, AffUCB2
from .thompson import (
    ThompsonSampling,
    DynamicThompsonSampling,
    AffThompsonSampling,
    AffDynamicThompsonSampling,
)
from .reference import FixedArm, Oracle
from .constants import (
    POLICY_NAMES, REFERENCE_POLICIES,
    POLICY_EPS_GREEDY, POLICY_UCB, POLICY_TS, POLICY_OTS, POLICY_DTS, POLICY_D_UCB, POLICY_SW_UCB,
    POLICY_AFF_D_GREEDY, POLICY_AFF_UCB1, POLICY_AFF_UCB2, POLICY_AFF_TS, POLICY_AFF_OTS,
    POLICY_AFF_DTS1, POLICY_AFF_DTS2, POLICY_ORACLE, POLICY_FIXED_ARM,
    PARAM_EPSILON, PARAM_D, PARAM_ETA, PARAM_ETA_MODE, PARAM_M, PARAM_XI, PARAM_ALPHA0, PARAM_BETA0,
    PARAM_C, PARAM_LAMBDA_FIXED, PARAM_W, PARAM_B, PARAM_ARM,
    ETA_MODE_FIXED, ETA_MODE_ADAPTIVE, AUTO,
    DEFAULT_ETA, DEFAULT_ADAPTIVE_ETA, DEFAULT_EPSILON, DEFAULT_ALPHA0, DEFAULT_BETA0, DEFAULT_M,
    DEFAULT_C, DEFAULT_HOEFFDING_XI, DEFAULT_BASELINE_XI, DEFAULT_D_UCB_B,
)

logger = logging.getLogger(__name__)

_AFF_KEYS = (PARAM_ETA, PARAM_ETA_MODE)
_PRIOR_KEYS = (PARAM_ALPHA0, PARAM_BETA0)

# Allowed parameter keys per policy
POLICY_PARAMS: Dict[str, tuple] = {
    POLICY_EPS_GREEDY: (PARAM_EPSILON,),
    POLICY_UCB: (),
    POLICY_TS: _PRIOR_KEYS,
    POLICY_OTS: _PRIOR_KEYS,
    POLICY_DTS: _PRIOR_KEYS + (PARAM_C,),
    POLICY_D_UCB: (PARAM_LAMBDA_FIXED, PARAM_XI, PARAM_B),
    POLICY_SW_UCB: (PARAM_W, PARAM_XI),
    POLICY_AFF_D_GREEDY: _AFF_KEYS + (PARAM_D,),
    POLICY_AFF_UCB1: _AFF_KEYS + (PARAM_M, PARAM_XI),
    POLICY_AFF_UCB2: _AFF_KEYS + (PARAM_XI,),
    POLICY_AFF_TS: _AFF_KEYS + _PRIOR_KEYS,
    POLICY_AFF_OTS: _AFF_KEYS + _PRIOR_KEYS,
    POLICY_AFF_DTS1: _AFF_KEYS + _PRIOR_KEYS + (PARAM_C,),
    POLICY_AFF_DTS2: _AFF_KEYS + _PRIOR_KEYS + (PARAM_C,),
    POLICY_ORACLE: (),
    POLICY_FIXED_ARM: (PARAM_ARM,),
}


def _number(key: str, value: Any) -> float:
    if isinstance(value, bool):
        raise ValueError(f"parameter '{key}' must be a number, got {value!r}")
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"parameter '{key}' must be a number, got {value!r}") from None
    if math.isnan(number):
        raise ValueError(f"parameter '{key}' must be a number, got {value!r}")
    return number


def _check(key: str, value: float, ok: bool, expected: str) -> None:
    if not ok:
        raise ValueError(f"parameter '{key}' must be {expected}, got {value}")


def _resolve_eta(params: Dict[str, Any], resolved: Dict[str, Any]) -> None:
    raw = params.get(PARAM_ETA, DEFAULT_ETA)
    mode = params.get(PARAM_ETA_MODE, ETA_MODE_FIXED)
    if isinstance(raw, str) and raw.strip().lower() == ETA_MODE_ADAPTIVE:
        raw, mode = DEFAULT_ADAPTIVE_ETA, ETA_MODE_ADAPTIVE
    eta = _number(PARAM_ETA, raw)
    _check(PARAM_ETA, eta, 0.0 <= eta < 1.0, "in [0, 1)")
    if mode not in (ETA_MODE_FIXED, ETA_MODE_ADAPTIVE):
        raise ValueError(f"parameter '{PARAM_ETA_MODE}' must be '{ETA_MODE_FIXED}' or '{ETA_MODE_ADAPTIVE}', got {mode!r}")
    resolved[PARAM_ETA] = eta
    resolved[PARAM_ETA_MODE] = mode


def _is_auto(value: Any) -> bool:
    return value is None or (isinstance(value, str) and value.strip().lower() == AUTO)


def resolve_params(name: str, params: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Validate a policy's parameters and fill in defaults.

    Args:
        name: Policy name (see POLICY_NAMES)
        params: User-supplied parameters (may be partial)

    Returns:
        Complete parameter dictionary for the policy

    Raises:
        ValueError: Unknown policy, unknown key or out-of-range value (message names the key)
    """
    if name not in POLICY_PARAMS:
        raise ValueError(f"unknown policy '{name}'; expected one of {', '.join(POLICY_NAMES)}")
    params = dict(params or {})
    allowed = POLICY_PARAMS[name]
    unknown = [key for key in params if key not in allowed]
    if unknown:
        raise ValueError(f"policy '{name}' does not accept parameter(s): {', '.join(unknown)}")

    resolved: Dict[str, Any] = {}
    if PARAM_ETA in allowed:
        _resolve_eta(params, resolved)

    if PARAM_EPSILON in allowed:
        epsilon = _number(PARAM_EPSILON, params.get(PARAM_EPSILON, DEFAULT_EPSILON))
        _check(PARAM_EPSILON, epsilon, 0.0 <= epsilon <= 1.0, "in [0, 1]")
        resolved[PARAM_EPSILON] = epsilon

    if PARAM_D in allowed:
        default_d = resolved[PARAM_ETA] if resolved[PARAM_ETA] > 0 else DEFAULT_ETA
        d = _number(PARAM_D, params.get(PARAM_D, default_d))
        _check(PARAM_D, d, 0.0 < d < 1.0, "in (0, 1)")
        resolved[PARAM_D] = d

    if PARAM_M in allowed:
        m = _number(PARAM_M, params.get(PARAM_M, DEFAULT_M))
        _check(PARAM_M, m, m >= 2 and m == int(m), "an integer >= 2")
        resolved[PARAM_M] = int(m)

    if PARAM_ALPHA0 in allowed:
        for key, default in ((PARAM_ALPHA0, DEFAULT_ALPHA0), (PARAM_BETA0, DEFAULT_BETA0)):
            value = _number(key, params.get(key, default))
            _check(key, value, value > 0, "positive")
            resolved[key] = value

    if PARAM_C in allowed:
        c = _number(PARAM_C, params.get(PARAM_C, DEFAULT_C))
        _check(PARAM_C, c, c > 0, "positive")
        resolved[PARAM_C] = c

    if PARAM_XI in allowed:
        default_xi = DEFAULT_BASELINE_XI if name in (POLICY_D_UCB, POLICY_SW_UCB) else DEFAULT_HOEFFDING_XI
        xi = _number(PARAM_XI, params.get(PARAM_XI, default_xi))
        _check(PARAM_XI, xi, xi > 0 and (name in (POLICY_D_UCB, POLICY_SW_UCB) or xi < 1), "a valid confidence level")
        resolved[PARAM_XI] = xi

    if PARAM_B in allowed:
        bound = _number(PARAM_B, params.get(PARAM_B, DEFAULT_D_UCB_B))
        _check(PARAM_B, bound, bound > 0, "positive")
        resolved[PARAM_B] = bound

    if PARAM_LAMBDA_FIXED in allowed:
        raw = params.get(PARAM_LAMBDA_FIXED)
        if _is_auto(raw):
            resolved[PARAM_LAMBDA_FIXED] = AUTO
        else:
            lam = _number(PARAM_LAMBDA_FIXED, raw)
            _check(PARAM_LAMBDA_FIXED, lam, 0.0 < lam <= 1.0, "in (0, 1]")
            resolved[PARAM_LAMBDA_FIXED] = lam

    if PARAM_W in allowed:
        raw = params.get(PARAM_W)
        if _is_auto(raw):
            resolved[PARAM_W] = AUTO
        else:
            window = _number(PARAM_W, raw)
            _check(PARAM_W, window, window >= 1 and window == int(window), "an integer >= 1")
            resolved[PARAM_W] = int(window)

    if PARAM_ARM in allowed:
        arm = _number(PARAM_ARM, params.get(PARAM_ARM, 0))
        _check(PARAM_ARM, arm, arm >= 0 and arm == int(arm), "a non-negative integer")
        resolved[PARAM_ARM] = int(arm)

    return resolved


def burn_in_pulls(name: str, params: Dict[str, Any]) -> int:
    """Round-robin pulls per arm before the policy's own rule takes over."""
    if name in REFERENCE_POLICIES:
        return 0
    if name == POLICY_AFF_UCB1:
        return int(params.get(PARAM_M, DEFAULT_M))
    return 1


def derive_lambda_fixed(horizon: int, switch_points: int) -> float:
    """D-UCB factor 1 - sqrt(switch_points / T) / 4."""
    return 1.0 - 0.25 * math.sqrt(switch_points / horizon)


def derive_window(horizon: int, switch_points: int) -> int:
    """SW-UCB window 2 sqrt(T ln T / switch_points), clamped to [1, T]; no switches gives T."""
    if switch_points <= 0:
        return horizon
    window = int(round(2.0 * math.sqrt(horizon * math.log(horizon) / switch_points)))
    return min(max(window, 1), horizon)


def build_policy(
    name: str,
    params: Dict[str, Any],
    num_arms: int,
    rng: np.random.Generator,
    horizon: Optional[int] = None,
    switch_points: Optional[int] = None,
) -> Policy:
    """
    Instantiate a policy from its name and (possibly partial) parameters.

    Args:
        name: Policy name
        params: Parameters (resolved with defaults here)
        num_arms: Number of arms
        rng: Decision randomness for this policy
        horizon: Experiment length, needed for formula-derived D-UCB/SW-UCB parameters
        switch_points: Realized switch-point count of the trajectory

    Returns:
        Ready-to-run Policy instance
    """
    p = resolve_params(name, params)
    adaptive = p.get(PARAM_ETA_MODE) == ETA_MODE_ADAPTIVE

    if p.get(PARAM_LAMBDA_FIXED) == AUTO or p.get(PARAM_W) == AUTO:
        if horizon is None or switch_points is None:
            raise ValueError(f"policy '{name}' needs the horizon and switch-point count to derive its parameters")
        if switch_points == 0:
            logger.warning(f"No switch points in trajectory; {name} falls back to its static limit")

    builders: Dict[str, Callable[[], Policy]] = {
        POLICY_EPS_GREEDY: lambda: EpsilonGreedy(num_arms, rng, p[PARAM_EPSILON]),
        POLICY_UCB: lambda: UCB(num_arms, rng),
        POLICY_TS: lambda: ThompsonSampling(num_arms, rng, p[PARAM_ALPHA0], p[PARAM_BETA0]),
        POLICY_OTS: lambda: ThompsonSampling(num_arms, rng, p[PARAM_ALPHA0], p[PARAM_BETA0], optimistic=True),
        POLICY_DTS: lambda: DynamicThompsonSampling(num_arms, rng, p[PARAM_ALPHA0], p[PARAM_BETA0], p[PARAM_C]),
        POLICY_D_UCB: lambda: DiscountedUCB(
            num_arms,
            rng,
            derive_lambda_fixed(horizon, switch_points) if p[PARAM_LAMBDA_FIXED] == AUTO else p[PARAM_LAMBDA_FIXED],
            p[PARAM_XI],
            p[PARAM_B],
        ),
        POLICY_SW_UCB: lambda: SlidingWindowUCB(
            num_arms,
            rng,
            derive_window(horizon, switch_points) if p[PARAM_W] == AUTO else p[PARAM_W],
            p[PARAM_XI],
        ),
        POLICY_AFF_D_GREEDY: lambda: AffDGreedy(num_arms, rng, p[PARAM_ETA], p[PARAM_D], adaptive),
        POLICY_AFF_UCB1: lambda: AffUCB1(num_arms, rng, p[PARAM_ETA], p[PARAM_M], p[PARAM_XI], adaptive),
        POLICY_AFF_UCB2: lambda: AffUCB2(num_arms, rng, p[PARAM_ETA], p[PARAM_XI], adaptive),
        POLICY_AFF_TS: lambda: AffThompsonSampling(
            num_arms, rng, p[PARAM_ETA], p[PARAM_ALPHA0], p[PARAM_BETA0], False, adaptive
        ),
        POLICY_AFF_OTS: lambda: AffThompsonSampling(
            num_arms, rng, p[PARAM_ETA], p[PARAM_ALPHA0], p[PARAM_BETA0], True, adaptive
        ),
        POLICY_AFF_DTS1: lambda: AffDynamicThompsonSampling(
            num_arms, rng, p[PARAM_ETA], p[PARAM_ALPHA0], p[PARAM_BETA0], p[PARAM_C], 1, adaptive
        ),
        POLICY_AFF_DTS2: lambda: AffDynamicThompsonSampling(
            num_arms, rng, p[PARAM_ETA], p[PARAM_ALPHA0], p[PARAM_BETA0], p[PARAM_C], 2, adaptive
        ),
        POLICY_ORACLE: lambda: Oracle(num_arms, rng),
        POLICY_FIXED_ARM: lambda: FixedArm(num_arms, rng, p[PARAM_ARM]),
    }
    return builders[name]()
