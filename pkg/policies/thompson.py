"""Thompson sampling family on Beta-Bernoulli posteriors: TS, OTS, DTS and the AFF variants."""

import logging
from typing import List, Sequence

import numpy as np

from aff_core import AffState, discounted_quantities, observe
from .base import Policy, AffPolicy, BetaParams, argmax_random
from .constants import (
    POLICY_TS,
    POLICY_OTS,
    POLICY_DTS,
    POLICY_AFF_TS,
    POLICY_AFF_OTS,
    POLICY_AFF_DTS1,
    POLICY_AFF_DTS2,
)

logger = logging.getLogger(__name__)


def ts_update(params: BetaParams, selected: bool, y: int = 0) -> BetaParams:
    """Conjugate update: a selected arm gains y successes and 1 - y failures; others are unchanged."""
    if not selected:
        return params
    if y not in (0, 1):
        raise ValueError(f"Bernoulli reward must be 0 or 1, got {y}")
    return BetaParams(params.alpha + y, params.beta + 1 - y)


def aff_ts_update(alpha0: float, beta0: float, state: AffState, t_now: int, num_arms: int) -> BetaParams:
    """Posterior built from idle-discounted AFF sums: (alpha0 + m~, beta0 + w~ - m~)."""
    m_tilde, w_tilde, _ = discounted_quantities(state, t_now, num_arms)
    return BetaParams(alpha0 + m_tilde, beta0 + w_tilde - m_tilde)


def dts_update(params: BetaParams, y: int, C: float) -> BetaParams:
    """
    Dynamic TS update of the selected arm.

    Below the threshold (alpha + beta < C) this is the standard update; at or
    above it both hyperparameters are rescaled by C / (C + 1), which keeps
    alpha + beta at C once reached.
    """
    if not C > 0:
        raise ValueError(f"threshold C must be positive, got {C}")
    if y not in (0, 1):
        raise ValueError(f"Bernoulli reward must be 0 or 1, got {y}")
    if params.alpha + params.beta < C:
        return BetaParams(params.alpha + y, params.beta + 1 - y)
    scale = C / (C + 1.0)
    return BetaParams((params.alpha + y) * scale, (params.beta + 1 - y) * scale)


def aff_dts_threshold(variant: int, state: AffState, c_init: float) -> float:
    """
    Per-step DTS threshold tuned from the arm's AFF estimator.

    Variant 1 uses 4 / s2 - 1, variant 2 uses w - 1. Degenerate states
    (s2 = 0, w <= 1, or a non-positive result) fall back to c_init.
    """
    if variant == 1:
        c_t = 4.0 / state.s2 - 1.0 if state.s2 > 0 else 0.0
    elif variant == 2:
        c_t = state.w - 1.0 if state.w > 1 else 0.0
    else:
        raise ValueError(f"AFF-DTS variant must be 1 or 2, got {variant}")
    if c_t <= 0:
        logger.debug(f"AFF-DTS{variant} threshold degenerate, using initial C={c_init}")
        return c_init
    return c_t


def sample_posteriors(params: Sequence[BetaParams], rng: np.random.Generator, optimistic: bool = False) -> np.ndarray:
    """One Beta draw per arm; optimistic draws are floored at the posterior mean."""
    alpha = np.array([p.alpha for p in params])
    beta = np.array([p.beta for p in params])
    draws = rng.beta(alpha, beta)
    if optimistic:
        draws = np.maximum(draws, alpha / (alpha + beta))
    return draws


class ThompsonSampling(Policy):
    """Thompson sampling (optionally optimistic) with full-memory Beta posteriors."""

    name = POLICY_TS

    def __init__(
        self,
        num_arms: int,
        rng: np.random.Generator,
        alpha0: float,
        beta0: float,
        optimistic: bool = False,
    ):
        super().__init__(num_arms, rng)
        self.optimistic = optimistic
        if optimistic:
            self.name = POLICY_OTS
        self.params: List[BetaParams] = [BetaParams(alpha0, beta0) for _ in range(num_arms)]

    def _select(self, t: int) -> int:
        return argmax_random(sample_posteriors(self.params, self.rng, self.optimistic), self.rng)

    def feed(self, arm: int, y: int, t: int) -> None:
        self.params[arm] = ts_update(self.params[arm], True, y)


class DynamicThompsonSampling(ThompsonSampling):
    """DTS with a fixed threshold C on alpha + beta."""

    name = POLICY_DTS

    def __init__(self, num_arms: int, rng: np.random.Generator, alpha0: float, beta0: float, C: float):
        super().__init__(num_arms, rng, alpha0, beta0)
        self.C = C

    def feed(self, arm: int, y: int, t: int) -> None:
        self.params[arm] = dts_update(self.params[arm], y, self.C)


class AffThompsonSampling(AffPolicy):
    """AFF-TS / AFF-OTS: posteriors recomputed for all arms from discounted AFF sums."""

    name = POLICY_AFF_TS

    def __init__(
        self,
        num_arms: int,
        rng: np.random.Generator,
        eta: float,
        alpha0: float,
        beta0: float,
        optimistic: bool = False,
        adaptive_eta: bool = False,
    ):
        super().__init__(num_arms, rng, eta, adaptive_eta)
        self.alpha0 = alpha0
        self.beta0 = beta0
        self.optimistic = optimistic
        if optimistic:
            self.name = POLICY_AFF_OTS

    def posteriors(self, t_now: int) -> List[BetaParams]:
        return [aff_ts_update(self.alpha0, self.beta0, s, t_now, self.num_arms) for s in self.states]

    def _select(self, t: int) -> int:
        draws = sample_posteriors(self.posteriors(t - 1), self.rng, self.optimistic)
        return argmax_random(draws, self.rng)


class AffDynamicThompsonSampling(DynamicThompsonSampling):
    """AFF-DTS1 / AFF-DTS2: DTS whose threshold is re-tuned each step from an AFF estimator."""

    def __init__(
        self,
        num_arms: int,
        rng: np.random.Generator,
        eta: float,
        alpha0: float,
        beta0: float,
        C: float,
        variant: int,
        adaptive_eta: bool = False,
    ):
        super().__init__(num_arms, rng, alpha0, beta0, C)
        if variant not in (1, 2):
            raise ValueError(f"AFF-DTS variant must be 1 or 2, got {variant}")
        self.variant = variant
        self.name = POLICY_AFF_DTS1 if variant == 1 else POLICY_AFF_DTS2
        self.states = [AffPolicy.new_state(eta, adaptive_eta) for _ in range(num_arms)]
        self.thresholds = np.full(num_arms, float(C))

    def feed(self, arm: int, y: int, t: int) -> None:
        state = observe(self.states[arm], y, t)
        c_t = aff_dts_threshold(self.variant, state, self.C)
        self.thresholds[arm] = c_t
        self.params[arm] = dts_update(self.params[arm], y, c_t)
