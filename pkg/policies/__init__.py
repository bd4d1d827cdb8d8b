"""
Arm-selection policies for dynamic Bernoulli bandits.

Baselines (epsilon-Greedy, UCB, TS, OTS, DTS, D-UCB, SW-UCB) and their
adaptive-forgetting-factor counterparts behind one choose/feed interface.
"""

from .base import Policy, AffPolicy, BetaParams, argmax_random
from .bonuses import hoeffding_bonus, ucb_bonus, aff_ucb1_bonus, aff_ucb2_bonus
from .greedy import select_eps_greedy, select_aff_d_greedy, EpsilonGreedy, AffDGreedy
from .ucb import (
    select_ucb,
    select_d_ucb,
    select_sw_ucb,
    DiscountedCounts,
    SlidingWindow,
    UCB,
    DiscountedUCB,
    SlidingWindowUCB,
    AffUCB1,
    AffUCB2,
)
from .thompson import (
    ts_update,
    aff_ts_update,
    dts_update,
    aff_dts_threshold,
    sample_posteriors,
    ThompsonSampling,
    DynamicThompsonSampling,
    AffThompsonSampling,
    AffDynamicThompsonSampling,
)
from .reference import FixedArm, Oracle
from .registry import (
    POLICY_PARAMS,
    resolve_params,
    build_policy,
    burn_in_pulls,
    derive_lambda_fixed,
    derive_window,
)

__all__ = [
    "Policy",
    "AffPolicy",
    "BetaParams",
    "argmax_random",
    "hoeffding_bonus",
    "ucb_bonus",
    "aff_ucb1_bonus",
    "aff_ucb2_bonus",
    "select_eps_greedy",
    "select_aff_d_greedy",
    "EpsilonGreedy",
    "AffDGreedy",
    "select_ucb",
    "select_d_ucb",
    "select_sw_ucb",
    "DiscountedCounts",
    "SlidingWindow",
    "UCB",
    "DiscountedUCB",
    "SlidingWindowUCB",
    "AffUCB1",
    "AffUCB2",
    "ts_update",
    "aff_ts_update",
    "dts_update",
    "aff_dts_threshold",
    "sample_posteriors",
    "ThompsonSampling",
    "DynamicThompsonSampling",
    "AffThompsonSampling",
    "AffDynamicThompsonSampling",
    "FixedArm",
    "Oracle",
    "POLICY_PARAMS",
    "resolve_params",
    "build_policy",
    "burn_in_pulls",
    "derive_lambda_fixed",
    "derive_window",
]
