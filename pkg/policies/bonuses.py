"""
Exploration bonuses for the UCB family.

The Hoeffding bonus follows from bounding P(E[m/w] - m/w >= B) for a weighted
sum of [0, 1] rewards whose weights square-sum to k:

    P(...) <= exp(-2 B^2 w^2 / k) = xi   =>   B = sqrt(-ln(xi) k / (2 w^2))

With every forgetting factor equal to 1 (w = k = n) this is the familiar
sqrt(ln(1/xi) / (2n)). A constant xi keeps a floor of exploration over time.
"""

import math

from aff_core import AffState, discounted_quantities
from .constants import DEFAULT_HOEFFDING_XI


def hoeffding_bonus(w: float, k: float, xi: float = DEFAULT_HOEFFDING_XI) -> float:
    """
    Hoeffding exploration bonus for a forgetting-factor weighted mean.

    Args:
        w: Weight sum (> 0; discounted sums of long-idle arms may fall below 1)
        k: Squared-weight sum, 0 < k <= w^2
        xi: Tail probability of the confidence bound, in (0, 1)

    Returns:
        sqrt(-ln(xi) * k / (2 w^2))
    """
    if not 0.0 < xi < 1.0:
        raise ValueError(f"xi must lie in (0, 1), got {xi}")
    if not w > 0:
        raise ValueError(f"weight sum must be positive, got {w}")
    if not 0 < k <= w * w * (1.0 + 1e-12):
        raise ValueError(f"squared-weight sum must satisfy 0 < k <= w^2, got k={k}, w={w}")
    return math.sqrt(-math.log(xi) * k / (2.0 * w * w))


def ucb_bonus(total_pulls: int, count: float) -> float:
    """Classic UCB1 bonus sqrt(2 ln t / N)."""
    if count <= 0:
        return math.inf
    if total_pulls <= 1:
        return 0.0
    return math.sqrt(2.0 * math.log(total_pulls) / count)


def aff_ucb1_bonus(state: AffState, t_now: int, num_arms: int, xi: float = DEFAULT_HOEFFDING_XI) -> float:
    """
    Bonus that switches to an idle-time inflation once an arm is not observed.

    Gap 0 gives the Hoeffding bonus; otherwise sqrt(s2 / w) * gap^(1 / num_arms).
    """
    if state.n_obs < 2:
        raise ValueError(f"AFF-UCB1 bonus needs at least two observations, got {state.n_obs}")
    gap = t_now - state.t_last
    if gap < 0:
        raise ValueError(f"t_now={t_now} precedes the last observation at {state.t_last}")
    if gap == 0:
        return hoeffding_bonus(state.w, state.k, xi)
    return math.sqrt(state.s2 / state.w) * math.pow(gap, 1.0 / num_arms)


def aff_ucb2_bonus(state: AffState, t_now: int, num_arms: int, xi: float = DEFAULT_HOEFFDING_XI) -> float:
    """Hoeffding bonus evaluated on the idle-discounted weight sums."""
    _, w_tilde, k_tilde = discounted_quantities(state, t_now, num_arms)
    if w_tilde * w_tilde == 0.0 or k_tilde == 0.0:
        # lambda = 0 and a nonzero gap: everything about the arm is forgotten
        return math.inf
    return hoeffding_bonus(w_tilde, k_tilde, xi)
