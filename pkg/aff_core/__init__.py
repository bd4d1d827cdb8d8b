"""
Adaptive forgetting factor (AFF) estimation for a single reward stream.

Tracks a self-tuned forgetting factor together with the weighted sums the
bandit policies read: mean, variance and idle-discounted quantities.
"""

from .estimator import (
    AffState,
    init,
    observe,
    mean,
    variance,
    discounted_quantities,
    step_size,
)
from .oracle import direct_mean, direct_sums

__all__ = [
    "AffState",
    "init",
    "observe",
    "mean",
    "variance",
    "discounted_quantities",
    "step_size",
    "direct_mean",
    "direct_sums",
]
