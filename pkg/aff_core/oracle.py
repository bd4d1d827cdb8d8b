"""Brute-force evaluation of the forgetting-factor sums, used to check the recursions."""

from typing import Sequence, Tuple

import numpy as np


def _weights(num_rewards: int, lambdas: Sequence[float]) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=np.float64)
    if num_rewards == 0:
        raise ValueError("rewards must not be empty")
    if lam.shape != (num_rewards - 1,):
        raise ValueError(
            f"expected {num_rewards - 1} forgetting factors for {num_rewards} rewards, got {lam.size}"
        )
    # weight of reward i is the product of lambda_i .. lambda_{t-1}; the last reward has the empty product
    tail_products = np.cumprod(lam[::-1])[::-1]
    return np.append(tail_products, 1.0)


def direct_sums(rewards: Sequence[float], lambdas: Sequence[float]) -> Tuple[float, float]:
    """
    Evaluate the weighted reward sum and the weight sum directly from their definitions.

    Args:
        rewards: Observed rewards Y_1..Y_t
        lambdas: Forgetting factors lambda_1..lambda_{t-1} applied between observations

    Returns:
        Tuple (numerator, denominator)
    """
    y = np.asarray(rewards, dtype=np.float64)
    weights = _weights(y.size, lambdas)
    return float(np.dot(weights, y)), float(weights.sum())


def direct_mean(rewards: Sequence[float], lambdas: Sequence[float]) -> float:
    """Adaptive forgetting factor mean computed without recursion."""
    numerator, denominator = direct_sums(rewards, lambdas)
    return numerator / denominator
