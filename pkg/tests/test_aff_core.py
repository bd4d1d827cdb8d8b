"""Adaptive forgetting factor estimator: recursions, oracle agreement and degenerations."""

import math

import numpy as np
import pytest

from aff_core import (
    AffState,
    direct_mean,
    direct_sums,
    discounted_quantities,
    init,
    mean,
    observe,
    step_size,
    variance,
)


def _feed(rewards, eta, adaptive=False):
    """Feed rewards at t = 1, 2, ...; return the state and the lambdas applied between observations."""
    state = init(eta, adaptive, allow_frozen=True)
    lambdas = []
    for t, y in enumerate(rewards, start=1):
        if t > 1:
            lambdas.append(state.lambda_)
        observe(state, y, t)
    return state, lambdas


class TestInit:
    def test_empty_state(self):
        state = init(0.001)
        assert state.lambda_ == 1.0
        assert state.lambda_prev == 1.0
        assert state.w == 0.0
        assert state.n_obs == 0

    def test_derivatives_start_at_zero(self):
        state = init(0.01)
        assert state.m_dot == 0.0
        assert state.w_dot == 0.0

    def test_zero_eta_rejected(self):
        with pytest.raises(ValueError, match="eta must be positive"):
            init(0)

    def test_zero_eta_allowed_when_frozen(self):
        assert init(0, allow_frozen=True).eta == 0.0

    def test_negative_eta_rejected_even_when_frozen(self):
        with pytest.raises(ValueError):
            init(-0.1, allow_frozen=True)


class TestObserve:
    def test_frozen_reduces_to_sample_mean(self):
        state, _ = _feed([1, 0, 1], 0.0)
        assert state.m == 2.0
        assert state.w == 3.0
        assert state.k == 3.0
        assert mean(state) == pytest.approx(2 / 3)

    def test_two_observation_variance(self):
        state, _ = _feed([1, 0], 0.0)
        assert state.v == pytest.approx(1.0)
        assert state.s2 == pytest.approx(0.5)

    def test_first_observation_leaves_lambda(self):
        state, _ = _feed([1], 0.5)
        assert state.lambda_ == 1.0
        assert state.lambda_prev == 1.0

    def test_matches_direct_mean_on_bernoulli_sequence(self, rng):
        rewards = rng.integers(0, 2, 50)
        state, lambdas = _feed(rewards, 0.001)
        assert mean(state) == pytest.approx(direct_mean(rewards, lambdas), abs=1e-10)

    def test_reward_out_of_range(self):
        with pytest.raises(ValueError, match="reward must lie"):
            observe(init(0.001), 1.5, 1)

    def test_time_must_increase(self):
        state = observe(init(0.001), 1, 5)
        with pytest.raises(ValueError, match="time index must increase"):
            observe(state, 0, 5)

    def test_lambda_stays_in_unit_interval(self, rng):
        streams = [
            np.tile([0, 1], 100),
            np.ones(200),
            rng.integers(0, 2, 200),
        ]
        for rewards in streams:
            for eta in (0.01, 0.5, 1.0):
                state = init(eta)
                for t, y in enumerate(rewards, start=1):
                    observe(state, y, t)
                    assert 0.0 <= state.lambda_ <= 1.0
                    assert 0.0 <= state.lambda_prev <= 1.0

    def test_weight_order(self, rng):
        state = init(0.01)
        for t, y in enumerate(rng.integers(0, 2, 300), start=1):
            observe(state, y, t)
            assert 1.0 <= state.k <= state.w + 1e-12
            assert state.w <= state.n_obs + 1e-12
            assert state.v == pytest.approx(state.w * (1 - state.k / state.w ** 2))

    def test_adaptive_step_size(self):
        state = init(0.0001, adaptive_eta=True)
        assert step_size(state) == 0.0001
        for t, y in enumerate([1, 0, 1, 0], start=1):
            observe(state, y, t)
        assert state.s2 > 0
        assert step_size(state) == pytest.approx(0.0001 / state.s2)


class TestOracleEquivalence:
    def test_random_sequences(self):
        rng = np.random.default_rng(2024)
        worst = 0.0
        for _ in range(1000):
            length = int(rng.integers(1, 201))
            eta = float(rng.choice([0.0, 0.001, 0.01]))
            rewards = rng.integers(0, 2, length)
            state, lambdas = _feed(rewards, eta)
            worst = max(worst, abs(mean(state) - direct_mean(rewards, lambdas)))
        assert worst <= 1e-10

    def test_derivatives_match_finite_differences(self):
        rng = np.random.default_rng(99)
        eps = 1e-6
        for _ in range(100):
            rewards = rng.integers(0, 2, 100)
            state = init(0.01)
            lambdas = []
            for t, y in enumerate(rewards, start=1):
                if t > 1:
                    lambdas.append(state.lambda_)
                observe(state, y, t)
                if t < 3:
                    continue
                lam = np.asarray(lambdas)
                num_hi, den_hi = direct_sums(rewards[:t], lam + eps)
                num_lo, den_lo = direct_sums(rewards[:t], lam - eps)
                m_fd = (num_hi - num_lo) / (2 * eps)
                w_fd = (den_hi - den_lo) / (2 * eps)
                assert state.m_dot == pytest.approx(m_fd, rel=1e-4, abs=1e-5)
                assert state.w_dot == pytest.approx(w_fd, rel=1e-4, abs=1e-5)


class TestDegeneration:
    def test_frozen_estimator_is_sample_statistics(self, rng):
        rewards = rng.integers(0, 2, 40)
        state, _ = _feed(rewards, 0.0)
        n = len(rewards)
        assert state.w == pytest.approx(n, abs=1e-12)
        assert state.k == pytest.approx(n, abs=1e-12)
        assert state.v == pytest.approx(n - 1, abs=1e-12)
        assert mean(state) == pytest.approx(rewards.mean(), abs=1e-12)
        assert variance(state) == pytest.approx(rewards.var(ddof=1), abs=1e-12)


class TestMean:
    def test_ratio(self):
        assert mean(AffState(eta=0.001, m=2.0, w=3.0, n_obs=3)) == pytest.approx(0.6667, abs=1e-4)

    @pytest.mark.parametrize("y", [0, 1])
    def test_single_observation(self, y):
        assert mean(observe(init(0.001), y, 1)) == float(y)

    def test_empty_estimator(self):
        with pytest.raises(ValueError):
            mean(init(0.001))


class TestVariance:
    def test_two_values(self):
        state, _ = _feed([1, 0], 0.0)
        assert variance(state) == pytest.approx(0.5)

    def test_constant_stream(self):
        state, _ = _feed([1, 1, 1, 1], 0.0)
        assert variance(state) == 0.0

    def test_single_observation(self):
        with pytest.raises(ValueError, match="variance is undefined"):
            variance(observe(init(0.001), 1, 1))


class TestDiscountedQuantities:
    def test_zero_gap_identity(self):
        state, _ = _feed([1, 0, 1, 1], 0.05)
        assert discounted_quantities(state, state.t_last, 3) == (state.m, state.w, state.k)

    def test_unit_lambda_any_gap(self):
        state, _ = _feed([1, 0, 1], 0.0)
        assert discounted_quantities(state, state.t_last + 17, 2) == (state.m, state.w, state.k)

    def test_hand_example(self):
        state = AffState(eta=0.001, lambda_=0.9, m=4.0, w=5.0, k=3.0, n_obs=5, t_last=10)
        m, w, k = discounted_quantities(state, 12, 2)
        assert (m, w, k) == pytest.approx((3.6, 4.5, 2.43))

    def test_real_valued_exponent(self):
        state = AffState(eta=0.001, lambda_=0.9, m=4.0, w=5.0, k=3.0, n_obs=5, t_last=10)
        _, w, _ = discounted_quantities(state, 11, 2)
        assert w == pytest.approx(5.0 * math.sqrt(0.9))

    def test_reads_leave_state_untouched(self):
        state, _ = _feed([1, 0, 1], 0.05)
        before = AffState(**vars(state))
        for t_now in range(state.t_last, state.t_last + 50):
            discounted_quantities(state, t_now, 3)
            mean(state)
        assert vars(state) == vars(before)

    def test_empty_estimator(self):
        with pytest.raises(ValueError):
            discounted_quantities(init(0.001), 0, 2)

    def test_time_before_last_observation(self):
        state, _ = _feed([1, 0], 0.001)
        with pytest.raises(ValueError):
            discounted_quantities(state, 1, 2)


class TestDirectMean:
    def test_unit_factors(self):
        assert direct_mean([1, 0, 1], [1, 1]) == pytest.approx(2 / 3)

    def test_total_forgetting(self):
        assert direct_mean([1, 0], [0]) == 0.0

    def test_hand_example(self):
        assert direct_mean([1, 0, 1], [0.5, 0.5]) == pytest.approx(0.7143, abs=1e-4)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="forgetting factors"):
            direct_mean([1, 0, 1], [0.5])

    def test_empty_rewards(self):
        with pytest.raises(ValueError):
            direct_mean([], [])
