"""Policy decision rules, bonuses, posterior updates and the registry."""

import math

import numpy as np
import pytest

from aff_core import AffState, discounted_quantities, init, observe
from policies import (
    AffDGreedy,
    AffDynamicThompsonSampling,
    AffThompsonSampling,
    AffUCB1,
    AffUCB2,
    BetaParams,
    DiscountedCounts,
    EpsilonGreedy,
    FixedArm,
    Oracle,
    SlidingWindow,
    SlidingWindowUCB,
    ThompsonSampling,
    UCB,
    aff_dts_threshold,
    aff_ts_update,
    aff_ucb1_bonus,
    aff_ucb2_bonus,
    argmax_random,
    build_policy,
    burn_in_pulls,
    derive_lambda_fixed,
    derive_window,
    dts_update,
    hoeffding_bonus,
    resolve_params,
    sample_posteriors,
    select_aff_d_greedy,
    select_d_ucb,
    select_eps_greedy,
    select_sw_ucb,
    select_ucb,
    ts_update,
    ucb_bonus,
)
from policies.constants import POLICY_NAMES, REFERENCE_POLICIES


def _idle_state(**overrides):
    values = dict(eta=0.001, lambda_=0.9, m=4.0, w=5.0, k=3.0, n_obs=5, t_last=10)
    values.update(overrides)
    return AffState(**values)


def _volatile_state(eta=0.01):
    """Twenty successes then a run of failures: the forgetting factor drops below 1."""
    state = init(eta)
    for t, y in enumerate([1] * 20 + [0] * 5, start=1):
        observe(state, y, t)
    return state


class TestArgmaxRandom:
    def test_unique_maximum(self, rng):
        assert argmax_random(np.array([0.1, 0.7, 0.3]), rng) == 1

    def test_ties_are_uniform(self, rng):
        picks = [argmax_random(np.array([1.0, 0.0, 1.0]), rng) for _ in range(4000)]
        assert set(picks) == {0, 2}
        assert np.mean(np.array(picks) == 0) == pytest.approx(0.5, abs=0.04)

    def test_infinite_scores(self, rng):
        assert argmax_random(np.array([0.9, np.inf]), rng) == 1


class TestBonuses:
    def test_hoeffding_single_sample(self):
        assert hoeffding_bonus(1, 1, 0.05) == pytest.approx(1.22387, abs=1e-5)

    def test_hoeffding_weighted(self):
        assert hoeffding_bonus(10, 5, 0.05) == pytest.approx(0.273666, abs=1e-5)

    def test_hoeffding_rejects_bad_xi(self):
        with pytest.raises(ValueError, match="xi"):
            hoeffding_bonus(4, 2, 1.0)

    def test_hoeffding_rejects_k_above_w_squared(self):
        with pytest.raises(ValueError):
            hoeffding_bonus(2, 5)

    def test_ucb_bonus(self):
        assert ucb_bonus(100, 100) == pytest.approx(0.30349, abs=1e-5)

    def test_ucb_bonus_unplayed_arm(self):
        assert ucb_bonus(10, 0) == math.inf

    def test_ucb_bonus_first_step(self):
        assert ucb_bonus(1, 1) == 0.0

    def test_aff_ucb1_idle_branch(self):
        state = _idle_state(s2=0.25, w=4.0)
        assert aff_ucb1_bonus(state, 12, 2) == pytest.approx(0.353553, abs=1e-6)

    def test_aff_ucb1_fresh_arm_is_hoeffding(self):
        state = _idle_state()
        assert aff_ucb1_bonus(state, 10, 2) == pytest.approx(hoeffding_bonus(5.0, 3.0))

    def test_aff_ucb1_needs_two_observations(self):
        with pytest.raises(ValueError):
            aff_ucb1_bonus(_idle_state(n_obs=1), 10, 2)

    def test_aff_ucb2_discounted(self):
        assert aff_ucb2_bonus(_idle_state(), 12, 2) == pytest.approx(0.423985, abs=1e-4)

    def test_aff_ucb2_fully_forgotten_arm(self):
        assert aff_ucb2_bonus(_idle_state(lambda_=0.0), 12, 2) == math.inf


class TestEpsilonGreedy:
    def test_exploration_frequency(self, rng):
        picks = np.array([select_eps_greedy([0.7, 0.2], 0.5, rng) for _ in range(100_000)])
        assert np.mean(picks == 0) == pytest.approx(0.75, abs=0.01)

    def test_full_exploration_is_uniform(self, rng):
        picks = np.array([select_eps_greedy([0.9, 0.1, 0.5], 1.0, rng) for _ in range(30_000)])
        np.testing.assert_allclose(np.bincount(picks, minlength=3) / picks.size, 1 / 3, atol=0.02)

    def test_pure_greedy(self, rng):
        assert all(select_eps_greedy([0.2, 0.6, 0.1], 0.0, rng) == 1 for _ in range(100))

    def test_policy_tracks_sample_means(self, rng):
        policy = EpsilonGreedy(2, rng, 0.0)
        for t, (arm, y) in enumerate([(0, 0), (1, 1)], start=1):
            assert policy.choose(t) == arm
            policy.feed(arm, y, t)
        assert policy.choose(3) == 1


class TestAffDGreedy:
    def _states(self):
        states = [init(0.01) for _ in range(2)]
        for t, (arm, y) in enumerate([(0, 1), (1, 0), (0, 1), (1, 0)], start=1):
            observe(states[arm], y, t)
        return states

    def test_idle_leader_is_kept(self, rng):
        states = self._states()
        states[0].lambda_prev = states[0].lambda_
        assert all(select_aff_d_greedy(states, 0.001, rng) == 0 for _ in range(50))

    def test_volatile_leader_triggers_uniform_draw(self, rng):
        states = self._states()
        states[0].lambda_prev = states[0].lambda_ - 0.5
        picks = [select_aff_d_greedy(states, 0.01, rng) for _ in range(2000)]
        assert np.mean(np.array(picks) == 1) == pytest.approx(0.5, abs=0.05)

    def test_policy_round_robin_then_greedy(self, rng):
        policy = AffDGreedy(2, rng, 0.001, 0.5)
        assert [policy.choose(t) for t in (1, 2)] == [0, 1]
        policy.feed(0, 1, 1)
        policy.feed(1, 0, 2)
        assert policy.choose(3) == 0


class TestUCB:
    def test_select_prefers_unplayed(self, rng):
        assert select_ucb([0.9, 0.0], [10, 0], 10, rng) == 1

    def test_select_balances_bonus(self, rng):
        # 0.5 + 0.3035 < 0.45 + sqrt(2 ln 100 / 5)
        assert select_ucb([0.5, 0.45], [100, 5], 100, rng) == 1

    def test_policy_burn_in(self, rng):
        policy = UCB(3, rng)
        assert [policy.choose(t) for t in (1, 2, 3)] == [0, 1, 2]


class TestDiscountedUCB:
    def test_idle_decay(self):
        counts = DiscountedCounts.empty(2)
        counts.update(0, 1, 0.9)
        counts.update(1, 0, 0.9)
        assert counts.sums[0] == pytest.approx(0.9)
        assert counts.counts[0] == pytest.approx(0.9)
        assert counts.sums[0] / counts.counts[0] == pytest.approx(1.0)

    def test_unit_discount_reduces_to_pull_counts(self, rng):
        counts = DiscountedCounts.empty(4)
        arms = rng.integers(4, size=500)
        rewards = rng.integers(2, size=500)
        for arm, y in zip(arms, rewards):
            counts.update(int(arm), int(y), 1.0)
        np.testing.assert_array_equal(counts.counts, np.bincount(arms, minlength=4))
        np.testing.assert_array_equal(counts.sums, np.bincount(arms, weights=rewards, minlength=4))

    def test_unplayed_arm_scores_infinite(self, rng):
        counts = DiscountedCounts.empty(3)
        counts.update(0, 1, 0.95)
        counts.update(1, 1, 0.95)
        assert select_d_ucb(counts, rng) == 2


class TestSlidingWindowUCB:
    def test_window_drops_oldest(self):
        window = SlidingWindow(size=2, num_arms=2)
        for arm, y in [(0, 1), (0, 1), (1, 0)]:
            window.push(arm, y)
        assert len(window) == 2
        np.testing.assert_array_equal(window.counts, [1, 1])
        np.testing.assert_array_equal(window.sums, [1, 0])

    def test_rejects_empty_window(self):
        with pytest.raises(ValueError, match="window size"):
            SlidingWindow(size=0, num_arms=2)

    def test_unit_window_alternates(self, rng):
        policy = SlidingWindowUCB(2, rng, window=1)
        arms = []
        for t in range(1, 21):
            arm = policy.choose(t)
            policy.feed(arm, 1, t)
            arms.append(arm)
        assert arms == [0, 1] * 10

    def test_select_on_window_stats(self, rng):
        window = SlidingWindow(size=10, num_arms=2)
        for arm, y in [(0, 1), (1, 0), (0, 1), (1, 0)]:
            window.push(arm, y)
        assert select_sw_ucb(window, rng) == 0


class TestAffUCB:
    def test_ucb1_burn_in_is_m_per_arm(self, rng):
        policy = AffUCB1(3, rng, 0.001, burn_in=10)
        assert [policy.choose(t) for t in range(1, 31)] == [(t - 1) % 3 for t in range(1, 31)]
        assert burn_in_pulls("aff_ucb1", {"M": 10}) == 10

    def test_ucb2_score_matches_hand_value(self, rng):
        policy = AffUCB2(2, rng, 0.001)
        policy.states[0] = _idle_state()
        assert policy.score(0, 12) == pytest.approx(0.8 + 0.423985, abs=1e-4)

    def test_frozen_ucb2_score_on_played_arm(self, rng):
        policy = AffUCB2(1, rng, 0.0)
        rewards = [1, 0, 0, 1, 1, 1, 0]
        for t, y in enumerate(rewards, start=1):
            policy.feed(0, y, t)
        n = len(rewards)
        expected = np.mean(rewards) + math.sqrt(math.log(20) / (2 * n))
        assert policy.score(0, n) == pytest.approx(expected, abs=1e-12)


    @pytest.mark.parametrize("gap", [0, 1, 3, 7, 50])
    def test_ucb2_mean_term_cancels_over_gaps(self, gap):
        state = _volatile_state()
        assert state.lambda_ < 1.0
        m_tilde, w_tilde, k_tilde = discounted_quantities(state, state.t_last + gap, 3)
        assert m_tilde / w_tilde == pytest.approx(state.m / state.w, rel=1e-12)
        assert k_tilde / w_tilde ** 2 == pytest.approx(state.k / state.w ** 2, rel=1e-12)


class TestFrozenDGreedy:
    def test_never_explores(self):
        policy = AffDGreedy(3, np.random.default_rng(4), 0.0, 0.001)
        means = [0.2, 0.7, 0.4]
        draws = np.random.default_rng(9)
        for t in range(1, 400):
            arm = policy.choose(t)
            if t > 3:
                estimates = [s.m / s.w for s in policy.states]
                assert estimates[arm] == max(estimates)
            policy.feed(arm, int(draws.random() < means[arm]), t)


class TestThompsonUpdates:
    def test_ts_update_selected(self):
        assert ts_update(BetaParams(2, 2), True, 1) == BetaParams(3, 2)

    def test_ts_update_unselected(self):
        assert ts_update(BetaParams(2, 2), False) == BetaParams(2, 2)

    def test_aff_ts_update(self):
        posterior = aff_ts_update(2.0, 2.0, _idle_state(), 12, 2)
        assert posterior.alpha == pytest.approx(5.6)
        assert posterior.beta == pytest.approx(2.9)

    def test_aff_ts_posterior_flattens_with_idle_time(self):
        state = _volatile_state()
        assert state.lambda_ < 1.0
        posteriors = [aff_ts_update(2.0, 2.0, state, state.t_last + gap, 3) for gap in (0, 1, 2, 5, 10, 50)]
        weights = [p.alpha + p.beta - 4.0 for p in posteriors]
        assert all(later < earlier for earlier, later in zip(weights, weights[1:]))
        distance = [abs(p.mean - 0.5) for p in posteriors]
        assert all(later <= earlier for earlier, later in zip(distance, distance[1:]))

    def test_dts_standard_below_threshold(self):
        assert dts_update(BetaParams(2, 2), 1, 10) == BetaParams(3, 2)

    def test_dts_rescales_at_threshold(self):
        updated = dts_update(BetaParams(3, 2), 0, 5)
        assert (updated.alpha, updated.beta) == pytest.approx((2.5, 2.5))

    def test_dts_sum_stays_at_threshold(self):
        params = BetaParams(2, 2)
        for y in [1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1]:
            params = dts_update(params, y, 6)
        assert params.alpha + params.beta == pytest.approx(6)

    def test_dts_rejects_non_binary_reward(self):
        with pytest.raises(ValueError):
            dts_update(BetaParams(2, 2), 0.5, 10)

    @pytest.mark.parametrize(
        "variant, overrides, expected",
        [
            (1, {"s2": 0.25}, 15.0),
            (2, {"w": 11.0}, 10.0),
            (1, {"s2": 0.0}, 7.0),
            (2, {"w": 1.0}, 7.0),
        ],
    )
    def test_aff_dts_threshold(self, variant, overrides, expected):
        assert aff_dts_threshold(variant, _idle_state(**overrides), 7.0) == pytest.approx(expected)

    def test_aff_dts_threshold_bad_variant(self):
        with pytest.raises(ValueError):
            aff_dts_threshold(3, _idle_state(s2=0.1), 10.0)

    def test_optimistic_draws_floor_at_mean(self, rng):
        params = [BetaParams(2, 8), BetaParams(30, 10)]
        for _ in range(200):
            draws = sample_posteriors(params, rng, optimistic=True)
            assert draws[0] >= 0.2
            assert draws[1] >= 0.75


class TestThompsonPolicies:
    def test_frozen_aff_ts_matches_ts_posteriors(self, rng):
        ts = ThompsonSampling(2, rng, 2.0, 2.0)
        aff = AffThompsonSampling(2, rng, 0.0, 2.0, 2.0)
        for t, (arm, y) in enumerate([(0, 1), (1, 0), (0, 0), (0, 1), (1, 1)], start=1):
            ts.feed(arm, y, t)
            aff.feed(arm, y, t)
        for mine, theirs in zip(aff.posteriors(5), ts.params):
            assert mine.alpha == pytest.approx(theirs.alpha)
            assert mine.beta == pytest.approx(theirs.beta)

    def test_aff_dts_records_thresholds(self, rng):
        policy = AffDynamicThompsonSampling(2, rng, 0.001, 2.0, 2.0, 10.0, variant=2)
        policy.feed(0, 1, 1)
        assert policy.thresholds[0] == 10.0  # w = 1 falls back
        policy.feed(0, 0, 2)
        assert policy.thresholds[0] == pytest.approx(policy.states[0].w - 1.0)
        assert policy.name == "aff_dts2"

    def test_same_seed_same_choices(self):
        def run(seed):
            policy = AffThompsonSampling(3, np.random.default_rng(seed), 0.001, 2.0, 2.0)
            arms = []
            for t in range(1, 200):
                arm = policy.choose(t)
                policy.feed(arm, t % 2, t)
                arms.append(arm)
            return arms

        assert run(3) == run(3)


class TestTieBreaking:
    """Every comparison policy picks uniformly among arms it cannot tell apart."""

    @pytest.mark.parametrize("name", [n for n in POLICY_NAMES if n not in REFERENCE_POLICIES])
    def test_identical_arms_are_chosen_uniformly(self, name, rng):
        policy = build_policy(name, {}, 3, rng, horizon=1000, switch_points=0)
        # every arm sees the same rewards at the same times
        for t in range(1, policy.burn_in + 1):
            for arm in range(3):
                policy.feed(arm, 1, t)
        t = policy.burn_in_steps + 1
        picks = np.array([policy.choose(t) for _ in range(20_000)])
        np.testing.assert_allclose(np.bincount(picks, minlength=3) / picks.size, 1 / 3, atol=0.02)


class TestReferencePolicies:
    def test_fixed_arm(self, rng):
        policy = FixedArm(3, rng, 2)
        assert {policy.choose(t) for t in range(1, 20)} == {2}

    def test_fixed_arm_out_of_range(self, rng):
        with pytest.raises(ValueError):
            FixedArm(2, rng, 2)

    def test_oracle_needs_binding(self, rng):
        policy = Oracle(2, rng)
        with pytest.raises(RuntimeError):
            policy.choose(1)
        policy.bind(np.array([1, 0, 1]))
        assert [policy.choose(t) for t in (1, 2, 3)] == [1, 0, 1]


class TestRegistry:
    def test_defaults(self):
        params = resolve_params("aff_ucb1")
        assert params == {"eta": 0.001, "eta_mode": "fixed", "M": 10, "xi": 0.05}

    def test_adaptive_eta_keyword(self):
        params = resolve_params("aff_ts", {"eta": "adaptive"})
        assert params["eta_mode"] == "adaptive"
        assert params["eta"] == pytest.approx(0.0001)

    def test_d_defaults_to_eta(self):
        assert resolve_params("aff_d_greedy", {"eta": 0.01})["d"] == 0.01

    def test_epsilon_out_of_range(self):
        with pytest.raises(ValueError, match="epsilon"):
            resolve_params("eps_greedy", {"epsilon": 1.5})

    def test_unknown_policy(self):
        with pytest.raises(ValueError, match="unknown policy"):
            resolve_params("greedy")

    def test_unknown_parameter(self):
        with pytest.raises(ValueError, match="does not accept"):
            resolve_params("ucb", {"eta": 0.1})

    def test_auto_parameters(self):
        assert resolve_params("d_ucb")["lambda_fixed"] == "auto"
        assert resolve_params("sw_ucb", {"W": "auto"})["W"] == "auto"

    def test_derived_discount(self):
        assert derive_lambda_fixed(10000, 4) == pytest.approx(0.995)

    def test_derived_window(self):
        assert derive_window(10000, 4) == 303
        assert derive_window(10000, 0) == 10000
        assert derive_window(10, 10000) == 1

    def test_auto_needs_horizon(self, rng):
        with pytest.raises(ValueError, match="horizon"):
            build_policy("sw_ucb", {}, 2, rng)

    def test_builds_every_named_policy(self, rng):
        for name in ("eps_greedy", "ucb", "ts", "ots", "dts", "d_ucb", "sw_ucb", "aff_d_greedy",
                     "aff_ucb1", "aff_ucb2", "aff_ts", "aff_ots", "aff_dts1", "aff_dts2", "oracle"):
            policy = build_policy(name, {}, 2, rng, horizon=100, switch_points=3)
            assert policy.name == name
