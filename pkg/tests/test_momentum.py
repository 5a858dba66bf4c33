"""Model operation tests with independently computed expected values."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tennis_momentum.errors import (
    DegenerateInput,
    InvalidEPoints,
    InvalidR,
    MatchAlreadyOver,
    NoHistory,
    ServerMismatch,
    Unachievable,
    UnknownTransform,
)
from tennis_momentum.momentum import (
    ModelConfig,
    MomentumState,
    PlayerProfile,
    PointRecord,
    efficiency,
    expected_match_points,
    fit_r,
    historical_prob,
    instant_prob,
    long_term_prob,
    process_point,
    replay_match,
    scoring_prob_for,
    short_term_momentum,
    tmm,
)
from tennis_momentum.scoring import BEST_OF_FIVE, BEST_OF_THREE, PlayerId, apply_point, initial_state

P1, P2 = PlayerId.P1, PlayerId.P2


def profile(won, attempts, expected=100.0, label=""):
    return PlayerProfile(won, attempts, expected, label)


def exact_efficiency(k, r):
    # Independent oracle: exact rational geometric sum.
    rr = Fraction(r)
    return float(2 - sum(Fraction(1) / rr**n for n in range(k + 1)))


class TestHistoricalProb:
    def test_direct_ratio(self):
        assert historical_prob(profile(30, 50)) == 0.6

    def test_boundaries(self):
        assert historical_prob(profile(50, 50)) == 1.0
        assert historical_prob(profile(0, 50)) == 0.0

    def test_no_history(self):
        with pytest.raises(NoHistory):
            historical_prob(profile(0, 0))


class TestScoringProbFor:
    def test_server_keeps_own_probability(self):
        assert scoring_prob_for(P1, P1, 0.7) == 0.7

    def test_returner_gets_complement(self):
        assert scoring_prob_for(P2, P1, 0.7) == pytest.approx(0.3)

    def test_symmetry_point(self):
        assert scoring_prob_for(P1, P2, 0.5) == 0.5


class TestInstantProb:
    def make_state(self, won, attempts):
        return MomentumState((won, 0), (attempts, 0), (1.0, 1.0), attempts, 200.0)

    def test_raw_ratio_without_prior(self):
        config = ModelConfig(prior_strength=0)
        assert instant_prob(self.make_state(8, 10), P1, 0.6, config) == 0.8

    def test_prior_pulls_toward_history(self):
        # Posterior mean by hand: (20*0.6 + 8) / (20 + 10) = 20/30.
        config = ModelConfig(prior_strength=20)
        assert instant_prob(self.make_state(8, 10), P1, 0.6, config) == pytest.approx(
            20 / 30, abs=1e-15
        )

    def test_fallback_before_first_serve(self):
        config = ModelConfig(prior_strength=0)
        assert instant_prob(self.make_state(0, 0), P1, 0.65, config) == 0.65

    def test_prior_only_equals_history(self):
        config = ModelConfig(prior_strength=20)
        assert instant_prob(self.make_state(0, 0), P1, 0.65, config) == pytest.approx(0.65)

    def test_degeneracy_random_tallies(self):
        # prior_strength 0 must reproduce the raw in-match ratio exactly.
        rng = np.random.Generator(np.random.PCG64(7))
        config = ModelConfig(prior_strength=0)
        for _ in range(1000):
            attempts = int(rng.integers(1, 200))
            won = int(rng.integers(0, attempts + 1))
            state = self.make_state(won, attempts)
            assert instant_prob(state, P1, 0.5, config) == won / attempts


class TestEfficiency:
    def test_ace_is_one_for_every_r(self):
        for r in (1.5, 2.0, 3.0, 10.0):
            assert efficiency(0, r) == 1.0

    def test_three_rallies_base_three(self):
        # 1 - 1/3 - 1/9 - 1/27 = 14/27, by exact rational summation.
        assert efficiency(3, 3) == pytest.approx(14 / 27, abs=1e-12)
        assert exact_efficiency(3, 3) == pytest.approx(14 / 27, abs=1e-15)

    def test_three_rallies_base_two(self):
        assert efficiency(3, 2) == pytest.approx(0.125, abs=1e-15)

    def test_closed_form_r2(self):
        for k in range(41):
            assert abs(efficiency(k, 2.0) - 2.0 ** (-k)) <= 1e-12

    def test_invalid_r(self):
        with pytest.raises(InvalidR):
            efficiency(3, 1.0)
        with pytest.raises(InvalidR):
            efficiency(3, 0.5)

    def test_negative_k(self):
        with pytest.raises(ValueError):
            efficiency(-1, 2.0)

    @given(st.integers(0, 60), st.floats(1.01, 50.0))
    @settings(max_examples=200, deadline=None)
    def test_matches_exact_summation(self, k, r):
        assert efficiency(k, r) == pytest.approx(exact_efficiency(k, r), abs=1e-9)

    @given(st.integers(0, 80), st.floats(1.01, 50.0))
    @settings(max_examples=200, deadline=None)
    def test_strictly_decreasing_in_k(self, k, r):
        # Strict once the decrement r^-(k+1) is representable next to the sum.
        if r ** -(k + 1) > 1e-12:
            assert efficiency(k + 1, r) < efficiency(k, r)
        else:
            assert efficiency(k + 1, r) <= efficiency(k, r)

    def test_bounds_and_tail_limit(self):
        for r in (2.0, 2.5, 3.0, 10.0):
            for k in range(0, 60):
                e = efficiency(k, r)
                assert 0 < e <= 1
            assert efficiency(500, r) == pytest.approx((r - 2) / (r - 1), abs=1e-9)


class TestFitR:
    def test_all_ones_target_half(self):
        # mean = 1 - 1/r, so target 0.5 gives r = 2 by algebra.
        assert fit_r([1, 1, 1], 0.5) == pytest.approx(2.0, abs=1e-6)

    def test_residual_within_tolerance(self):
        counts = [1, 1, 2, 2]
        r = fit_r(counts, 0.6)
        mean = sum(efficiency(k, r) for k in counts) / len(counts)
        assert abs(mean - 0.6) <= 1e-9

    def test_against_grid_scan(self):
        # Dense grid scan oracle over r.
        counts = [1, 1, 2, 2]
        grid = np.linspace(1.0001, 50.0, 200001)
        means = np.array([sum(efficiency(k, r) for k in counts) / len(counts) for r in grid])
        best = grid[np.argmin(np.abs(means - 0.6))]
        assert fit_r(counts, 0.6) == pytest.approx(best, abs=1e-3)

    def test_all_zero_counts_returns_default(self):
        assert fit_r([0, 0, 0], 1.0) == 2.0

    def test_all_zero_counts_other_target(self):
        with pytest.raises(DegenerateInput):
            fit_r([0, 0], 0.9)

    def test_unachievable_target(self):
        with pytest.raises(Unachievable):
            fit_r([1, 2], 1.0)

    def test_empty_counts(self):
        with pytest.raises(ValueError):
            fit_r([], 0.5)


class TestLongTermProb:
    def test_start_of_match(self):
        assert long_term_prob(0.6, 0.8, 0, 200.0) == 0.6

    def test_midpoint(self):
        # (0.5)(0.6) + (0.5)(0.8) by hand.
        assert long_term_prob(0.6, 0.8, 100, 200.0) == pytest.approx(0.7, abs=1e-15)

    def test_clamp_past_expected_length(self):
        assert long_term_prob(0.6, 0.8, 250, 200.0, clamp=True) == 0.8

    def test_unclamped_extrapolates(self):
        # w = 1.25 -> 0.6 + 1.25 * 0.2 = 0.85
        assert long_term_prob(0.6, 0.8, 250, 200.0, clamp=False) == pytest.approx(0.85)

    def test_invalid_e_points(self):
        with pytest.raises(InvalidEPoints):
            long_term_prob(0.6, 0.8, 10, 0.0)

    @given(
        st.floats(0.0, 1.0), st.floats(0.0, 1.0),
        st.integers(0, 400), st.floats(1.0, 400.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_convex_blend(self, p_hist, p_inst, t, e):
        value = long_term_prob(p_hist, p_inst, t, e)
        assert min(p_hist, p_inst) - 1e-12 <= value <= max(p_hist, p_inst) + 1e-12

    def test_exact_endpoints_random_triples(self):
        rng = np.random.Generator(np.random.PCG64(11))
        for _ in range(1000):
            p_hist, p_inst = rng.random(), rng.random()
            e = float(rng.uniform(1.0, 400.0))
            assert abs(long_term_prob(p_hist, p_inst, 0, e) - p_hist) <= 1e-12
            t_full = int(np.ceil(e))
            assert abs(long_term_prob(p_hist, p_inst, t_full, e, clamp=True) - p_inst) <= 1e-12


class TestExpectedMatchPoints:
    def test_sum(self):
        assert expected_match_points(profile(1, 2, 110.0), profile(1, 2, 95.0)) == 205.0

    def test_degenerate_but_positive(self):
        assert expected_match_points(profile(1, 2, 0.0), profile(1, 2, 100.0)) == 100.0

    def test_mean_of_fixture_matches(self):
        # Two players each averaging 120 over four prior matches.
        totals = [110, 130, 120, 140]
        expected = sum(totals) / len(totals)
        assert expected == 125.0
        assert expected_match_points(
            profile(1, 2, expected), profile(1, 2, expected)
        ) == 250.0

    def test_zero_sum_rejected(self):
        with pytest.raises(InvalidEPoints):
            expected_match_points(profile(1, 2, 0.0), profile(1, 2, 0.0))


class TestShortTermMomentum:
    def test_identity_at_full_efficiency(self):
        assert short_term_momentum(0.6, 1.0, ModelConfig()) == 0.6

    def test_identity_product(self):
        assert short_term_momentum(0.6, 0.5, ModelConfig()) == pytest.approx(0.3)

    def test_zero_annihilates(self):
        assert short_term_momentum(0.0, 0.73, ModelConfig()) == 0.0

    def test_clamp01_transform(self):
        config = ModelConfig(stm_transform="clamp01")
        assert short_term_momentum(0.6, -0.4, config) == 0.0
        assert short_term_momentum(0.6, 1.7, config) == pytest.approx(0.6)

    def test_unknown_transform(self):
        config = ModelConfig(stm_transform="does-not-exist")
        with pytest.raises(UnknownTransform):
            short_term_momentum(0.6, 1.0, config)


class TestTmm:
    def test_product(self):
        assert tmm(0.7, 0.5) == pytest.approx(0.35)

    def test_identity_efficiency(self):
        assert tmm(0.613, 1.0) == 0.613

    def test_zero(self):
        assert tmm(0.0, 0.9) == 0.0


class TestProcessPoint:
    CONFIG = ModelConfig(r=2.0, prior_strength=0, efficiency_smoothing=1.0)

    def setup_method(self):
        self.profiles = (profile(60, 100, 100.0, "a"), profile(40, 100, 100.0, "b"))
        self.score = initial_state(BEST_OF_FIVE, P1)
        self.state = MomentumState.initial(200.0)

    def test_first_point_ace(self):
        # Hand-chained: p_inst = 1/1; w = 1/200; p_ltm = 0.6 + 0.005 * 0.4.
        point = PointRecord(P1, P1, 0, is_ace=True)
        state, sample = process_point(self.state, self.score, point, self.profiles, self.CONFIG)
        s1 = sample.for_player(P1)
        assert s1.p_inst_effective == 1.0
        assert s1.p_ltm == pytest.approx(0.602, abs=1e-12)
        assert s1.efficiency_smoothed == 1.0
        assert s1.tmm == pytest.approx(0.602, abs=1e-12)
        assert s1.m_stm == pytest.approx(0.6, abs=1e-12)
        s2 = sample.for_player(P2)
        assert s2.p_hist_effective == pytest.approx(0.4)
        assert s2.p_inst_effective == 0.0
        assert s2.p_ltm == pytest.approx(0.398, abs=1e-12)
        assert state.t_points == 1
        assert state.serve_won == (1, 0) and state.serve_attempts == (1, 0)

    def test_first_point_double_fault(self):
        point = PointRecord(P1, P2, 0, is_double_fault=True)
        state, sample = process_point(self.state, self.score, point, self.profiles, self.CONFIG)
        s1 = sample.for_player(P1)
        assert s1.p_inst_effective == 0.0
        assert s1.efficiency_raw == 0.0
        assert s1.efficiency_smoothed == 0.0
        s2 = sample.for_player(P2)
        assert s2.p_inst_effective == 1.0
        assert s2.efficiency_smoothed == 1.0  # winner untouched on a double fault
        assert state.serve_won == (0, 0) and state.serve_attempts == (1, 0)

    def test_server_mismatch(self):
        point = PointRecord(P2, P2, 1)
        with pytest.raises(ServerMismatch):
            process_point(self.state, self.score, point, self.profiles, self.CONFIG)

    def test_match_over(self):
        score = self.score
        for _ in range(72):
            score = apply_point(score, P1, BEST_OF_FIVE)
        assert score.winner is P1
        point = PointRecord(score.server, P1, 1)
        with pytest.raises(MatchAlreadyOver):
            process_point(self.state, score, point, self.profiles, self.CONFIG)

    def test_ema_smoothing(self):
        config = ModelConfig(r=2.0, prior_strength=0, efficiency_smoothing=0.3)
        point = PointRecord(P1, P1, 2)  # raw efficiency 0.25
        state, sample = process_point(self.state, self.score, point, self.profiles, config)
        expected = 1.0 + 0.3 * (0.25 - 1.0)
        assert sample.for_player(P1).efficiency_smoothed == pytest.approx(expected, abs=1e-15)
        assert sample.for_player(P1).efficiency_raw == 0.25


class TestReplayMatch:
    CONFIG = ModelConfig(r=2.0, prior_strength=0, efficiency_smoothing=1.0)

    def complementary_profiles(self):
        return (profile(60, 100, 100.0), profile(40, 100, 100.0))

    def sweep_points(self):
        # P1 wins 48 straight rally-free points (aces on own serve).
        fmt = BEST_OF_THREE
        state = initial_state(fmt, P1)
        points = []
        while state.winner is None:
            is_ace = state.server is P1
            points.append(PointRecord(state.server, P1, 0, is_ace=is_ace))
            state = apply_point(state, P1, fmt)
        return points

    def test_empty_sequence(self):
        assert replay_match([], self.complementary_profiles(), BEST_OF_THREE, self.CONFIG) == []

    def test_sweep_tmm_non_decreasing(self):
        points = self.sweep_points()
        assert len(points) == 48
        samples = replay_match(points, self.complementary_profiles(), BEST_OF_THREE, self.CONFIG)
        series = [s.for_player(P1).tmm for s in samples]
        assert all(b >= a for a, b in zip(series[1:], series[2:]))
        assert series[-1] > series[1]

    def test_mid_match_swing_crosses(self):
        # P2 takes the first 40 points, P1 everything after: the tmm
        # series must cross at least once. Rally-free points keep both
        # efficiencies at 1 so the blend drives the crossing.
        fmt = BEST_OF_FIVE
        state = initial_state(fmt, P1)
        points = []
        while state.winner is None:
            winner = P2 if state.total_points_played < 40 else P1
            points.append(PointRecord(state.server, winner, 0))
            state = apply_point(state, winner, fmt)
        assert state.winner is P1
        profiles = (profile(50, 100, 120.0), profile(50, 100, 120.0))
        samples = replay_match(points, profiles, fmt, self.CONFIG)
        diffs = [s.for_player(P1).tmm - s.for_player(P2).tmm for s in samples]
        assert min(diffs) < 0 < max(diffs)

    def test_replay_is_deterministic(self):
        points = self.sweep_points()
        profiles = self.complementary_profiles()
        a = replay_match(points, profiles, BEST_OF_THREE, self.CONFIG)
        b = replay_match(points, profiles, BEST_OF_THREE, self.CONFIG)
        assert a == b

    def test_length_contract(self):
        points = self.sweep_points()
        samples = replay_match(points, self.complementary_profiles(), BEST_OF_THREE, self.CONFIG)
        assert len(samples) == len(points)
        assert [s.point_index for s in samples] == list(range(1, len(points) + 1))

    def test_server_mismatch_carries_index(self):
        points = self.sweep_points()
        bad = points[:5] + [PointRecord(points[5].server.opponent, P1, 0)]
        with pytest.raises(ServerMismatch) as excinfo:
            replay_match(bad, self.complementary_profiles(), BEST_OF_THREE, self.CONFIG)
        assert excinfo.value.point_index == 5

    def test_complement_and_factorization_invariants(self):
        points = self.sweep_points()
        config = ModelConfig()  # defaults: prior 20, alpha 0.3
        samples = replay_match(points, self.complementary_profiles(), BEST_OF_THREE, config)
        for s in samples:
            s1, s2 = s.players
            assert abs(s1.p_hist_effective + s2.p_hist_effective - 1.0) <= 1e-12
            assert abs(s1.p_inst_effective + s2.p_inst_effective - 1.0) <= 1e-12
            assert s1.tmm == s1.p_ltm * s1.efficiency_smoothed
            assert s2.tmm == s2.p_ltm * s2.efficiency_smoothed
