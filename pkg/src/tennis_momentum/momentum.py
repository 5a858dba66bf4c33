"""Momentum model: scoring probabilities, rally efficiency, and the TMM fold.

Every operation here is a pure function. The streaming entry points are
process_point (one point in, one MomentumSample out) and replay_match
(fold a whole point sequence). Probabilities follow the serve convention:
the server's scoring probability is their own serve-point rate, the
returner's is the complement.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import (
    DegenerateInput,
    InvalidEPoints,
    InvalidR,
    MatchAlreadyOver,
    NoHistory,
    ServerMismatch,
    Unachievable,
    UnknownTransform,
)
from .scoring import MatchFormat, PlayerId, ScoreState, apply_point, initial_state

DEFAULT_R = 2.0

STM_TRANSFORMS: dict[str, Callable[[float], float]] = {
    "identity": lambda e: e,
    # Clamp efficiency into [0, 1]; useful when r < 2 admits negative values.
    "clamp01": lambda e: min(1.0, max(0.0, e)),
}


@dataclass(frozen=True, slots=True)
class PlayerProfile:
    """Historical aggregates for one player, pooled over prior matches."""

    points_won_on_serve: int
    serve_attempts: int
    expected_points_per_match: float
    label: str = ""

    def __post_init__(self):
        if not 0 <= self.points_won_on_serve <= self.serve_attempts:
            raise ValueError(
                f"need 0 <= points_won_on_serve <= serve_attempts, "
                f"got {self.points_won_on_serve}/{self.serve_attempts}"
            )
        if self.expected_points_per_match < 0:
            raise ValueError("expected_points_per_match must be >= 0")


@dataclass(frozen=True, slots=True)
class PointRecord:
    """One observed point. rally_count is the number of exchanges after the
    serve; an ace is always 0."""

    server: PlayerId
    point_winner: PlayerId
    rally_count: int
    is_ace: bool = False
    is_double_fault: bool = False

    def __post_init__(self):
        if self.rally_count < 0:
            raise ValueError("rally_count must be >= 0")
        if self.is_ace and self.is_double_fault:
            raise ValueError("a point cannot be both an ace and a double fault")
        if self.is_ace and (self.point_winner is not self.server or self.rally_count != 0):
            raise ValueError("an ace is won by the server with rally_count 0")
        if self.is_double_fault and self.point_winner is self.server:
            raise ValueError("a double fault is lost by the server")


@dataclass(frozen=True, slots=True)
class ModelConfig:
    """Model knobs. prior_strength is the empirical-Bayes pseudo-count;
    efficiency_smoothing is the EMA factor (1.0 keeps only the latest raw value)."""

    r: float = DEFAULT_R
    prior_strength: float = 20.0
    efficiency_smoothing: float = 0.3
    double_fault_efficiency: float = 0.0
    clamp_weight: bool = True
    stm_transform: str = "identity"

    def __post_init__(self):
        if self.r <= 1:
            raise InvalidR(f"r must be > 1, got {self.r}")
        if self.prior_strength < 0:
            raise ValueError("prior_strength must be >= 0")
        if not 0 <= self.efficiency_smoothing <= 1:
            raise ValueError("efficiency_smoothing must be in [0, 1]")


@dataclass(frozen=True, slots=True)
class MomentumState:
    """In-match serve tallies and smoothed efficiencies, advanced point by point.
    e_points is fixed at match start and never re-estimated."""

    serve_won: tuple[int, int]
    serve_attempts: tuple[int, int]
    efficiency: tuple[float, float]
    t_points: int
    e_points: float

    @classmethod
    def initial(cls, e_points: float) -> "MomentumState":
        if e_points <= 0:
            raise InvalidEPoints(f"e_points must be > 0, got {e_points}")
        return cls((0, 0), (0, 0), (1.0, 1.0), 0, e_points)


@dataclass(frozen=True, slots=True)
class PlayerSample:
    """One player's model outputs at one point. p_hist_effective and
    p_inst_effective already apply the server/complement rule."""

    p_hist_effective: float
    p_inst_effective: float
    p_ltm: float
    efficiency_raw: float
    efficiency_smoothed: float
    m_stm: float
    tmm: float


@dataclass(frozen=True, slots=True)
class MomentumSample:
    """Both players' model outputs after one point. point_index is 1-based
    and equals total points played including this one."""

    point_index: int
    players: tuple[PlayerSample, PlayerSample]

    def for_player(self, player: PlayerId) -> PlayerSample:
        return self.players[player.value]


def historical_prob(profile: PlayerProfile) -> float:
    """Serve-point win rate pooled over prior matches."""
    if profile.serve_attempts == 0:
        raise NoHistory(f"profile {profile.label!r} has no serve attempts")
    return profile.points_won_on_serve / profile.serve_attempts


def scoring_prob_for(player: PlayerId, server: PlayerId, p_server: float) -> float:
    """A player's scoring probability given the server's: own rate when
    serving, complement when returning."""
    return p_server if player is server else 1.0 - p_server


def instant_prob(state: MomentumState, player: PlayerId, p_hist: float, config: ModelConfig) -> float:
    """In-match serve rate smoothed toward p_hist by the pseudo-count prior.

    With prior_strength 0 this is the raw in-match ratio; before the first
    serve attempt it falls back to p_hist.
    """
    m = config.prior_strength
    attempts = state.serve_attempts[player.value]
    if m == 0 and attempts == 0:
        return p_hist
    won = state.serve_won[player.value]
    return (m * p_hist + won) / (m + attempts)


def efficiency(k: int, r: float) -> float:
    """Rally efficiency 2 - sum_{n=0}^{k} r^-n. Equals 1 for k = 0 and
    exactly 2^-k for r = 2; decreasing in k.

    Uses the closed form (r - 2 + r^-k) / (r - 1): term-by-term summation
    would round the r = 2 value to zero past k ~ 50.
    """
    if r <= 1:
        raise InvalidR(f"r must be > 1, got {r}")
    if k < 0:
        raise ValueError("rally count must be >= 0")
    return (r - 2.0 + r ** (-float(k))) / (r - 1.0)


def fit_r(rally_counts: Sequence[int], target_mean_efficiency: float, *,
          tol: float = 1e-9, r_max: float = 1e6) -> float:
    """Calibrate r so the mean efficiency over rally_counts hits the target.

    Bisection on r in (1, r_max]; the mean is strictly increasing in r
    whenever any count is nonzero.
    """
    if not rally_counts:
        raise ValueError("rally_counts must be non-empty")
    if not 0 < target_mean_efficiency <= 1:
        raise ValueError("target_mean_efficiency must be in (0, 1]")

    counts = list(rally_counts)
    if all(k == 0 for k in counts):
        if abs(target_mean_efficiency - 1.0) <= tol:
            return DEFAULT_R
        raise DegenerateInput("all rally counts are 0: mean efficiency is 1 for every r")

    def mean_eff(r: float) -> float:
        return sum(efficiency(k, r) for k in counts) / len(counts)

    lo, hi = 1.0 + 1e-9, r_max
    if target_mean_efficiency <= mean_eff(lo) or target_mean_efficiency > mean_eff(hi):
        raise Unachievable(
            f"target {target_mean_efficiency} outside attainable range "
            f"({mean_eff(lo):.6g}, {mean_eff(hi):.6g}]"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mean_eff(mid) < target_mean_efficiency:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


def long_term_prob(p_hist: float, p_inst: float, t_points: int, e_points: float,
                   clamp: bool = True) -> float:
    """Blend of p_hist and p_inst weighted by match progress w = t/e_points."""
    if e_points <= 0:
        raise InvalidEPoints(f"e_points must be > 0, got {e_points}")
    w = t_points / e_points
    if clamp:
        w = min(1.0, max(0.0, w))
    return (1.0 - w) * p_hist + w * p_inst


def expected_match_points(profile_a: PlayerProfile, profile_b: PlayerProfile) -> float:
    """Expected total points of the match: sum of both players' per-match averages."""
    total = profile_a.expected_points_per_match + profile_b.expected_points_per_match
    if total <= 0:
        raise InvalidEPoints("expected points of the two players sum to 0")
    return total


def short_term_momentum(p_hist: float, e: float, config: ModelConfig) -> float:
    """Diagnostic short-term momentum p_hist * f(e)."""
    try:
        f = STM_TRANSFORMS[config.stm_transform]
    except KeyError:
        raise UnknownTransform(f"unknown stm_transform {config.stm_transform!r}") from None
    return p_hist * f(e)


def tmm(p_ltm: float, e_smoothed: float) -> float:
    """Combined momentum value: long-term probability times smoothed efficiency."""
    return p_ltm * e_smoothed


def process_point(
    state: MomentumState,
    score: ScoreState,
    point: PointRecord,
    profiles: tuple[PlayerProfile, PlayerProfile],
    config: ModelConfig,
) -> tuple[MomentumState, MomentumSample]:
    """Advance the momentum state by one point and emit both players' sample.

    Tallies and the progress weight are evaluated after the point. The point
    winner's efficiency EMA absorbs the raw rally efficiency; on a double
    fault the server's EMA absorbs the configured penalty instead and the
    winner's is left alone.
    """
    if score.winner is not None:
        raise MatchAlreadyOver("cannot process a point: match already has a winner")
    if point.server is not score.server:
        raise ServerMismatch(
            f"point lists {point.server.name} serving but score has {score.server.name}"
        )

    server = point.server
    winner = point.point_winner

    serve_attempts = _bump_int(state.serve_attempts, server)
    serve_won = _bump_int(state.serve_won, server) if winner is server else state.serve_won

    alpha = config.efficiency_smoothing
    eff = list(state.efficiency)
    raw = list(state.efficiency)  # repeats the smoothed value when no update occurs
    if point.is_double_fault:
        updated, raw_value = server, config.double_fault_efficiency
    else:
        updated, raw_value = winner, efficiency(point.rally_count, config.r)
    i = updated.value
    raw[i] = raw_value
    eff[i] = eff[i] + alpha * (raw_value - eff[i])

    new_state = MomentumState(
        serve_won=serve_won,
        serve_attempts=serve_attempts,
        efficiency=(eff[0], eff[1]),
        t_points=state.t_points + 1,
        e_points=state.e_points,
    )

    p_hist_server = historical_prob(profiles[server.value])
    p_inst_server = instant_prob(new_state, server, p_hist_server, config)

    samples = []
    for player in (PlayerId.P1, PlayerId.P2):
        p_hist_eff = scoring_prob_for(player, server, p_hist_server)
        p_inst_eff = scoring_prob_for(player, server, p_inst_server)
        p_ltm = long_term_prob(
            p_hist_eff, p_inst_eff, new_state.t_points, new_state.e_points, config.clamp_weight
        )
        e_sm = eff[player.value]
        samples.append(
            PlayerSample(
                p_hist_effective=p_hist_eff,
                p_inst_effective=p_inst_eff,
                p_ltm=p_ltm,
                efficiency_raw=raw[player.value],
                efficiency_smoothed=e_sm,
                m_stm=short_term_momentum(p_hist_eff, e_sm, config),
                tmm=tmm(p_ltm, e_sm),
            )
        )

    sample = MomentumSample(point_index=new_state.t_points, players=(samples[0], samples[1]))
    return new_state, sample


def replay_match(
    points: Sequence[PointRecord],
    profiles: tuple[PlayerProfile, PlayerProfile],
    fmt: MatchFormat,
    config: ModelConfig,
) -> list[MomentumSample]:
    """Fold a whole point sequence into one MomentumSample per point.

    The scoring state machine validates server rotation and terminal
    detection as it goes; errors carry the offending point index.
    """
    if not points:
        return []
    e_points = expected_match_points(profiles[0], profiles[1])
    mstate = MomentumState.initial(e_points)
    score = initial_state(fmt, points[0].server)
    out: list[MomentumSample] = []
    for index, point in enumerate(points):
        try:
            mstate, sample = process_point(mstate, score, point, profiles, config)
            score = apply_point(score, point.point_winner, fmt)
        except ServerMismatch as exc:
            raise ServerMismatch(f"point {index}: {exc}", point_index=index) from None
        except MatchAlreadyOver:
            raise MatchAlreadyOver(f"point {index}: match already decided") from None
        out.append(sample)
    return out


def _bump_int(pair: tuple[int, int], player: PlayerId) -> tuple[int, int]:
    return (pair[0] + 1, pair[1]) if player is PlayerId.P1 else (pair[0], pair[1] + 1)
