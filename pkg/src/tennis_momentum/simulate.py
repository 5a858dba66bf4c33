"""Seeded Monte Carlo match generator and model evaluation harness.

RNG is numpy's PCG64, fully determined by an integer seed. Replication
seeds are derived from the master seed with numpy's SeedSequence
(generate_state over uint64), so any single replication can be replayed
from the report alone. Replication i is served first by P1 when i is
even, by P2 when odd, which keeps symmetric configs symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import yaml

from .errors import SimulationStall
from .momentum import ModelConfig, PlayerProfile, PointRecord, expected_match_points, replay_match
from .scoring import BEST_OF_THREE, MatchFormat, PlayerId, apply_point, initial_state


@dataclass(frozen=True, slots=True)
class SimConfig:
    """Generative world: iid serve-win Bernoulli per point with geometric
    rally lengths. momentum_boost > 0 switches on a momentum world where a
    streak of c straight points adds boost*c to the streaking player's
    serve-win probability."""

    serve_win_prob: tuple[float, float]
    rally_length_mean: float = 2.0
    ace_prob: tuple[float, float] = (0.0, 0.0)
    double_fault_prob: tuple[float, float] = (0.0, 0.0)
    format: MatchFormat = BEST_OF_THREE
    replications: int = 1
    seed: int = 0
    max_points: int = 2000
    momentum_boost: float = 0.0

    def __post_init__(self):
        for name in ("serve_win_prob", "ace_prob", "double_fault_prob"):
            pair = getattr(self, name)
            if not all(0.0 <= p <= 1.0 for p in pair):
                raise ValueError(f"{name} entries must be in [0, 1], got {pair}")
        if self.rally_length_mean < 0:
            raise ValueError("rally_length_mean must be >= 0")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.max_points < 1:
            raise ValueError("max_points must be >= 1")


@dataclass(frozen=True)
class SimReport:
    """Aggregates over completed replications. Stalled replications are
    excluded from every rate and listed by index."""

    replications: int
    completed: int
    match_win_rate: tuple[float, float]
    mean_match_length: float
    tmm_accuracy: float
    stalled: tuple[int, ...]
    seeds: tuple[int, ...]


def simulate_match(
    config: SimConfig, seed: int, first_server: PlayerId = PlayerId.P1
) -> list[PointRecord]:
    """Generate one match's point sequence, deterministic given (config, seed).

    Per point: the server wins with their serve-win probability; the
    winner's ace flag (or the loser-server's double-fault flag) is drawn
    from the conditional probability; rally count k is geometric with the
    configured mean, forced to 0 for aces and double faults.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    p_rally = 1.0 / (1.0 + config.rally_length_mean)

    state = initial_state(config.format, first_server)
    points: list[PointRecord] = []
    streak_player: Optional[PlayerId] = None
    streak_len = 0

    while state.winner is None:
        if len(points) >= config.max_points:
            raise SimulationStall(
                f"no winner after {config.max_points} points",
                points_generated=len(points),
            )
        server = state.server
        p_win = config.serve_win_prob[server.value]
        if config.momentum_boost and streak_player is server:
            p_win = min(1.0, p_win + config.momentum_boost * streak_len)
        server_won = rng.random() < p_win
        winner = server if server_won else server.opponent

        is_ace = server_won and rng.random() < config.ace_prob[server.value]
        is_fault = (not server_won) and rng.random() < config.double_fault_prob[server.value]
        if is_ace or is_fault:
            k = 0
        else:
            k = int(rng.geometric(p_rally)) - 1

        points.append(PointRecord(
            server=server,
            point_winner=winner,
            rally_count=k,
            is_ace=is_ace,
            is_double_fault=is_fault,
        ))
        if winner is streak_player:
            streak_len += 1
        else:
            streak_player, streak_len = winner, 1
        state = apply_point(state, winner, config.format)

    return points


def replication_seeds(master_seed: int, n: int) -> list[int]:
    """Per-replication integer seeds split from the master seed."""
    return [int(s) for s in np.random.SeedSequence(master_seed).generate_state(n, dtype=np.uint64)]


def final_score(points: Sequence[PointRecord], fmt: MatchFormat):
    """Replay a point sequence through the scoring machine to its end state."""
    state = initial_state(fmt, points[0].server)
    for p in points:
        state = apply_point(state, p.point_winner, fmt)
    return state


def run_experiment(
    config: SimConfig,
    model_config: ModelConfig,
    profiles: tuple[PlayerProfile, PlayerProfile],
) -> SimReport:
    """Simulate config.replications matches, replay the momentum model over
    each, and aggregate a SimReport.

    Prediction accuracy is the fraction of completed replications where the
    player holding the strictly higher tmm at the half-expected-points mark
    (or at the last point of a shorter match) went on to win.
    """
    seeds = replication_seeds(config.seed, config.replications)
    e_points = expected_match_points(profiles[0], profiles[1])
    t_mark = max(1, round(e_points / 2))

    wins = [0, 0]
    total_points = 0
    correct = 0
    stalled: list[int] = []

    for i, seed in enumerate(seeds):
        first_server = PlayerId.P1 if i % 2 == 0 else PlayerId.P2
        try:
            points = simulate_match(config, seed, first_server)
        except SimulationStall:
            stalled.append(i)
            continue
        samples = replay_match(points, profiles, config.format, model_config)
        winner = final_score(points, config.format).winner
        wins[winner.value] += 1
        total_points += len(points)

        mark = samples[min(t_mark, len(samples)) - 1]
        p1_tmm, p2_tmm = mark.players[0].tmm, mark.players[1].tmm
        if p1_tmm != p2_tmm:
            leader = PlayerId.P1 if p1_tmm > p2_tmm else PlayerId.P2
            if leader is winner:
                correct += 1

    completed = config.replications - len(stalled)
    if completed == 0:
        return SimReport(
            replications=config.replications,
            completed=0,
            match_win_rate=(0.0, 0.0),
            mean_match_length=0.0,
            tmm_accuracy=0.0,
            stalled=tuple(stalled),
            seeds=tuple(seeds),
        )
    return SimReport(
        replications=config.replications,
        completed=completed,
        match_win_rate=(wins[0] / completed, wins[1] / completed),
        mean_match_length=total_points / completed,
        tmm_accuracy=correct / completed,
        stalled=tuple(stalled),
        seeds=tuple(seeds),
    )


def report_to_yaml(report: SimReport) -> str:
    """Serialize a SimReport to YAML with a stable key order."""
    doc = {
        "replications": report.replications,
        "completed": report.completed,
        "match_win_rate": {"p1": report.match_win_rate[0], "p2": report.match_win_rate[1]},
        "mean_match_length": report.mean_match_length,
        "tmm_accuracy": report.tmm_accuracy,
        "stalled_replications": list(report.stalled),
        "replication_seeds": list(report.seeds),
    }
    return yaml.safe_dump(doc, sort_keys=False)
