#!/usr/bin/env python3
"""Build the bundled synthetic fixtures.

Two scripted matches with deterministic point textures:
  swing    - best-of-5 where the loser of set 1 wins the match; the two
             tmm series must cross at least once.
  onesided - straight-sets 6-3 6-3 6-3 sweep; the winner's tmm must stay
             at or above the loser's for at least 90% of points after
             point 10.

The script re-derives both properties before writing anything, so the
committed fixtures are known-good for the default model configuration.
"""
from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from tennis_momentum.ingest import records_to_rows, rows_to_csv  # noqa: E402
from tennis_momentum.momentum import ModelConfig, PlayerProfile, PointRecord, replay_match  # noqa: E402
from tennis_momentum.scoring import BEST_OF_FIVE, PlayerId, apply_point, initial_state  # noqa: E402

P1, P2 = PlayerId.P1, PlayerId.P2

HOLD = ("W", "W", "L", "W", "W")      # server wins 4-1
BREAK = ("W", "L", "W", "W", "W")     # returner wins 4-1
DEUCE_HOLD = ("W", "L", "W", "L", "L", "W", "W", "W")  # through deuce, 5-3


class Texture:
    """Deterministic rally-count cycles per player, plus ace/fault habits."""

    def __init__(self, k_cycle_p1, k_cycle_p2, df_player=None):
        self.k_cycles = {P1: k_cycle_p1, P2: k_cycle_p2}
        self.df_player = df_player
        self.counters = {P1: 0, P2: 0}

    def next_point(self, server: PlayerId, winner: PlayerId, allow_fault: bool) -> PointRecord:
        cycle = self.k_cycles[winner]
        k = cycle[self.counters[winner] % len(cycle)]
        self.counters[winner] += 1
        if winner is not server and allow_fault and server is self.df_player:
            return PointRecord(server, winner, 0, is_double_fault=True)
        if winner is server and k == 0:
            return PointRecord(server, winner, 0, is_ace=True)
        return PointRecord(server, winner, k)


def build_match(set_scripts, textures):
    """set_scripts: list of game-winner lists; textures: one per set."""
    fmt = BEST_OF_FIVE
    state = initial_state(fmt, P1)
    points = []
    for game_winners, texture in zip(set_scripts, textures):
        for game_no, game_winner in enumerate(game_winners):
            server = state.server
            pattern = DEUCE_HOLD if game_no % 5 == 4 else (
                HOLD if game_winner is server else BREAK)
            faulted = False
            for symbol in pattern:
                winner = game_winner if symbol == "W" else game_winner.opponent
                allow_fault = winner is not server and not faulted
                point = texture.next_point(server, winner, allow_fault)
                faulted = faulted or point.is_double_fault
                points.append(point)
                state = apply_point(state, winner, fmt)
    if state.winner is None:
        raise SystemExit("script bug: match did not finish")
    return points, state


def swing_match():
    scripts = [
        [P2, P1, P2, P2, P1, P2, P2, P2],                      # P2 6-2
        [P1, P2, P1, P2, P1, P2, P1, P2, P1, P2, P1, P1],      # P1 7-5
        [P1, P2, P1, P1, P2, P1, P2, P1, P1],                  # P1 6-3
        [P2, P1, P2, P1, P2, P2, P1, P2, P1, P2],              # P2 6-4
        [P1, P2, P1, P1, P2, P1, P2, P1, P1],                  # P1 6-3
    ]
    textures = [
        Texture(k_cycle_p1=(4, 5, 3), k_cycle_p2=(0, 1, 2), df_player=P1),  # P2 sharp
        Texture(k_cycle_p1=(1, 2, 3), k_cycle_p2=(2, 1, 3)),                # level
        Texture(k_cycle_p1=(0, 1, 2), k_cycle_p2=(4, 3, 5), df_player=P2),  # P1 sharp
        Texture(k_cycle_p1=(2, 3, 1), k_cycle_p2=(1, 2, 0)),                # P2 pushes back
        Texture(k_cycle_p1=(0, 1, 1), k_cycle_p2=(5, 4, 6), df_player=P2),  # P1 closes
    ]
    return build_match(scripts, textures)


def onesided_match():
    set_script = [P1, P2, P1, P1, P1, P2, P1, P2, P1]  # 6-3, P1 holds and breaks twice
    scripts = [set_script, set_script, set_script]
    textures = [
        Texture(k_cycle_p1=(0, 1, 2), k_cycle_p2=(5, 4, 6), df_player=P2)
        for _ in range(3)
    ]
    return build_match(scripts, textures)


SWING_PROFILES = """\
players:
  p1:
    label: Vela
    prior_matches:
      - {points_won_on_serve: 52, serve_attempts: 82, total_points_in_match: 132}
      - {points_won_on_serve: 48, serve_attempts: 78, total_points_in_match: 124}
      - {points_won_on_serve: 55, serve_attempts: 88, total_points_in_match: 138}
      - {points_won_on_serve: 50, serve_attempts: 80, total_points_in_match: 126}
  p2:
    label: Marek
    prior_matches:
      - {points_won_on_serve: 49, serve_attempts: 80, total_points_in_match: 128}
      - {points_won_on_serve: 51, serve_attempts: 84, total_points_in_match: 134}
      - {points_won_on_serve: 47, serve_attempts: 78, total_points_in_match: 122}
      - {points_won_on_serve: 50, serve_attempts: 82, total_points_in_match: 130}
"""

ONESIDED_PROFILES = """\
players:
  p1:
    label: Vela
    prior_matches:
      - {points_won_on_serve: 56, serve_attempts: 80, total_points_in_match: 102}
      - {points_won_on_serve: 58, serve_attempts: 82, total_points_in_match: 98}
      - {points_won_on_serve: 54, serve_attempts: 78, total_points_in_match: 100}
  p2:
    label: Sorel
    prior_matches:
      - {points_won_on_serve: 46, serve_attempts: 80, total_points_in_match: 96}
      - {points_won_on_serve: 45, serve_attempts: 78, total_points_in_match: 92}
      - {points_won_on_serve: 47, serve_attempts: 82, total_points_in_match: 94}
"""

SIM_EXAMPLE = """\
sim:
  serve_win_prob: [0.65, 0.60]
  rally_length_mean: 2.2
  ace_prob: [0.10, 0.07]
  double_fault_prob: [0.05, 0.06]
  replications: 200
  seed: 20240811
  format: {sets_to_win: 2}
model:
  r: 2.0
  prior_strength: 20.0
  efficiency_smoothing: 0.3
profiles:
  p1:
    label: Vela
    prior_matches:
      - {points_won_on_serve: 56, serve_attempts: 80, total_points_in_match: 102}
      - {points_won_on_serve: 58, serve_attempts: 82, total_points_in_match: 98}
  p2:
    label: Sorel
    prior_matches:
      - {points_won_on_serve: 46, serve_attempts: 80, total_points_in_match: 96}
      - {points_won_on_serve: 45, serve_attempts: 78, total_points_in_match: 92}
"""


def profiles_from_yaml(text):
    from tennis_momentum.ingest import derive_profile, parse_profile_file
    return derive_profile(parse_profile_file(text))


def check_swing(points, profiles):
    samples = replay_match(points, profiles, BEST_OF_FIVE, ModelConfig())
    diffs = [s.players[0].tmm - s.players[1].tmm for s in samples]
    assert min(diffs) < 0 < max(diffs), "swing fixture: tmm series do not cross"
    crossings = sum(1 for a, b in zip(diffs, diffs[1:]) if (a < 0) != (b < 0))
    print(f"swing: {len(points)} points, {crossings} tmm crossings")


def check_onesided(points, profiles):
    samples = replay_match(points, profiles, BEST_OF_FIVE, ModelConfig())
    tail = samples[10:]
    above = sum(1 for s in tail if s.players[0].tmm >= s.players[1].tmm)
    share = above / len(tail)
    assert share >= 0.90, f"onesided fixture: winner above for only {share:.1%} after point 10"
    print(f"onesided: {len(points)} points, winner tmm >= loser for {share:.1%} after point 10")


def main():
    out = ROOT / "fixtures"
    out.mkdir(exist_ok=True)

    points, state = swing_match()
    assert state.winner is P1 and state.sets == (3, 2)
    check_swing(points, profiles_from_yaml(SWING_PROFILES))
    (out / "swing_match.csv").write_text(
        rows_to_csv(records_to_rows(points, BEST_OF_FIVE, match_id="swing")), encoding="utf-8")
    (out / "swing_profiles.yaml").write_text(SWING_PROFILES, encoding="utf-8")

    points, state = onesided_match()
    assert state.winner is P1 and state.sets == (3, 0)
    check_onesided(points, profiles_from_yaml(ONESIDED_PROFILES))
    (out / "onesided_match.csv").write_text(
        rows_to_csv(records_to_rows(points, BEST_OF_FIVE, match_id="onesided")), encoding="utf-8")
    (out / "onesided_profiles.yaml").write_text(ONESIDED_PROFILES, encoding="utf-8")

    (out / "sim_example.yaml").write_text(SIM_EXAMPLE, encoding="utf-8")
    print(f"fixtures written to {out}")


if __name__ == "__main__":
    main()
