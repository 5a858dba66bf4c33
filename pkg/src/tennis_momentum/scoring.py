"""Rule-correct tennis scoring state machine.

Advances a match one point at a time with value semantics: apply_point
returns a new ScoreState and never mutates its input. Standard ITF rules
with ad (deuce/advantage) scoring; the format is configurable between
best-of-3 and best-of-5 with regular tiebreaks, including in the final
set by default.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import MatchAlreadyOver


class PlayerId(enum.Enum):
    P1 = 0
    P2 = 1

    @property
    def opponent(self) -> "PlayerId":
        return PlayerId.P2 if self is PlayerId.P1 else PlayerId.P1


def _bump(pair: tuple[int, int], player: PlayerId) -> tuple[int, int]:
    return (pair[0] + 1, pair[1]) if player is PlayerId.P1 else (pair[0], pair[1] + 1)


@dataclass(frozen=True, slots=True)
class MatchFormat:
    """Match configuration: best-of-5 is sets_to_win=3, best-of-3 is 2."""

    sets_to_win: int = 3
    games_per_set: int = 6
    tiebreak_at: int = 6
    tiebreak_points: int = 7
    final_set_tiebreak: bool = True

    def __post_init__(self):
        if self.sets_to_win not in (2, 3):
            raise ValueError(f"sets_to_win must be 2 or 3, got {self.sets_to_win}")
        if self.games_per_set < 1:
            raise ValueError("games_per_set must be >= 1")
        if self.tiebreak_points < 1:
            raise ValueError("tiebreak_points must be >= 1")


BEST_OF_FIVE = MatchFormat(sets_to_win=3)
BEST_OF_THREE = MatchFormat(sets_to_win=2)


@dataclass(frozen=True, slots=True)
class ScoreState:
    """Full score snapshot. Points are raw counts (0,1,2,3,... not 0/15/30/40)."""

    points: tuple[int, int] = (0, 0)
    games: tuple[int, int] = (0, 0)
    sets: tuple[int, int] = (0, 0)
    in_tiebreak: bool = False
    tiebreak_points: tuple[int, int] = (0, 0)
    server: PlayerId = PlayerId.P1
    total_points_played: int = 0
    winner: Optional[PlayerId] = None

    def points_for(self, player: PlayerId) -> int:
        return self.points[player.value]

    def games_for(self, player: PlayerId) -> int:
        return self.games[player.value]

    def sets_for(self, player: PlayerId) -> int:
        return self.sets[player.value]


def initial_state(fmt: MatchFormat, first_server: PlayerId) -> ScoreState:
    """Fresh match: all counters zero, given player serving."""
    return ScoreState(server=first_server)


def is_over(state: ScoreState) -> Optional[PlayerId]:
    """The match winner, or None while play continues."""
    return state.winner


def _is_final_set(state: ScoreState, fmt: MatchFormat) -> bool:
    last = fmt.sets_to_win - 1
    return state.sets == (last, last)


def _tiebreak_opener(tb_total: int, current_server: PlayerId) -> PlayerId:
    # Serve pattern by 1-indexed tiebreak point n: opener serves when
    # (n // 2) is even (points 1, 4, 5, 8, 9, ...). current_server is the
    # server of point tb_total + 1, so invert the pattern at that index.
    n = tb_total + 1
    return current_server if (n // 2) % 2 == 0 else current_server.opponent


def apply_point(state: ScoreState, point_winner: PlayerId, fmt: MatchFormat) -> ScoreState:
    """Advance the match by one point won by point_winner.

    Returns the successor state; raises MatchAlreadyOver if the match has
    been decided.
    """
    if state.winner is not None:
        raise MatchAlreadyOver("cannot apply a point: match already has a winner")

    total = state.total_points_played + 1
    if state.in_tiebreak:
        return _apply_tiebreak_point(state, point_winner, fmt, total)
    return _apply_game_point(state, point_winner, fmt, total)


def _apply_game_point(state, winner, fmt, total) -> ScoreState:
    points = _bump(state.points, winner)
    w, l = points[winner.value], points[winner.opponent.value]
    if not (w >= 4 and w - l >= 2):
        return ScoreState(
            points=points,
            games=state.games,
            sets=state.sets,
            server=state.server,
            total_points_played=total,
        )

    games = _bump(state.games, winner)
    next_server = state.server.opponent
    gw, gl = games[winner.value], games[winner.opponent.value]
    if gw >= fmt.games_per_set and gw - gl >= 2:
        return _complete_set(state, winner, fmt, total, next_server)

    tiebreak_allowed = fmt.final_set_tiebreak or not _is_final_set(state, fmt)
    if games == (fmt.tiebreak_at, fmt.tiebreak_at) and tiebreak_allowed:
        return ScoreState(
            games=games,
            sets=state.sets,
            in_tiebreak=True,
            server=next_server,
            total_points_played=total,
        )

    return ScoreState(
        games=games,
        sets=state.sets,
        server=next_server,
        total_points_played=total,
    )


def _apply_tiebreak_point(state, winner, fmt, total) -> ScoreState:
    tb = _bump(state.tiebreak_points, winner)
    w, l = tb[winner.value], tb[winner.opponent.value]
    if w >= fmt.tiebreak_points and w - l >= 2:
        # Tiebreak counts as one game for rotation: the next game belongs
        # to whichever player received first in the tiebreak.
        opener = _tiebreak_opener(state.tiebreak_points[0] + state.tiebreak_points[1], state.server)
        return _complete_set(state, winner, fmt, total, opener.opponent)

    tb_total = tb[0] + tb[1]
    server = state.server.opponent if tb_total % 2 == 1 else state.server
    return ScoreState(
        games=state.games,
        sets=state.sets,
        in_tiebreak=True,
        tiebreak_points=tb,
        server=server,
        total_points_played=total,
    )


def _complete_set(state, winner, fmt, total, next_server) -> ScoreState:
    sets = _bump(state.sets, winner)
    match_winner = winner if sets[winner.value] == fmt.sets_to_win else None
    return ScoreState(
        sets=sets,
        server=next_server,
        total_points_played=total,
        winner=match_winner,
    )
