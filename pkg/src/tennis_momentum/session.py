"""Live coaching session: protocol message handling over the replay engine.

A session wraps the same pure replay path as offline analysis. Points are
retained so undo is a full recomputation of the survivors, which keeps the
live series identical to an offline replay of the same sequence by
construction. what_if projections fold hypothetical points over copies and
never touch session state.

Message payloads are plain dicts (JSON objects on the wire); players are
1/2 integers as in the CSV convention. Client messages: start_session,
record_point, undo, what_if, end_session. Server messages: session_ack,
sample_update, projection, error.
"""
from __future__ import annotations

import secrets
from dataclasses import dataclass, field
from typing import Optional

from .errors import TennisMomentumError
from .ingest import derive_profile, profile_file_from_players
from .momentum import (
    ModelConfig,
    MomentumSample,
    MomentumState,
    PlayerProfile,
    PointRecord,
    expected_match_points,
    process_point,
)
from .scoring import MatchFormat, PlayerId, ScoreState, apply_point, initial_state


def score_to_dict(state: ScoreState) -> dict:
    return {
        "points": list(state.points),
        "games": list(state.games),
        "sets": list(state.sets),
        "in_tiebreak": state.in_tiebreak,
        "tiebreak_points": list(state.tiebreak_points),
        "server": state.server.value + 1,
        "total_points_played": state.total_points_played,
        "winner": None if state.winner is None else state.winner.value + 1,
    }


def sample_to_dict(sample: MomentumSample) -> dict:
    out = {"point_index": sample.point_index}
    for key, player in (("p1", sample.players[0]), ("p2", sample.players[1])):
        out[key] = {
            "p_hist": player.p_hist_effective,
            "p_inst": player.p_inst_effective,
            "p_ltm": player.p_ltm,
            "efficiency_raw": player.efficiency_raw,
            "efficiency_smoothed": player.efficiency_smoothed,
            "m_stm": player.m_stm,
            "tmm": player.tmm,
        }
    return out


def _error(field_name: str, message: str) -> dict:
    return {"type": "error", "field": field_name, "message": message}


class ProtocolError(TennisMomentumError):
    def __init__(self, field_name: str, message: str):
        super().__init__(message)
        self.field = field_name


def _require(condition: bool, field_name: str, message: str):
    if not condition:
        raise ProtocolError(field_name, message)


def _player_from_wire(value, field_name: str) -> PlayerId:
    _require(value in (1, 2), field_name, f"{field_name} must be 1 or 2, got {value!r}")
    return PlayerId.P1 if value == 1 else PlayerId.P2


def point_from_message(msg: dict) -> PointRecord:
    server = _player_from_wire(msg.get("server"), "server")
    winner = _player_from_wire(msg.get("winner"), "winner")
    rally = msg.get("rally_count", 0)
    _require(isinstance(rally, int) and rally >= 0, "rally_count",
             f"rally_count must be a non-negative integer, got {rally!r}")
    is_ace = bool(msg.get("is_ace", False))
    is_fault = bool(msg.get("is_double_fault", False))
    _require(not (is_ace and is_fault), "is_ace",
             "a point cannot be both an ace and a double fault")
    _require(not is_ace or winner is server, "is_ace", "an ace must be won by the server")
    _require(not is_ace or rally == 0, "rally_count", "an ace has rally_count 0")
    _require(not is_fault or winner is not server, "is_double_fault",
             "a double fault must be lost by the server")
    return PointRecord(server, winner, rally, is_ace=is_ace, is_double_fault=is_fault)


@dataclass
class Session:
    """One live match session. Messages are handled strictly in call order."""

    session_id: str
    profiles: tuple[PlayerProfile, PlayerProfile]
    fmt: MatchFormat
    config: ModelConfig
    score: ScoreState
    momentum: MomentumState
    history: list[tuple[PointRecord, MomentumSample]] = field(default_factory=list)
    ended: bool = False

    @classmethod
    def start(cls, msg: dict) -> "Session":
        profiles_doc = msg.get("profiles")
        _require(isinstance(profiles_doc, dict), "profiles", "profiles mapping is required")
        try:
            profiles = derive_profile(profile_file_from_players(profiles_doc))
        except TennisMomentumError as exc:
            raise ProtocolError("profiles", str(exc)) from None

        fmt_doc = msg.get("format") or {}
        try:
            fmt = MatchFormat(**fmt_doc)
        except (TypeError, ValueError) as exc:
            raise ProtocolError("format", str(exc)) from None

        config_doc = msg.get("config") or {}
        try:
            config = ModelConfig(**config_doc)
        except (TypeError, ValueError, TennisMomentumError) as exc:
            raise ProtocolError("config", str(exc)) from None

        first_server = _player_from_wire(msg.get("first_server", 1), "first_server")
        e_points = expected_match_points(*profiles)
        return cls(
            session_id=secrets.token_hex(8),
            profiles=profiles,
            fmt=fmt,
            config=config,
            score=initial_state(fmt, first_server),
            momentum=MomentumState.initial(e_points),
        )

    def handle(self, msg: dict) -> dict:
        """Process one client message and return the reply message."""
        if not isinstance(msg, dict) or "type" not in msg:
            return _error("type", "message must be an object with a 'type' field")
        kind = msg["type"]
        try:
            if kind == "record_point":
                return self._record_point(msg)
            if kind == "undo":
                return self._undo()
            if kind == "what_if":
                return self._what_if(msg)
            if kind == "end_session":
                self.ended = True
                return {"type": "session_ack", "session_id": self.session_id, "ended": True}
            return _error("type", f"unknown message type {kind!r}")
        except ProtocolError as exc:
            return _error(exc.field, str(exc))
        except TennisMomentumError as exc:
            return _error("point", str(exc))

    def ack(self) -> dict:
        return {
            "type": "session_ack",
            "session_id": self.session_id,
            "score": score_to_dict(self.score),
        }

    def _record_point(self, msg: dict) -> dict:
        point = point_from_message(msg)
        momentum, sample = process_point(
            self.momentum, self.score, point, self.profiles, self.config
        )
        self.momentum = momentum
        self.score = apply_point(self.score, point.point_winner, self.fmt)
        self.history.append((point, sample))
        return {
            "type": "sample_update",
            "event": "point",
            "sample": sample_to_dict(sample),
            "score": score_to_dict(self.score),
        }

    def _undo(self) -> dict:
        if not self.history:
            return _error("undo", "nothing to undo")
        # Full recomputation from the surviving points keeps live state
        # identical to an offline replay of the same sequence.
        survivors = [point for point, _ in self.history[:-1]]
        first_server = self.history[0][0].server
        score = initial_state(self.fmt, first_server)
        momentum = MomentumState.initial(self.momentum.e_points)
        history = []
        for point in survivors:
            momentum, sample = process_point(momentum, score, point, self.profiles, self.config)
            score = apply_point(score, point.point_winner, self.fmt)
            history.append((point, sample))
        self.score = score
        self.momentum = momentum
        self.history = history
        last = sample_to_dict(history[-1][1]) if history else None
        return {
            "type": "sample_update",
            "event": "undo",
            "sample": last,
            "score": score_to_dict(self.score),
        }

    def _what_if(self, msg: dict) -> dict:
        points_doc = msg.get("points")
        _require(isinstance(points_doc, list) and points_doc, "points",
                 "what_if needs a non-empty points list")
        score = self.score
        momentum = self.momentum
        samples = []
        for i, doc in enumerate(points_doc):
            _require(isinstance(doc, dict), "points", f"points[{i}] must be an object")
            point = point_from_message(doc)
            momentum, sample = process_point(momentum, score, point, self.profiles, self.config)
            score = apply_point(score, point.point_winner, self.fmt)
            samples.append(sample_to_dict(sample))
        return {
            "type": "projection",
            "samples": samples,
            "score": score_to_dict(score),
        }

    def state_digest(self) -> tuple:
        """Hashable snapshot used by purity tests."""
        return (self.score, self.momentum, tuple(p for p, _ in self.history))


class SessionHub:
    """Registry of concurrent sessions, one per live connection."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}

    def open(self, msg: dict) -> tuple[Optional[Session], dict]:
        """Handle a start_session message; returns (session, reply)."""
        if msg.get("type") != "start_session":
            return None, _error("type", "first message must be start_session")
        try:
            session = Session.start(msg)
        except ProtocolError as exc:
            return None, _error(exc.field, str(exc))
        except TennisMomentumError as exc:
            return None, _error("profiles", str(exc))
        self._sessions[session.session_id] = session
        return session, session.ack()

    def close(self, session: Optional[Session]):
        if session is not None:
            self._sessions.pop(session.session_id, None)

    def count(self) -> int:
        return len(self._sessions)
