"""Parse and validate point-by-point match logs and player profile files.

Points CSV convention: one row per point, header required, columns
match_id, set_no, game_no, point_no, server, point_victor, rally_count,
ace, double_fault. rally_count counts shots including the serve, so the
model's rally count k is rally_count - 1 (an ace row has rally_count 1).
Unknown extra columns are ignored.

Profile files are YAML: a `players` mapping with `p1`/`p2` entries, each
holding a label and a prior_matches list.
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from typing import IO, Sequence, Union

import yaml

from .errors import (
    InconsistentServer,
    MatchAlreadyOver,
    MissingColumn,
    NoHistory,
    NonMonotonicOrder,
    ParseError,
    PointsAfterMatchEnd,
)
from .momentum import PlayerProfile, PointRecord
from .scoring import MatchFormat, PlayerId, apply_point, initial_state

log = logging.getLogger(__name__)

CSV_COLUMNS = [
    "match_id", "set_no", "game_no", "point_no",
    "server", "point_victor", "rally_count", "ace", "double_fault",
]


@dataclass(frozen=True, slots=True)
class RawPointRow:
    """One typed CSV row, before conversion to a PointRecord."""

    match_id: str
    set_no: int
    game_no: int
    point_no: int
    server: int
    point_victor: int
    rally_count: int
    ace: int
    double_fault: int


@dataclass(frozen=True, slots=True)
class PriorMatch:
    """One prior match's aggregates for a single player."""

    points_won_on_serve: int
    serve_attempts: int
    total_points_in_match: int


@dataclass(frozen=True, slots=True)
class ProfileFile:
    """Both players' labels and prior-match lists."""

    labels: tuple[str, str]
    prior_matches: tuple[tuple[PriorMatch, ...], tuple[PriorMatch, ...]]


def parse_points_csv(source: Union[bytes, str, IO[str]]) -> list[RawPointRow]:
    """Parse a points CSV into typed, range-checked rows.

    Raises MissingColumn when required headers are absent and ParseError
    (with line and column) on any malformed value.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)

    reader = csv.DictReader(source)
    if reader.fieldnames is None:
        raise MissingColumn(CSV_COLUMNS)
    missing = set(CSV_COLUMNS) - set(reader.fieldnames)
    if missing:
        raise MissingColumn(missing)

    rows = []
    for raw in reader:
        line = reader.line_num
        rows.append(_parse_row(raw, line))
    return rows


def _parse_int(raw: dict, column: str, line: int) -> int:
    value = raw.get(column)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(
            f"line {line}: column {column!r} has non-integer value {value!r}",
            line=line, column=column,
        ) from None


def _parse_row(raw: dict, line: int) -> RawPointRow:
    def check(condition: bool, column: str, message: str):
        if not condition:
            raise ParseError(f"line {line}: {message}", line=line, column=column)

    server = _parse_int(raw, "server", line)
    victor = _parse_int(raw, "point_victor", line)
    rally = _parse_int(raw, "rally_count", line)
    ace = _parse_int(raw, "ace", line)
    fault = _parse_int(raw, "double_fault", line)

    check(server in (1, 2), "server", f"server must be 1 or 2, got {server}")
    check(victor in (1, 2), "point_victor", f"point_victor must be 1 or 2, got {victor}")
    check(rally >= 1, "rally_count", f"rally_count must be >= 1, got {rally}")
    check(ace in (0, 1), "ace", f"ace must be 0 or 1, got {ace}")
    check(fault in (0, 1), "double_fault", f"double_fault must be 0 or 1, got {fault}")
    check(not (ace and fault), "ace", "a point cannot be both an ace and a double fault")
    check(not ace or victor == server, "ace", "an ace must be won by the server")
    check(not fault or victor != server, "double_fault", "a double fault must be lost by the server")

    return RawPointRow(
        match_id=raw.get("match_id") or "",
        set_no=_parse_int(raw, "set_no", line),
        game_no=_parse_int(raw, "game_no", line),
        point_no=_parse_int(raw, "point_no", line),
        server=server,
        point_victor=victor,
        rally_count=rally,
        ace=ace,
        double_fault=fault,
    )


def rows_to_csv(rows: Sequence[RawPointRow]) -> str:
    """Serialize rows back to canonical CSV (inverse of parse_points_csv)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([
            r.match_id, r.set_no, r.game_no, r.point_no,
            r.server, r.point_victor, r.rally_count, r.ace, r.double_fault,
        ])
    return out.getvalue()


def _player(code: int) -> PlayerId:
    return PlayerId.P1 if code == 1 else PlayerId.P2


def to_point_records(
    rows: Sequence[RawPointRow],
    fmt: MatchFormat,
    lenient: bool = False,
) -> list[PointRecord]:
    """Convert rows to PointRecords, replaying them through the scoring
    state machine to validate server rotation and terminal detection.

    Maps the dataset rally_count (serve included) to the model's k by
    subtracting one; ace rows force k = 0. With lenient=True, server
    fields that contradict the rotation are repaired from the state
    machine and logged instead of raising.
    """
    records: list[PointRecord] = []
    if not rows:
        return records

    state = initial_state(fmt, _player(rows[0].server))
    prev_key = None
    for index, row in enumerate(rows):
        key = (row.set_no, row.game_no, row.point_no)
        if prev_key is not None and key <= prev_key:
            raise NonMonotonicOrder(
                f"row {index}: order key {key} does not follow {prev_key}", index=index
            )
        prev_key = key

        if state.winner is not None:
            raise PointsAfterMatchEnd(
                f"row {index}: match already decided by row {index - 1}", index=index
            )

        server = _player(row.server)
        if server is not state.server:
            if lenient:
                log.warning(
                    "row %d: repaired server %s -> %s", index, server.name, state.server.name
                )
                server = state.server
            else:
                raise InconsistentServer(
                    f"row {index}: server column says {server.name} but rotation "
                    f"implies {state.server.name}",
                    index=index,
                )

        k = 0 if row.ace else row.rally_count - 1
        record = PointRecord(
            server=server,
            point_winner=_player(row.point_victor),
            rally_count=k,
            is_ace=bool(row.ace),
            is_double_fault=bool(row.double_fault),
        )
        records.append(record)
        state = apply_point(state, record.point_winner, fmt)

    return records


def records_to_rows(
    records: Sequence[PointRecord], fmt: MatchFormat, match_id: str = "match"
) -> list[RawPointRow]:
    """Stamp PointRecords with set/game/point numbering by replaying the score
    (inverse of to_point_records; rally_count gains the serve back)."""
    if not records:
        return []
    state = initial_state(fmt, records[0].server)
    rows = []
    for index, record in enumerate(records):
        if state.winner is not None:
            raise MatchAlreadyOver(f"record {index}: match already decided")
        set_no = state.sets[0] + state.sets[1] + 1
        game_no = state.games[0] + state.games[1] + 1
        rows.append(RawPointRow(
            match_id=match_id,
            set_no=set_no,
            game_no=game_no,
            point_no=index + 1,
            server=record.server.value + 1,
            point_victor=record.point_winner.value + 1,
            rally_count=record.rally_count + 1,
            ace=int(record.is_ace),
            double_fault=int(record.is_double_fault),
        ))
        state = apply_point(state, record.point_winner, fmt)
    return rows


def parse_profile_file(source: Union[bytes, str, IO[str]]) -> ProfileFile:
    """Parse a YAML profile file into a validated ProfileFile."""
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if not isinstance(source, str):
        source = source.read()
    try:
        doc = yaml.safe_load(source)
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML in profile file: {exc}") from None
    if not isinstance(doc, dict) or "players" not in doc:
        raise ParseError("profile file must contain a top-level 'players' mapping")
    return profile_file_from_players(doc["players"])


def profile_file_from_players(players) -> ProfileFile:
    """Validate the unserialized 'players' mapping (also used on the wire)."""
    if not isinstance(players, dict):
        raise ParseError("'players' must be a mapping with p1 and p2 entries")

    labels = []
    matches = []
    for key in ("p1", "p2"):
        if key not in players or not isinstance(players[key], dict):
            raise ParseError(f"profile file missing players.{key}")
        entry = players[key]
        labels.append(str(entry.get("label", key)))
        prior = []
        for i, m in enumerate(entry.get("prior_matches") or []):
            try:
                pm = PriorMatch(
                    points_won_on_serve=int(m["points_won_on_serve"]),
                    serve_attempts=int(m["serve_attempts"]),
                    total_points_in_match=int(m["total_points_in_match"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"players.{key}.prior_matches[{i}]: {exc}") from None
            if not 0 <= pm.points_won_on_serve <= pm.serve_attempts:
                raise ParseError(
                    f"players.{key}.prior_matches[{i}]: need "
                    f"0 <= points_won_on_serve <= serve_attempts"
                )
            prior.append(pm)
        matches.append(tuple(prior))

    return ProfileFile(labels=(labels[0], labels[1]), prior_matches=(matches[0], matches[1]))


def profile_file_to_yaml(profile: ProfileFile) -> str:
    """Serialize a ProfileFile back to its YAML form."""
    doc = {"players": {}}
    for key, label, prior in zip(("p1", "p2"), profile.labels, profile.prior_matches):
        doc["players"][key] = {
            "label": label,
            "prior_matches": [
                {
                    "points_won_on_serve": m.points_won_on_serve,
                    "serve_attempts": m.serve_attempts,
                    "total_points_in_match": m.total_points_in_match,
                }
                for m in prior
            ],
        }
    return yaml.safe_dump(doc, sort_keys=False)


def derive_profile(profile_file: ProfileFile) -> tuple[PlayerProfile, PlayerProfile]:
    """Aggregate prior matches into PlayerProfiles.

    Serve tallies are pooled (sum over sum), never averaged per match;
    expected points per match is the arithmetic mean of match totals.
    """
    profiles = []
    for label, prior in zip(profile_file.labels, profile_file.prior_matches):
        if not prior:
            raise NoHistory(f"player {label!r} has no prior matches")
        profiles.append(PlayerProfile(
            points_won_on_serve=sum(m.points_won_on_serve for m in prior),
            serve_attempts=sum(m.serve_attempts for m in prior),
            expected_points_per_match=sum(m.total_points_in_match for m in prior) / len(prior),
            label=label,
        ))
    return profiles[0], profiles[1]
