"""Command-line entry points: analyze, simulate, profile, serve.

Exit codes: 0 success; 2 parse/validation or config errors; 3 profile
errors (analyze); 4 when every simulation replication stalled.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from .charts import momentum_chart_svg
from .errors import NoHistory, ParseError, MissingColumn, TennisMomentumError
from .ingest import (
    ProfileFile,
    PriorMatch,
    derive_profile,
    parse_points_csv,
    parse_profile_file,
    profile_file_from_players,
    profile_file_to_yaml,
    to_point_records,
)
from .momentum import ModelConfig, MomentumSample, replay_match
from .scoring import MatchFormat
from .simulate import SimConfig, report_to_yaml, run_experiment

SERIES_FIELDS = ("p_hist", "p_inst", "p_ltm", "efficiency_raw", "efficiency_smoothed",
                 "m_stm", "tmm")

CONFIG_KEYS = {
    "r": ("r", float),
    "prior_strength": ("prior_strength", float),
    "prior-strength": ("prior_strength", float),
    "alpha": ("efficiency_smoothing", float),
    "efficiency_smoothing": ("efficiency_smoothing", float),
    "double_fault_efficiency": ("double_fault_efficiency", float),
    "clamp": ("clamp_weight", None),
    "clamp_weight": ("clamp_weight", None),
    "stm_transform": ("stm_transform", str),
    "stm-transform": ("stm_transform", str),
}


def series_to_csv(samples: list[MomentumSample]) -> str:
    """Fixed column order, six decimal places; one record per point."""
    header = ["point_index"]
    for prefix in ("p1", "p2"):
        header.extend(f"{prefix}_{name}" for name in SERIES_FIELDS)
    lines = [",".join(header)]
    attrs = ("p_hist_effective", "p_inst_effective", "p_ltm", "efficiency_raw",
             "efficiency_smoothed", "m_stm", "tmm")
    for sample in samples:
        row = [str(sample.point_index)]
        for player in sample.players:
            row.extend(f"{getattr(player, attr):.6f}" for attr in attrs)
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def model_config_from_pairs(pairs: list[str]) -> ModelConfig:
    """Build a ModelConfig from repeated key=value overrides."""
    kwargs = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"--config expects key=value, got {pair!r}")
        if key not in CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r} "
                             f"(known: {', '.join(sorted(set(CONFIG_KEYS)))})")
        name, cast = CONFIG_KEYS[key]
        if cast is None:  # boolean
            if value.lower() not in ("true", "false", "1", "0", "on", "off"):
                raise ValueError(f"config key {key!r} expects a boolean, got {value!r}")
            kwargs[name] = value.lower() in ("true", "1", "on")
        else:
            kwargs[name] = cast(value)
    return ModelConfig(**kwargs)


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_analyze(args) -> int:
    try:
        profile_file = parse_profile_file(Path(args.profiles).read_text(encoding="utf-8"))
        profiles = derive_profile(profile_file)
    except FileNotFoundError as exc:
        return _fail(3, f"profiles: {exc}")
    except (ParseError, NoHistory) as exc:
        return _fail(3, f"profiles: {exc}")

    try:
        config = model_config_from_pairs(args.config)
    except (ValueError, TennisMomentumError) as exc:
        return _fail(2, str(exc))

    fmt = MatchFormat(sets_to_win=args.sets_to_win)
    try:
        rows = parse_points_csv(Path(args.points_csv).read_text(encoding="utf-8"))
        records = to_point_records(rows, fmt, lenient=args.lenient)
        samples = replay_match(records, profiles, fmt, config)
    except FileNotFoundError as exc:
        return _fail(2, str(exc))
    except TennisMomentumError as exc:
        return _fail(2, f"{args.points_csv}: {exc}")

    out = Path(args.out) if args.out else Path(args.points_csv).with_suffix("").with_name(
        Path(args.points_csv).stem + "_series.csv")
    out.write_text(series_to_csv(samples), encoding="utf-8")
    print(f"wrote {len(samples)} point records to {out}")

    if args.svg:
        svg_path = out.with_suffix(".svg")
        svg_path.write_text(momentum_chart_svg(samples), encoding="utf-8")
        print(f"wrote chart to {svg_path}")
    return 0


def sim_config_from_doc(doc: dict, seed_override=None) -> SimConfig:
    sim = dict(doc.get("sim") or {})
    if "serve_win_prob" not in sim:
        raise ValueError("sim.serve_win_prob is required")
    for key in ("serve_win_prob", "ace_prob", "double_fault_prob"):
        if key in sim:
            value = sim[key]
            if not (isinstance(value, (list, tuple)) and len(value) == 2):
                raise ValueError(f"sim.{key} must be a two-entry list")
            sim[key] = (float(value[0]), float(value[1]))
    if "format" in sim:
        sim["format"] = MatchFormat(**sim["format"])
    if seed_override is not None:
        sim["seed"] = seed_override
    return SimConfig(**sim)


def cmd_simulate(args) -> int:
    try:
        doc = yaml.safe_load(Path(args.sim_config).read_text(encoding="utf-8"))
        if not isinstance(doc, dict):
            raise ValueError("simulation config must be a YAML mapping")
        config = sim_config_from_doc(doc, args.seed)
        model = ModelConfig(**(doc.get("model") or {}))
        profiles = derive_profile(profile_file_from_players(doc.get("profiles")))
    except FileNotFoundError as exc:
        return _fail(2, str(exc))
    except (TypeError, ValueError, yaml.YAMLError, TennisMomentumError) as exc:
        return _fail(2, f"config: {exc}")

    report = run_experiment(config, model, profiles)
    if report.completed == 0:
        return _fail(4, f"all {report.replications} replications stalled")

    out = Path(args.out) if args.out else Path(args.sim_config).with_suffix("").with_name(
        Path(args.sim_config).stem + "_report.yaml")
    out.write_text(report_to_yaml(report), encoding="utf-8")

    print(f"replications      {report.replications} ({report.completed} completed)")
    print(f"p1 win rate       {report.match_win_rate[0]:.4f}")
    print(f"p2 win rate       {report.match_win_rate[1]:.4f}")
    print(f"mean length       {report.mean_match_length:.1f} points")
    print(f"tmm accuracy      {report.tmm_accuracy:.4f}")
    print(f"report            {out}")
    return 0


def cmd_profile(args) -> int:
    directory = Path(args.matches_dir)
    files = sorted(directory.glob("*.csv"))
    if not files:
        return _fail(2, f"no match files in {directory}")

    prior: tuple[list[PriorMatch], list[PriorMatch]] = ([], [])
    used = 0
    for path in files:
        try:
            rows = parse_points_csv(path.read_text(encoding="utf-8"))
        except (ParseError, MissingColumn) as exc:
            if args.lenient:
                print(f"warning: skipping {path.name}: {exc}", file=sys.stderr)
                continue
            return _fail(2, f"{path.name}: {exc}")
        if not rows:
            if args.lenient:
                print(f"warning: skipping empty {path.name}", file=sys.stderr)
                continue
            return _fail(2, f"{path.name}: no data rows")
        for player, entries in zip((1, 2), prior):
            serves = [r for r in rows if r.server == player]
            entries.append(PriorMatch(
                points_won_on_serve=sum(1 for r in serves if r.point_victor == player),
                serve_attempts=len(serves),
                total_points_in_match=len(rows),
            ))
        used += 1

    if used == 0:
        return _fail(2, "no usable match files")

    profile_file = ProfileFile(
        labels=(args.p1_label, args.p2_label),
        prior_matches=(tuple(prior[0]), tuple(prior[1])),
    )
    try:
        derive_profile(profile_file)  # sanity: aggregation must be usable
    except NoHistory as exc:
        return _fail(2, str(exc))

    out = Path(args.out)
    out.write_text(profile_file_to_yaml(profile_file), encoding="utf-8")
    print(f"wrote profiles from {used} matches to {out}")
    return 0


def cmd_serve(args) -> int:
    from .server import serve_live

    static_dir = Path(args.static_dir) if args.static_dir else None
    serve_live(host=args.host, port=args.port, static_dir=static_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tennis-momentum",
        description="Point-by-point tennis momentum engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="replay a points CSV and write the momentum series")
    p.add_argument("points_csv")
    p.add_argument("--profiles", required=True, help="player profile YAML")
    p.add_argument("--out", help="series CSV output path")
    p.add_argument("--svg", action="store_true", help="also write a line-chart SVG")
    p.add_argument("--lenient", action="store_true", help="repair inconsistent server fields")
    p.add_argument("--sets-to-win", type=int, default=3, choices=(2, 3))
    p.add_argument("--config", action="append", default=[], metavar="KEY=VALUE",
                   help="model override (r, prior-strength, alpha, clamp, stm-transform)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="run a Monte Carlo experiment from a config file")
    p.add_argument("sim_config")
    p.add_argument("--out", help="report YAML output path")
    p.add_argument("--seed", type=int, help="override the master seed")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("profile", help="aggregate per-match CSVs into a profile YAML")
    p.add_argument("matches_dir")
    p.add_argument("--out", default="profiles.yaml")
    p.add_argument("--p1-label", default="P1")
    p.add_argument("--p2-label", default="P2")
    p.add_argument("--lenient", action="store_true", help="skip unparsable files with a warning")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("serve", help="run the live session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--static-dir", help="console assets directory (defaults to frontend/dist)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
