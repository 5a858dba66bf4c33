#!/usr/bin/env python3
"""Replay the bundled five-set swing match and narrate the momentum story.

Folds the point log into per-point samples, prints the set-by-set picture,
locates the lead changes in the combined momentum series, and writes the
three-panel chart next to this script.
"""
from pathlib import Path

from tennis_momentum import (
    BEST_OF_FIVE,
    ModelConfig,
    derive_profile,
    parse_points_csv,
    parse_profile_file,
    replay_match,
    to_point_records,
)
from tennis_momentum.charts import momentum_chart_svg

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

rows = parse_points_csv((FIXTURES / "swing_match.csv").read_text())
records = to_point_records(rows, BEST_OF_FIVE)
profiles = derive_profile(parse_profile_file((FIXTURES / "swing_profiles.yaml").read_text()))
p1, p2 = profiles

print(f"{p1.label} vs {p2.label}: {len(records)} points")
print(f"historical serve rates: {p1.label} "
      f"{p1.points_won_on_serve / p1.serve_attempts:.3f}, "
      f"{p2.label} {p2.points_won_on_serve / p2.serve_attempts:.3f}")
print(f"expected match length: "
      f"{p1.expected_points_per_match + p2.expected_points_per_match:.0f} points\n")

samples = replay_match(records, profiles, BEST_OF_FIVE, ModelConfig())

# Lead changes in the combined momentum series.
lead = None
changes = []
for sample in samples:
    now = p1.label if sample.players[0].tmm >= sample.players[1].tmm else p2.label
    if now != lead:
        changes.append((sample.point_index, now))
        lead = now

print("momentum lead changes (point -> new leader):")
for point, leader in changes:
    print(f"  point {point:>3}: {leader}")

last = samples[-1]
print(f"\nfinal samples: {p1.label} tmm={last.players[0].tmm:.3f}, "
      f"{p2.label} tmm={last.players[1].tmm:.3f}")

out = Path(__file__).with_name("swing_match.svg")
out.write_text(momentum_chart_svg(samples))
print(f"chart written to {out}")
