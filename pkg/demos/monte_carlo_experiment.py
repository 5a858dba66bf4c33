#!/usr/bin/env python3
"""Monte Carlo evaluation of the momentum model against known worlds.

Runs the same experiment in two generated universes: an iid world where
each point is an independent serve-win coin flip, and a momentum world
where winning streaks genuinely boost the streaking player. Reports how
often the player leading the momentum value at mid-match went on to win.
"""
from tennis_momentum import (
    ModelConfig,
    PlayerProfile,
    SimConfig,
    report_to_yaml,
    run_experiment,
)

profiles = (
    PlayerProfile(56, 86, 95.0, "A"),
    PlayerProfile(50, 84, 90.0, "B"),
)
model = ModelConfig()

iid_world = SimConfig(
    serve_win_prob=(0.65, 0.60),
    rally_length_mean=2.2,
    ace_prob=(0.10, 0.07),
    double_fault_prob=(0.05, 0.06),
    replications=2000,
    seed=20240811,
)
momentum_world = SimConfig(
    serve_win_prob=(0.65, 0.60),
    rally_length_mean=2.2,
    ace_prob=(0.10, 0.07),
    double_fault_prob=(0.05, 0.06),
    replications=2000,
    seed=20240811,
    momentum_boost=0.015,
)

for name, config in (("iid world", iid_world), ("momentum world", momentum_world)):
    report = run_experiment(config, model, profiles)
    print(f"--- {name} ---")
    print(f"match win rates:   A {report.match_win_rate[0]:.3f}, "
          f"B {report.match_win_rate[1]:.3f}")
    print(f"mean match length: {report.mean_match_length:.1f} points")
    print(f"mid-match momentum leader wins: {report.tmm_accuracy:.3f}")
    print()

print("full report for the momentum world:")
print(report_to_yaml(run_experiment(momentum_world, model, profiles)))
