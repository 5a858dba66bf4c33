// Shared fake server-message builders for tests.

import type {
  PlayerMetrics,
  Sample,
  SampleUpdateMessage,
  ScoreSnapshot,
} from "../src/protocol.js";

export function metrics(seed: number): PlayerMetrics {
  // Arbitrary but recognizable values; tests only assert they pass through.
  return {
    p_hist: 0.6 + seed / 1000,
    p_inst: 0.55 + seed / 1000,
    p_ltm: 0.58 + seed / 1000,
    efficiency_raw: 0.5 + seed / 1000,
    efficiency_smoothed: 0.7 + seed / 1000,
    m_stm: 0.4 + seed / 1000,
    tmm: 0.42 + seed / 1000,
  };
}

export function score(totalPoints: number, overrides: Partial<ScoreSnapshot> = {}): ScoreSnapshot {
  return {
    points: [totalPoints % 4, 0],
    games: [0, 0],
    sets: [0, 0],
    in_tiebreak: false,
    tiebreak_points: [0, 0],
    server: 1,
    total_points_played: totalPoints,
    winner: null,
    ...overrides,
  };
}

export function sample(pointIndex: number): Sample {
  return { point_index: pointIndex, p1: metrics(pointIndex), p2: metrics(pointIndex + 500) };
}

export function pointUpdate(pointIndex: number, overrides: Partial<ScoreSnapshot> = {}): SampleUpdateMessage {
  return {
    type: "sample_update",
    event: "point",
    sample: sample(pointIndex),
    score: score(pointIndex, overrides),
  };
}

export function undoUpdate(remaining: number): SampleUpdateMessage {
  return {
    type: "sample_update",
    event: "undo",
    sample: remaining > 0 ? sample(remaining) : null,
    score: score(remaining),
  };
}
