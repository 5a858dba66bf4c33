// Console display state: a pure mirror of server messages.
//
// Every number shown anywhere in the UI is copied verbatim from a server
// message; the reducer only appends, truncates, and mirrors. Chart series
// lengths always equal the mirrored total_points_played.

import type {
  PlayerMetrics,
  Sample,
  ScoreSnapshot,
  ServerMessage,
} from "./protocol.js";

export interface SeriesPoint {
  pointIndex: number;
  tmm: number;
  efficiencySmoothed: number;
  pLtm: number;
  mStm: number;
}

export interface PlayerSeries {
  p1: SeriesPoint[];
  p2: SeriesPoint[];
}

export interface ConsoleState {
  connection: "idle" | "open" | "closed";
  sessionId: string | null;
  score: ScoreSnapshot | null;
  series: PlayerSeries;
  /** Dashed overlay from the last what_if; dropped on the next confirmed point. */
  projection: PlayerSeries | null;
  awaitingPoint: boolean;
  lastError: { field: string; message: string } | null;
  ended: boolean;
}

export function initialConsoleState(): ConsoleState {
  return {
    connection: "idle",
    sessionId: null,
    score: null,
    series: { p1: [], p2: [] },
    projection: null,
    awaitingPoint: false,
    lastError: null,
    ended: false,
  };
}

function toSeriesPoint(pointIndex: number, metrics: PlayerMetrics): SeriesPoint {
  return {
    pointIndex,
    tmm: metrics.tmm,
    efficiencySmoothed: metrics.efficiency_smoothed,
    pLtm: metrics.p_ltm,
    mStm: metrics.m_stm,
  };
}

function appendSample(series: PlayerSeries, sample: Sample): PlayerSeries {
  return {
    p1: [...series.p1, toSeriesPoint(sample.point_index, sample.p1)],
    p2: [...series.p2, toSeriesPoint(sample.point_index, sample.p2)],
  };
}

function truncateTo(series: PlayerSeries, length: number): PlayerSeries {
  return { p1: series.p1.slice(0, length), p2: series.p2.slice(0, length) };
}

/** Apply one server message; returns the next state (input untouched). */
export function applyServerMessage(state: ConsoleState, msg: ServerMessage): ConsoleState {
  switch (msg.type) {
    case "session_ack": {
      if (msg.ended) {
        return { ...state, ended: true, awaitingPoint: false };
      }
      return {
        ...state,
        sessionId: msg.session_id,
        score: msg.score ?? state.score,
        series: { p1: [], p2: [] },
        projection: null,
        awaitingPoint: false,
        lastError: null,
        ended: false,
      };
    }
    case "sample_update": {
      let series = state.series;
      if (msg.event === "point" && msg.sample !== null) {
        series = appendSample(series, msg.sample);
      }
      // The score snapshot is authoritative for series length; undo (and
      // any drift) reconciles by truncation.
      series = truncateTo(series, msg.score.total_points_played);
      return {
        ...state,
        score: msg.score,
        series,
        projection: null, // confirmed point discards any overlay
        awaitingPoint: false,
        lastError: null,
      };
    }
    case "projection": {
      let overlay: PlayerSeries = { p1: [], p2: [] };
      for (const sample of msg.samples) {
        overlay = appendSample(overlay, sample);
      }
      return { ...state, projection: overlay };
    }
    case "error": {
      return {
        ...state,
        awaitingPoint: false,
        lastError: { field: msg.field, message: msg.message },
      };
    }
  }
}

/** True when the record form must be disabled. */
export function formDisabled(state: ConsoleState): boolean {
  return (
    state.connection !== "open" ||
    state.score === null ||
    state.score.winner !== null ||
    state.awaitingPoint ||
    state.ended
  );
}

/** Flat list of every number the charts and scoreboard would display. */
export function displayedNumbers(state: ConsoleState): number[] {
  const out: number[] = [];
  for (const side of [state.series.p1, state.series.p2]) {
    for (const p of side) {
      out.push(p.tmm, p.efficiencySmoothed, p.pLtm, p.mStm);
    }
  }
  if (state.projection) {
    for (const side of [state.projection.p1, state.projection.p2]) {
      for (const p of side) {
        out.push(p.tmm, p.efficiencySmoothed, p.pLtm, p.mStm);
      }
    }
  }
  if (state.score) {
    out.push(...state.score.points, ...state.score.games, ...state.score.sets);
  }
  return out;
}
