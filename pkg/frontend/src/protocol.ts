// Live session protocol: message shapes and client-side validation.
// The console never computes model math; it relays and mirrors.

export type Player = 1 | 2;

export interface ScoreSnapshot {
  points: [number, number];
  games: [number, number];
  sets: [number, number];
  in_tiebreak: boolean;
  tiebreak_points: [number, number];
  server: Player;
  total_points_played: number;
  winner: Player | null;
}

export interface PlayerMetrics {
  p_hist: number;
  p_inst: number;
  p_ltm: number;
  efficiency_raw: number;
  efficiency_smoothed: number;
  m_stm: number;
  tmm: number;
}

export interface Sample {
  point_index: number;
  p1: PlayerMetrics;
  p2: PlayerMetrics;
}

export interface PriorMatch {
  points_won_on_serve: number;
  serve_attempts: number;
  total_points_in_match: number;
}

export interface ProfilesDoc {
  p1: { label: string; prior_matches: PriorMatch[] };
  p2: { label: string; prior_matches: PriorMatch[] };
}

export interface PointEntry {
  server: Player;
  winner: Player;
  rally_count: number;
  is_ace: boolean;
  is_double_fault: boolean;
}

// Client -> server
export interface StartSessionMessage {
  type: "start_session";
  profiles: ProfilesDoc;
  format?: Record<string, unknown>;
  config?: Record<string, unknown>;
  first_server: Player;
}
export interface RecordPointMessage extends PointEntry {
  type: "record_point";
}
export interface UndoMessage {
  type: "undo";
}
export interface WhatIfMessage {
  type: "what_if";
  points: PointEntry[];
}
export interface EndSessionMessage {
  type: "end_session";
}
export type ClientMessage =
  | StartSessionMessage
  | RecordPointMessage
  | UndoMessage
  | WhatIfMessage
  | EndSessionMessage;

// Server -> client
export interface SessionAckMessage {
  type: "session_ack";
  session_id: string;
  score?: ScoreSnapshot;
  ended?: boolean;
}
export interface SampleUpdateMessage {
  type: "sample_update";
  event: "point" | "undo";
  sample: Sample | null;
  score: ScoreSnapshot;
}
export interface ProjectionMessage {
  type: "projection";
  samples: Sample[];
  score: ScoreSnapshot;
}
export interface ErrorMessage {
  type: "error";
  field: string;
  message: string;
}
export type ServerMessage =
  | SessionAckMessage
  | SampleUpdateMessage
  | ProjectionMessage
  | ErrorMessage;

export type ValidationResult =
  | { ok: true; message: RecordPointMessage }
  | { ok: false; field: string; reason: string };

/** Mirror of the engine's point invariants, checked before anything is sent. */
export function validatePointEntry(
  entry: PointEntry,
  score: ScoreSnapshot | null,
): ValidationResult {
  if (score === null) {
    return { ok: false, field: "session", reason: "no session in progress" };
  }
  if (score.winner !== null) {
    return { ok: false, field: "session", reason: "match is over" };
  }
  if (entry.server !== 1 && entry.server !== 2) {
    return { ok: false, field: "server", reason: "server must be 1 or 2" };
  }
  if (entry.winner !== 1 && entry.winner !== 2) {
    return { ok: false, field: "winner", reason: "winner must be 1 or 2" };
  }
  if (entry.server !== score.server) {
    return {
      ok: false,
      field: "server",
      reason: `rotation says player ${score.server} is serving`,
    };
  }
  if (!Number.isInteger(entry.rally_count) || entry.rally_count < 0) {
    return { ok: false, field: "rally_count", reason: "rally count must be a whole number >= 0" };
  }
  if (entry.is_ace && entry.is_double_fault) {
    return { ok: false, field: "is_ace", reason: "a point cannot be both an ace and a double fault" };
  }
  if (entry.is_ace && entry.winner !== entry.server) {
    return { ok: false, field: "is_ace", reason: "an ace is won by the server" };
  }
  if (entry.is_ace && entry.rally_count !== 0) {
    return { ok: false, field: "rally_count", reason: "an ace has no rallies" };
  }
  if (entry.is_double_fault && entry.winner === entry.server) {
    return { ok: false, field: "is_double_fault", reason: "a double fault is lost by the server" };
  }
  return { ok: true, message: { type: "record_point", ...entry } };
}

export function parseServerMessage(raw: string): ServerMessage | null {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof doc !== "object" || doc === null || !("type" in doc)) {
    return null;
  }
  const type = (doc as { type: unknown }).type;
  if (
    type === "session_ack" ||
    type === "sample_update" ||
    type === "projection" ||
    type === "error"
  ) {
    return doc as ServerMessage;
  }
  return null;
}
