// Record-point form and what-if queue logic, kept DOM-free for testing.

import type {
  PointEntry,
  RecordPointMessage,
  ScoreSnapshot,
  ValidationResult,
  WhatIfMessage,
} from "./protocol.js";
import { validatePointEntry } from "./protocol.js";

export interface FormValues {
  winner: 1 | 2;
  rallyCount: number;
  isAce: boolean;
  isDoubleFault: boolean;
}

/** Build the entry from form values; the server field always mirrors the
 * score snapshot so rotation mistakes cannot be typed in. */
export function entryFromForm(values: FormValues, score: ScoreSnapshot): PointEntry {
  return {
    server: score.server,
    winner: values.winner,
    rally_count: values.isAce || values.isDoubleFault ? 0 : values.rallyCount,
    is_ace: values.isAce,
    is_double_fault: values.isDoubleFault,
  };
}

export function validateForm(values: FormValues, score: ScoreSnapshot | null): ValidationResult {
  if (score === null) {
    return { ok: false, field: "session", reason: "no session in progress" };
  }
  return validatePointEntry(entryFromForm(values, score), score);
}

/** A small queue of hypothetical points sent as one what_if message. */
export class WhatIfQueue {
  private entries: PointEntry[] = [];

  /** Queue a hypothetical point; the score is projected forward locally
   * only for rotation (server of hypothetical point n+1 is whatever the
   * last projection reply said; validation happens server-side too). */
  add(values: FormValues, server: 1 | 2): ValidationResult {
    const entry: PointEntry = {
      server,
      winner: values.winner,
      rally_count: values.isAce || values.isDoubleFault ? 0 : values.rallyCount,
      is_ace: values.isAce,
      is_double_fault: values.isDoubleFault,
    };
    if (entry.is_ace && entry.winner !== entry.server) {
      return { ok: false, field: "is_ace", reason: "an ace is won by the server" };
    }
    if (entry.is_double_fault && entry.winner === entry.server) {
      return { ok: false, field: "is_double_fault", reason: "a double fault is lost by the server" };
    }
    if (entry.is_ace && entry.is_double_fault) {
      return { ok: false, field: "is_ace", reason: "a point cannot be both an ace and a double fault" };
    }
    this.entries.push(entry);
    return { ok: true, message: { type: "record_point", ...entry } };
  }

  get length(): number {
    return this.entries.length;
  }

  peek(): readonly PointEntry[] {
    return this.entries;
  }

  /** Drain the queue into one what_if message, or null when empty. */
  toMessage(): WhatIfMessage | null {
    if (this.entries.length === 0) {
      return null;
    }
    const message: WhatIfMessage = { type: "what_if", points: this.entries };
    this.entries = [];
    return message;
  }

  clear(): void {
    this.entries = [];
  }
}

export function recordMessage(values: FormValues, score: ScoreSnapshot): RecordPointMessage | null {
  const result = validateForm(values, score);
  return result.ok ? result.message : null;
}
