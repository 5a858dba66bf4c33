// DOM wiring for the coach console. All logic lives in the pure modules;
// this file only moves values between the DOM and the reducer.

import { CHART_PANELS, chartSvg } from "./charts.js";
import { LiveConnection, liveUrl } from "./connection.js";
import { validateForm, WhatIfQueue, type FormValues } from "./form.js";
import type { Player, ProfilesDoc, ServerMessage } from "./protocol.js";
import {
  applyServerMessage,
  formDisabled,
  initialConsoleState,
  type ConsoleState,
} from "./state.js";

const EXAMPLE_PROFILES: ProfilesDoc = {
  p1: {
    label: "Player 1",
    prior_matches: [
      { points_won_on_serve: 52, serve_attempts: 80, total_points_in_match: 124 },
      { points_won_on_serve: 49, serve_attempts: 78, total_points_in_match: 118 },
    ],
  },
  p2: {
    label: "Player 2",
    prior_matches: [
      { points_won_on_serve: 47, serve_attempts: 80, total_points_in_match: 120 },
      { points_won_on_serve: 50, serve_attempts: 82, total_points_in_match: 126 },
    ],
  },
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

let state: ConsoleState = initialConsoleState();
const connection = new LiveConnection((url) => new WebSocket(url));
const whatIfQueue = new WhatIfQueue();

function pointName(points: [number, number], inTiebreak: boolean): string {
  if (inTiebreak) return "tiebreak";
  const names = ["0", "15", "30", "40"];
  const [a, b] = points;
  if (a >= 3 && b >= 3) {
    if (a === b) return "deuce";
    return a > b ? "ad P1" : "ad P2";
  }
  return `${names[Math.min(a, 3)]}-${names[Math.min(b, 3)]}`;
}

function render(): void {
  el<HTMLSpanElement>("connection-status").textContent = state.connection;

  const score = state.score;
  if (score) {
    const tb = score.in_tiebreak ? ` (tb ${score.tiebreak_points.join("-")})` : "";
    el<HTMLDivElement>("scoreboard").textContent =
      `sets ${score.sets.join("-")}  games ${score.games.join("-")}` +
      `  ${pointName(score.points, score.in_tiebreak)}${tb}` +
      `  | serving: P${score.server}  | points: ${score.total_points_played}` +
      (score.winner ? `  | winner: P${score.winner}` : "");
  } else {
    el<HTMLDivElement>("scoreboard").textContent = "no session";
  }

  const charts = el<HTMLDivElement>("charts");
  charts.innerHTML = CHART_PANELS.map(({ title, metric }) =>
    chartSvg(title, metric, state.series, state.projection),
  ).join("");

  const disabled = formDisabled(state);
  for (const id of ["winner", "rally-count", "is-ace", "is-double-fault", "record", "undo"]) {
    el<HTMLInputElement>(id).toggleAttribute("disabled", disabled);
  }
  el<HTMLDivElement>("form-error").textContent = state.lastError
    ? `${state.lastError.field}: ${state.lastError.message}`
    : "";
  el<HTMLSpanElement>("whatif-count").textContent = String(whatIfQueue.length);
}

function handleMessage(msg: ServerMessage): void {
  state = applyServerMessage(state, msg);
  appendLog("recv", msg);
  render();
}

function appendLog(dir: string, msg: unknown): void {
  const log = el<HTMLPreElement>("message-log");
  log.textContent += `${dir} ${JSON.stringify(msg)}\n`;
  log.scrollTop = log.scrollHeight;
}

function currentFormValues(): FormValues {
  return {
    winner: (Number(el<HTMLSelectElement>("winner").value) === 2 ? 2 : 1) as Player,
    rallyCount: Number(el<HTMLInputElement>("rally-count").value) || 0,
    isAce: el<HTMLInputElement>("is-ace").checked,
    isDoubleFault: el<HTMLInputElement>("is-double-fault").checked,
  };
}

function send(msg: Parameters<LiveConnection["send"]>[0]): void {
  if (connection.send(msg)) {
    appendLog("sent", msg);
  }
}

el<HTMLButtonElement>("connect").addEventListener("click", () => {
  let profiles: ProfilesDoc;
  try {
    profiles = JSON.parse(el<HTMLTextAreaElement>("profiles").value) as ProfilesDoc;
  } catch {
    state = { ...state, lastError: { field: "profiles", message: "profiles must be valid JSON" } };
    render();
    return;
  }
  const firstServer = (Number(el<HTMLSelectElement>("first-server").value) === 2 ? 2 : 1) as Player;
  connection.connect(liveUrl(window.location.origin), {
    onOpen: () => {
      state = { ...state, connection: "open" };
      send({ type: "start_session", profiles, first_server: firstServer });
      render();
    },
    onClose: () => {
      state = { ...state, connection: "closed" };
      render();
    },
    onMessage: handleMessage,
  });
});

el<HTMLButtonElement>("record").addEventListener("click", () => {
  const values = currentFormValues();
  const result = validateForm(values, state.score);
  if (!result.ok) {
    state = { ...state, lastError: { field: result.field, message: result.reason } };
    render();
    return;
  }
  state = { ...state, awaitingPoint: true, lastError: null };
  send(result.message);
  render();
});

el<HTMLButtonElement>("undo").addEventListener("click", () => {
  send({ type: "undo" });
});

el<HTMLButtonElement>("whatif-add").addEventListener("click", () => {
  if (!state.score) return;
  // Server of the first queued point mirrors the live score; later points
  // keep the same server unless the user changes the winner pattern.
  const result = whatIfQueue.add(currentFormValues(), state.score.server);
  if (!result.ok) {
    state = { ...state, lastError: { field: result.field, message: result.reason } };
  }
  render();
});

el<HTMLButtonElement>("whatif-send").addEventListener("click", () => {
  const msg = whatIfQueue.toMessage();
  if (msg) {
    send(msg);
    render();
  }
});

el<HTMLButtonElement>("end").addEventListener("click", () => {
  send({ type: "end_session" });
});

el<HTMLTextAreaElement>("profiles").value = JSON.stringify(EXAMPLE_PROFILES, null, 2);
render();
