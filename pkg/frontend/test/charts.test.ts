import { describe, expect, it } from "vitest";

import { CHART_PANELS, chartSvg } from "../src/charts.js";
import { applyServerMessage, initialConsoleState } from "../src/state.js";
import { pointUpdate, sample, score } from "./helpers.js";

function stateWithPoints(n: number) {
  let state = { ...initialConsoleState(), connection: "open" as const };
  state = applyServerMessage(state, { type: "session_ack", session_id: "s", score: score(0) });
  for (let i = 1; i <= n; i++) {
    state = applyServerMessage(state, pointUpdate(i));
  }
  return state;
}

describe("chart rendering", () => {
  it("draws two solid polylines, one per player", () => {
    const state = stateWithPoints(5);
    const svg = chartSvg("momentum", "tmm", state.series, null);
    expect(svg.match(/<polyline class="series-p1"/g)?.length).toBe(1);
    expect(svg.match(/<polyline class="series-p2"/g)?.length).toBe(1);
    expect(svg).not.toContain("projection-");
  });

  it("renders the projection as a visually distinct dashed overlay", () => {
    let state = stateWithPoints(3);
    state = applyServerMessage(state, {
      type: "projection",
      samples: [sample(4), sample(5)],
      score: score(5),
    });
    const svg = chartSvg("momentum", "tmm", state.series, state.projection);
    expect(svg).toContain('class="projection-p1"');
    expect(svg).toContain("stroke-dasharray");
  });

  it("removes the overlay once the next confirmed point arrives", () => {
    let state = stateWithPoints(3);
    state = applyServerMessage(state, {
      type: "projection",
      samples: [sample(4)],
      score: score(4),
    });
    state = applyServerMessage(state, pointUpdate(4));
    const svg = chartSvg("momentum", "tmm", state.series, state.projection);
    expect(svg).not.toContain("projection-");
  });

  it("covers all four series the console tracks", () => {
    expect(CHART_PANELS.map((p) => p.metric)).toEqual([
      "tmm",
      "efficiencySmoothed",
      "pLtm",
      "mStm",
    ]);
  });

  it("handles an empty session without polylines", () => {
    const state = stateWithPoints(0);
    const svg = chartSvg("momentum", "tmm", state.series, null);
    expect(svg).not.toContain("<polyline");
    expect(svg).toContain("<svg");
  });
});
