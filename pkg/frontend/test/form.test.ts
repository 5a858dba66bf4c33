import { describe, expect, it } from "vitest";

import { entryFromForm, recordMessage, validateForm, WhatIfQueue } from "../src/form.js";
import { score } from "./helpers.js";

const LIVE = score(4);

describe("record point form", () => {
  it("builds a well-formed message; ace forces rally count 0", () => {
    const msg = recordMessage(
      { winner: 1, rallyCount: 7, isAce: true, isDoubleFault: false },
      LIVE,
    );
    expect(msg).toEqual({
      type: "record_point",
      server: 1,
      winner: 1,
      rally_count: 0,
      is_ace: true,
      is_double_fault: false,
    });
  });

  it("server field always mirrors the score snapshot", () => {
    const entry = entryFromForm(
      { winner: 2, rallyCount: 3, isAce: false, isDoubleFault: false },
      score(9, { server: 2 }),
    );
    expect(entry.server).toBe(2);
  });

  it("rejects an ace credited to the returner before sending", () => {
    const result = validateForm(
      { winner: 2, rallyCount: 0, isAce: true, isDoubleFault: false },
      LIVE,
    );
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.field).toBe("is_ace");
  });

  it("rejects a double fault won by the server", () => {
    const result = validateForm(
      { winner: 1, rallyCount: 0, isAce: false, isDoubleFault: true },
      LIVE,
    );
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.field).toBe("is_double_fault");
  });

  it("rejects entry once the match is over", () => {
    const result = validateForm(
      { winner: 1, rallyCount: 1, isAce: false, isDoubleFault: false },
      score(130, { winner: 2 }),
    );
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.field).toBe("session");
  });

  it("rejects negative or fractional rally counts", () => {
    for (const rallyCount of [-1, 1.5]) {
      const result = validateForm(
        { winner: 1, rallyCount, isAce: false, isDoubleFault: false },
        LIVE,
      );
      expect(result.ok).toBe(false);
    }
  });
});

describe("what-if queue", () => {
  it("collects hypothetical points into one message and drains", () => {
    const queue = new WhatIfQueue();
    queue.add({ winner: 1, rallyCount: 1, isAce: false, isDoubleFault: false }, 1);
    queue.add({ winner: 1, rallyCount: 0, isAce: true, isDoubleFault: false }, 1);
    expect(queue.length).toBe(2);
    const msg = queue.toMessage();
    expect(msg?.type).toBe("what_if");
    expect(msg?.points.length).toBe(2);
    expect(msg?.points[1].is_ace).toBe(true);
    expect(queue.length).toBe(0);
    expect(queue.toMessage()).toBeNull();
  });

  it("applies the same invariant mirrors as the live form", () => {
    const queue = new WhatIfQueue();
    const bad = queue.add({ winner: 2, rallyCount: 0, isAce: true, isDoubleFault: false }, 1);
    expect(bad.ok).toBe(false);
    expect(queue.length).toBe(0);
  });
});
