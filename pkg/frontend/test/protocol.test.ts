import { describe, expect, it } from "vitest";

import { encodeCommand, parseServerMessage } from "../src/protocol.js";

const frame = {
  type: "frame",
  tick: 3,
  t: 0.15,
  pursuers: [[1, 2], [3, 4]],
  evader: [0, 0],
  theta_G: 3.14,
  P: 0.5,
  min_dist: 2.2,
  order: [1, 2],
  coverage: [0.5, -0.2],
  arcs: [{ start: 0.1, end: 0.6 }],
  sectors: [{ start: -1, end: 1 }, { start: 2, end: 3 }],
  disks: [{ cx: 1, cy: 2, r: 0.5 }],
};

describe("parseServerMessage", () => {
  it("parses a frame", () => {
    const msg = parseServerMessage(JSON.stringify(frame));
    expect(msg?.type).toBe("frame");
    if (msg?.type === "frame") {
      expect(msg.pursuers.length).toBe(2);
      expect(msg.arcs[0].end).toBeCloseTo(0.6);
    }
  });

  it("parses hello and end", () => {
    const hello = parseServerMessage(
      JSON.stringify({ type: "hello", session: "x", scenario: "a", n: 3, d_c: 1,
                       dt: 0.05, pace: 1, mode: "sp2", evader_speed: 2, pursuer_speeds: [1.8] }),
    );
    expect(hello?.type).toBe("hello");
    const end = parseServerMessage(
      JSON.stringify({ type: "end", verdict: "captured", by: 2, t_c: 9.5 }),
    );
    expect(end?.type).toBe("end");
  });

  it("ignores unknown fields", () => {
    const msg = parseServerMessage(JSON.stringify({ ...frame, mystery: 42 }));
    expect(msg?.type).toBe("frame");
  });

  it("rejects unknown types and malformed payloads", () => {
    expect(parseServerMessage(JSON.stringify({ type: "launch" }))).toBeNull();
    expect(parseServerMessage("not json")).toBeNull();
    expect(parseServerMessage(JSON.stringify({ type: "frame", evader: "nope" }))).toBeNull();
  });
});

describe("encodeCommand", () => {
  it("encodes steer with heading", () => {
    const raw = JSON.parse(encodeCommand({ kind: "steer", heading: Math.PI }));
    expect(raw).toEqual({ type: "steer", heading: Math.PI });
  });

  it("encodes bare commands", () => {
    for (const kind of ["stop", "pause", "resume", "reset"] as const) {
      expect(JSON.parse(encodeCommand({ kind }))).toEqual({ type: kind });
    }
  });
});
