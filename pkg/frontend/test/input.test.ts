import { describe, expect, it } from "vitest";

import { SteeringInput } from "../src/input.js";

describe("SteeringInput", () => {
  it("right arrow sends heading 0 once, holding does not repeat", () => {
    const input = new SteeringInput();
    const first = input.keyEvent("ArrowRight", true, 0);
    expect(first).toEqual({ kind: "steer", heading: 0 });
    // key repeat events / re-press with same heading: no message
    expect(input.keyEvent("ArrowRight", true, 100)).toBeNull();
    expect(input.poll(200)).toBeNull();
  });

  it("key combos map to diagonal headings", () => {
    const input = new SteeringInput();
    input.keyEvent("ArrowRight", true, 0);
    const combo = input.keyEvent("ArrowUp", true, 100);
    expect(combo).toEqual({ kind: "steer", heading: Math.PI / 4 });
  });

  it("releasing all keys holds the last heading (no message)", () => {
    const input = new SteeringInput();
    input.keyEvent("ArrowLeft", true, 0);
    expect(input.keyEvent("ArrowLeft", false, 100)).toBeNull();
  });

  it("rate-caps steer to one per 50 ms, flushing the latest pending", () => {
    const input = new SteeringInput();
    expect(input.pointerEvent(0.0, 0)).not.toBeNull();
    // rapid changes within the window are swallowed...
    expect(input.pointerEvent(0.5, 10)).toBeNull();
    expect(input.pointerEvent(1.0, 20)).toBeNull();
    expect(input.poll(30)).toBeNull();
    // ...and the newest heading goes out once the window elapses
    expect(input.poll(55)).toEqual({ kind: "steer", heading: 1.0 });
  });

  it("stays at or under 20 messages per second under rapid changes", () => {
    const input = new SteeringInput();
    let sent = 0;
    for (let ms = 0; ms < 1000; ms += 5) {
      const heading = (ms % 360) * 0.01;
      if (input.pointerEvent(heading, ms)) sent++;
      if (input.poll(ms)) sent++;
    }
    expect(sent).toBeLessThanOrEqual(20);
    expect(sent).toBeGreaterThan(10);
  });

  it("space sends stop and clears held steering", () => {
    const input = new SteeringInput();
    input.keyEvent("ArrowRight", true, 0);
    expect(input.keyEvent(" ", true, 100)).toEqual({ kind: "stop" });
    // steering again after stop re-sends even the same heading
    expect(input.keyEvent("ArrowRight", true, 200)).toEqual({ kind: "steer", heading: 0 });
  });

  it("p toggles pause and resume", () => {
    const input = new SteeringInput();
    expect(input.keyEvent("p", true, 0)).toEqual({ kind: "pause" });
    expect(input.paused).toBe(true);
    expect(input.keyEvent("P", true, 100)).toEqual({ kind: "resume" });
    expect(input.paused).toBe(false);
  });

  it("ignores unrelated keys", () => {
    const input = new SteeringInput();
    expect(input.keyEvent("x", true, 0)).toBeNull();
    expect(input.keyEvent("Enter", true, 0)).toBeNull();
  });
});
