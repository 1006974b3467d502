// Steering input state machine: arrow keys / WASD and pointer drags map to
// heading commands. Steer messages go out at most once per 50 ms and only
// when the heading changes; space is stop; the P key toggles pause/resume.
// Pure logic (no DOM) so it is unit-testable; main.ts feeds it events.

import type { Command } from "./protocol.js";

export const STEER_MIN_INTERVAL_MS = 50;
const HEADING_EPS = 1e-4;

const KEY_AXES: Record<string, [number, number]> = {
  arrowright: [1, 0],
  arrowleft: [-1, 0],
  arrowup: [0, 1],
  arrowdown: [0, -1],
  d: [1, 0],
  a: [-1, 0],
  w: [0, 1],
  s: [0, -1],
};

export class SteeringInput {
  private held = new Set<string>();
  private lastSentHeading: number | null = null;
  private lastSendMs = -Infinity;
  private pendingHeading: number | null = null;
  private pausedToggle = false;

  constructor(private minIntervalMs: number = STEER_MIN_INTERVAL_MS) {}

  get paused(): boolean {
    return this.pausedToggle;
  }

  /** Key state change; returns the command to send now, if any. */
  keyEvent(key: string, down: boolean, nowMs: number): Command | null {
    const k = key.toLowerCase();
    if (down && k === " ") {
      this.lastSentHeading = null;
      this.pendingHeading = null;
      this.held.clear();
      return { kind: "stop" };
    }
    if (down && k === "p") {
      this.pausedToggle = !this.pausedToggle;
      return this.pausedToggle ? { kind: "pause" } : { kind: "resume" };
    }
    if (!(k in KEY_AXES)) return null;
    if (down) {
      this.held.add(k);
    } else {
      this.held.delete(k);
    }
    const heading = this.keysHeading();
    if (heading === null) return null; // keys released: keep last heading (zero-order hold)
    return this.requestHeading(heading, nowMs);
  }

  /** Pointer steering toward a heading (radians). */
  pointerEvent(heading: number, nowMs: number): Command | null {
    return this.requestHeading(heading, nowMs);
  }

  /** Flush a rate-limited pending heading once the interval has elapsed. */
  poll(nowMs: number): Command | null {
    if (this.pendingHeading === null) return null;
    if (nowMs - this.lastSendMs < this.minIntervalMs) return null;
    const heading = this.pendingHeading;
    this.pendingHeading = null;
    return this.emit(heading, nowMs);
  }

  private keysHeading(): number | null {
    let x = 0;
    let y = 0;
    for (const k of this.held) {
      const axis = KEY_AXES[k];
      x += axis[0];
      y += axis[1];
    }
    if (x === 0 && y === 0) return null;
    return Math.atan2(y, x);
  }

  private requestHeading(heading: number, nowMs: number): Command | null {
    if (
      this.lastSentHeading !== null &&
      Math.abs(heading - this.lastSentHeading) < HEADING_EPS
    ) {
      return null; // unchanged: never repeat
    }
    if (nowMs - this.lastSendMs < this.minIntervalMs) {
      this.pendingHeading = heading;
      return null;
    }
    this.pendingHeading = null;
    return this.emit(heading, nowMs);
  }

  private emit(heading: number, nowMs: number): Command {
    this.lastSentHeading = heading;
    this.lastSendMs = nowMs;
    return { kind: "steer", heading };
  }
}
