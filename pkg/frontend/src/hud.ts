// HUD text and banner content, kept pure for testing.

import type { EndMsg, FrameMsg, HelloMsg } from "./protocol.js";

export interface HudText {
  coverage: string;
  distance: string;
  clock: string;
}

export function hudText(frame: FrameMsg, hello: HelloMsg | null): HudText {
  const pct = (100 * frame.P).toFixed(1);
  const dC = hello ? hello.d_c : NaN;
  const distance = Number.isFinite(dC)
    ? `min dist ${frame.min_dist.toFixed(2)} / capture at ${dC.toFixed(2)}`
    : `min dist ${frame.min_dist.toFixed(2)}`;
  return {
    coverage: `coverage ${pct}%${frame.P >= 1 - 1e-9 ? " (encircled)" : ""}`,
    distance,
    clock: `t ${frame.t.toFixed(1)} s`,
  };
}

export function bannerText(end: EndMsg): string {
  if (end.verdict === "captured") {
    const t = end.t_c === null ? "?" : end.t_c.toFixed(2);
    return `CAPTURED by pursuer ${end.by} at t = ${t} s`;
  }
  if (end.verdict === "horizon_exceeded") {
    return "EVADER ESCAPED (horizon reached)";
  }
  return `RUN ENDED: ${end.verdict}`;
}

/** Escapable arcs are exactly the frame arcs; exposed for render + tests. */
export function escapableArcCount(frame: FrameMsg): number {
  return frame.arcs.length;
}
