// Wire protocol with the live session service: single-line JSON messages,
// each carrying a `type` field. Unknown fields are ignored for forward
// compatibility; unknown types parse to null.

export interface HelloMsg {
  type: "hello";
  session: string;
  scenario: string;
  n: number;
  d_c: number;
  dt: number;
  pace: number;
  mode: string;
  evader_speed: number;
  pursuer_speeds: number[];
}

export interface Arc {
  start: number;
  end: number;
}

export interface Disk {
  cx: number;
  cy: number;
  r: number;
}

export interface FrameMsg {
  type: "frame";
  tick: number;
  t: number;
  pursuers: [number, number][];
  evader: [number, number];
  theta_G: number;
  P: number;
  min_dist: number;
  order: number[];
  coverage: number[];
  arcs: Arc[];
  sectors: Arc[];
  disks: Disk[];
}

export interface EndMsg {
  type: "end";
  verdict: string;
  by: number | null;
  t_c: number | null;
}

export interface ErrorMsg {
  type: "error";
  message: string;
}

export type ServerMsg = HelloMsg | FrameMsg | EndMsg | ErrorMsg;

function isFiniteNumber(x: unknown): x is number {
  return typeof x === "number" && Number.isFinite(x);
}

function isPair(x: unknown): x is [number, number] {
  return Array.isArray(x) && x.length === 2 && isFiniteNumber(x[0]) && isFiniteNumber(x[1]);
}

export function parseServerMessage(text: string): ServerMsg | null {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof raw !== "object" || raw === null) return null;
  const msg = raw as Record<string, unknown>;
  switch (msg.type) {
    case "hello":
      if (isFiniteNumber(msg.n) && isFiniteNumber(msg.d_c) && isFiniteNumber(msg.dt)) {
        return msg as unknown as HelloMsg;
      }
      return null;
    case "frame":
      if (
        Array.isArray(msg.pursuers) &&
        msg.pursuers.every(isPair) &&
        isPair(msg.evader) &&
        isFiniteNumber(msg.theta_G) &&
        isFiniteNumber(msg.t)
      ) {
        return msg as unknown as FrameMsg;
      }
      return null;
    case "end":
      if (typeof msg.verdict === "string") return msg as unknown as EndMsg;
      return null;
    case "error":
      if (typeof msg.message === "string") return msg as unknown as ErrorMsg;
      return null;
    default:
      return null;
  }
}

export type Command =
  | { kind: "steer"; heading: number }
  | { kind: "stop" }
  | { kind: "pause" }
  | { kind: "resume" }
  | { kind: "reset" };

export function encodeCommand(cmd: Command): string {
  switch (cmd.kind) {
    case "steer":
      return JSON.stringify({ type: "steer", heading: cmd.heading });
    case "stop":
      return JSON.stringify({ type: "stop" });
    case "pause":
      return JSON.stringify({ type: "pause" });
    case "resume":
      return JSON.stringify({ type: "resume" });
    case "reset":
      return JSON.stringify({ type: "reset" });
  }
}
