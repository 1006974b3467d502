// WebSocket client: parses server messages, keeps the latest complete frame
// (rendering never blocks message ingestion), and exposes reconnect.

import {
  Command,
  EndMsg,
  ErrorMsg,
  FrameMsg,
  HelloMsg,
  encodeCommand,
  parseServerMessage,
} from "./protocol.js";

export interface ClientEvents {
  onHello?: (msg: HelloMsg) => void;
  onFrame?: (msg: FrameMsg) => void;
  onEnd?: (msg: EndMsg) => void;
  onError?: (msg: ErrorMsg) => void;
  onClose?: () => void;
}

export class CockpitClient {
  private ws: WebSocket | null = null;
  hello: HelloMsg | null = null;
  latestFrame: FrameMsg | null = null;
  end: EndMsg | null = null;
  lastError: string | null = null;

  constructor(private url: string, private events: ClientEvents = {}) {}

  connect(): void {
    this.end = null;
    this.lastError = null;
    const ws = new WebSocket(this.url);
    this.ws = ws;
    ws.addEventListener("message", (event: MessageEvent) => {
      if (typeof event.data !== "string") return;
      const msg = parseServerMessage(event.data);
      if (msg === null) return;
      this.dispatch(msg);
    });
    ws.addEventListener("close", () => {
      this.ws = null;
      this.events.onClose?.();
    });
  }

  private dispatch(msg: HelloMsg | FrameMsg | EndMsg | ErrorMsg): void {
    switch (msg.type) {
      case "hello":
        this.hello = msg;
        this.events.onHello?.(msg);
        break;
      case "frame":
        this.latestFrame = msg; // latest wins
        this.events.onFrame?.(msg);
        break;
      case "end":
        this.end = msg;
        this.events.onEnd?.(msg);
        break;
      case "error":
        this.lastError = msg.message;
        this.events.onError?.(msg);
        break;
    }
  }

  get connected(): boolean {
    return this.ws !== null && this.ws.readyState === WebSocket.OPEN;
  }

  send(cmd: Command): void {
    if (this.connected) {
      this.ws!.send(encodeCommand(cmd));
    }
  }

  close(): void {
    this.ws?.close();
    this.ws = null;
  }
}
