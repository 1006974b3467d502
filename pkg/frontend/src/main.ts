// Entry point: wires the WebSocket client, steering input, HUD, and the
// canvas render loop together.

import { CockpitClient } from "./client.js";
import { bannerText, hudText } from "./hud.js";
import { SteeringInput } from "./input.js";
import { Camera, blendCamera, fitCamera, pointerHeading } from "./transform.js";
import { render } from "./render.js";

const canvas = document.getElementById("scene") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const hudCoverage = document.getElementById("hud-coverage")!;
const hudDistance = document.getElementById("hud-distance")!;
const hudClock = document.getElementById("hud-clock")!;
const hudStatus = document.getElementById("hud-status")!;
const banner = document.getElementById("banner")!;
const reconnectBtn = document.getElementById("reconnect") as HTMLButtonElement;

const wsUrl = `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/ws`;
const input = new SteeringInput();
let camera: Camera | null = null;
let pointerDown = false;

const client = new CockpitClient(wsUrl, {
  onHello: () => {
    banner.classList.add("hidden");
    hudStatus.textContent = "connected — arrows/WASD or drag to steer, space stops, P pauses";
  },
  onEnd: (end) => {
    banner.textContent = bannerText(end);
    banner.classList.remove("hidden");
  },
  onError: (err) => {
    hudStatus.textContent = `server: ${err.message}`;
  },
  onClose: () => {
    if (!client.end) {
      hudStatus.textContent = "disconnected";
      reconnectBtn.classList.remove("hidden");
    }
  },
});

reconnectBtn.addEventListener("click", () => {
  reconnectBtn.classList.add("hidden");
  client.connect();
});

function resize(): void {
  canvas.width = canvas.clientWidth * devicePixelRatio;
  canvas.height = canvas.clientHeight * devicePixelRatio;
  ctx.setTransform(devicePixelRatio, 0, 0, devicePixelRatio, 0, 0);
}
window.addEventListener("resize", resize);
resize();

window.addEventListener("keydown", (e: KeyboardEvent) => {
  if (e.repeat) return; // held key: heading already sent once
  const cmd = input.keyEvent(e.key, true, performance.now());
  if (cmd) client.send(cmd);
  if ([" ", "arrowup", "arrowdown", "arrowleft", "arrowright"].includes(e.key.toLowerCase())) {
    e.preventDefault();
  }
});
window.addEventListener("keyup", (e: KeyboardEvent) => {
  const cmd = input.keyEvent(e.key, false, performance.now());
  if (cmd) client.send(cmd);
});

function pointerSteer(e: PointerEvent): void {
  const frame = client.latestFrame;
  if (!frame || !camera) return;
  const rect = canvas.getBoundingClientRect();
  const heading = pointerHeading(
    camera,
    frame.evader[0],
    frame.evader[1],
    e.clientX - rect.left,
    e.clientY - rect.top,
  );
  if (heading === null) return;
  const cmd = input.pointerEvent(heading, performance.now());
  if (cmd) client.send(cmd);
}
canvas.addEventListener("pointerdown", (e) => {
  pointerDown = true;
  pointerSteer(e);
});
canvas.addEventListener("pointermove", (e) => {
  if (pointerDown) pointerSteer(e);
});
window.addEventListener("pointerup", () => {
  pointerDown = false;
});

function tick(): void {
  const pending = input.poll(performance.now());
  if (pending) client.send(pending);

  const frame = client.latestFrame;
  if (frame) {
    const width = canvas.clientWidth;
    const height = canvas.clientHeight;
    const points: [number, number][] = [...frame.pursuers, frame.evader];
    const target = fitCamera(points, width, height);
    camera = camera ? blendCamera(camera, target, 0.08) : target;
    render(ctx, camera, frame, client.hello);

    const hud = hudText(frame, client.hello);
    hudCoverage.textContent = hud.coverage;
    hudDistance.textContent = hud.distance;
    hudClock.textContent = hud.clock;
  }
  requestAnimationFrame(tick);
}

client.connect();
requestAnimationFrame(tick);
