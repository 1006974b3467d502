// Canvas renderer: pursuers, evader, interception disks, occupied sectors,
// escapable arcs, capture ring. All geometry arrives in the frame message;
// this file only maps world coordinates onto the canvas.

import type { FrameMsg, HelloMsg } from "./protocol.js";
import { Camera, worldToScreen } from "./transform.js";

const COLORS = {
  background: "#10141a",
  grid: "#1d2430",
  pursuer: "#62b0ff",
  evader: "#ffd166",
  disk: "rgba(98, 176, 255, 0.10)",
  diskEdge: "rgba(98, 176, 255, 0.35)",
  sector: "rgba(80, 220, 160, 0.45)",
  escapable: "rgba(255, 90, 90, 0.9)",
  captureRing: "rgba(255, 209, 102, 0.5)",
  text: "#c8d2e0",
};

function drawGrid(ctx: CanvasRenderingContext2D, cam: Camera, spacing: number): void {
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  const halfW = cam.width / 2 / cam.scale;
  const halfH = cam.height / 2 / cam.scale;
  const x0 = Math.floor((cam.cx - halfW) / spacing) * spacing;
  const y0 = Math.floor((cam.cy - halfH) / spacing) * spacing;
  for (let x = x0; x <= cam.cx + halfW; x += spacing) {
    const [sx] = worldToScreen(cam, x, 0);
    ctx.beginPath();
    ctx.moveTo(sx, 0);
    ctx.lineTo(sx, cam.height);
    ctx.stroke();
  }
  for (let y = y0; y <= cam.cy + halfH; y += spacing) {
    const [, sy] = worldToScreen(cam, 0, y);
    ctx.beginPath();
    ctx.moveTo(0, sy);
    ctx.lineTo(cam.width, sy);
    ctx.stroke();
  }
}

/**
 * Arcs anchored at the evader are drawn as annular sectors. World angles are
 * counterclockwise; canvas angles run clockwise (y flipped), so angles negate.
 */
function arcPath(
  ctx: CanvasRenderingContext2D,
  cam: Camera,
  ex: number,
  ey: number,
  start: number,
  end: number,
  rInner: number,
  rOuter: number,
): void {
  const [sx, sy] = worldToScreen(cam, ex, ey);
  ctx.beginPath();
  ctx.arc(sx, sy, rOuter * cam.scale, -start, -end, true);
  ctx.arc(sx, sy, rInner * cam.scale, -end, -start, false);
  ctx.closePath();
}

export function render(
  ctx: CanvasRenderingContext2D,
  cam: Camera,
  frame: FrameMsg,
  hello: HelloMsg | null,
): void {
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, cam.width, cam.height);
  drawGrid(ctx, cam, 10);

  const [ex, ey] = frame.evader;

  // interception disks
  for (const disk of frame.disks) {
    const [sx, sy] = worldToScreen(cam, disk.cx, disk.cy);
    ctx.beginPath();
    ctx.arc(sx, sy, disk.r * cam.scale, 0, 2 * Math.PI);
    ctx.fillStyle = COLORS.disk;
    ctx.fill();
    ctx.strokeStyle = COLORS.diskEdge;
    ctx.lineWidth = 1;
    ctx.stroke();
  }

  // occupied sectors (thin ring) and escapable arcs (thick, alarming)
  const sectorR = 3.2;
  for (const sector of frame.sectors ?? []) {
    arcPath(ctx, cam, ex, ey, sector.start, sector.end, sectorR - 0.25, sectorR);
    ctx.fillStyle = COLORS.sector;
    ctx.fill();
  }
  for (const arc of frame.arcs) {
    arcPath(ctx, cam, ex, ey, arc.start, arc.end, sectorR - 0.55, sectorR + 0.3);
    ctx.fillStyle = COLORS.escapable;
    ctx.fill();
  }

  // capture-radius ring around the evader
  if (hello) {
    const [sx, sy] = worldToScreen(cam, ex, ey);
    ctx.beginPath();
    ctx.arc(sx, sy, hello.d_c * cam.scale, 0, 2 * Math.PI);
    ctx.strokeStyle = COLORS.captureRing;
    ctx.setLineDash([4, 4]);
    ctx.lineWidth = 1.5;
    ctx.stroke();
    ctx.setLineDash([]);
  }

  // agents; the pursuers array is in ascending-id order, and `order` carries
  // the ids themselves (ring-sorted), so id-ascending = sorted(order)
  const ids = [...frame.order].sort((a, b) => a - b);
  ctx.font = "12px system-ui, sans-serif";
  frame.pursuers.forEach(([x, y], idx) => {
    const [px, py] = worldToScreen(cam, x, y);
    ctx.beginPath();
    ctx.arc(px, py, 5, 0, 2 * Math.PI);
    ctx.fillStyle = COLORS.pursuer;
    ctx.fill();
    ctx.fillStyle = COLORS.text;
    ctx.fillText(String(ids[idx] ?? idx + 1), px + 7, py - 7);
  });

  const [sx, sy] = worldToScreen(cam, ex, ey);
  ctx.beginPath();
  ctx.arc(sx, sy, 6, 0, 2 * Math.PI);
  ctx.fillStyle = COLORS.evader;
  ctx.fill();
}
