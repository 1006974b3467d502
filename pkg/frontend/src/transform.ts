// World <-> screen mapping. World is y-up; the canvas is y-down, so the
// transform flips y. It is affine and invertible, so pointer positions map
// back to world headings exactly (round-trip within float noise).

export interface Camera {
  scale: number; // pixels per world unit
  cx: number; // world point at the screen center (x)
  cy: number;
  width: number; // screen size in pixels
  height: number;
}

/** Fit all points with a margin; never zooms tighter than minSpan world units. */
export function fitCamera(
  points: [number, number][],
  width: number,
  height: number,
  marginPx = 48,
  minSpan = 24,
): Camera {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const [x, y] of points) {
    minX = Math.min(minX, x);
    maxX = Math.max(maxX, x);
    minY = Math.min(minY, y);
    maxY = Math.max(maxY, y);
  }
  if (!Number.isFinite(minX)) {
    minX = -1;
    maxX = 1;
    minY = -1;
    maxY = 1;
  }
  const spanX = Math.max(maxX - minX, minSpan);
  const spanY = Math.max(maxY - minY, minSpan);
  const usableW = Math.max(width - 2 * marginPx, 32);
  const usableH = Math.max(height - 2 * marginPx, 32);
  const scale = Math.min(usableW / spanX, usableH / spanY);
  return {
    scale,
    cx: (minX + maxX) / 2,
    cy: (minY + maxY) / 2,
    width,
    height,
  };
}

export function worldToScreen(cam: Camera, x: number, y: number): [number, number] {
  return [
    cam.width / 2 + (x - cam.cx) * cam.scale,
    cam.height / 2 - (y - cam.cy) * cam.scale,
  ];
}

export function screenToWorld(cam: Camera, sx: number, sy: number): [number, number] {
  return [
    cam.cx + (sx - cam.width / 2) / cam.scale,
    cam.cy - (sy - cam.height / 2) / cam.scale,
  ];
}

/** Heading (radians, world frame) from a world origin toward a screen point. */
export function pointerHeading(
  cam: Camera,
  originX: number,
  originY: number,
  sx: number,
  sy: number,
): number | null {
  const [wx, wy] = screenToWorld(cam, sx, sy);
  const dx = wx - originX;
  const dy = wy - originY;
  if (dx === 0 && dy === 0) return null;
  return Math.atan2(dy, dx);
}

/** Smooth camera tracking: exponential pull of one camera toward another. */
export function blendCamera(current: Camera, target: Camera, weight: number): Camera {
  const w = Math.max(0, Math.min(1, weight));
  return {
    scale: current.scale + (target.scale - current.scale) * w,
    cx: current.cx + (target.cx - current.cx) * w,
    cy: current.cy + (target.cy - current.cy) * w,
    width: target.width,
    height: target.height,
  };
}
