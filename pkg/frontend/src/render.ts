/** Canvas rendering: the evolving curve, the live trail, the ghost overlay. */
import type { FrameMessage, Point } from './protocol.js';

export interface Viewport {
  scale: number;
  cx: number;
  cy: number;
  width: number;
  height: number;
}

export function fitViewport(points: Point[], width: number, height: number): Viewport {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const [x, y] of points) {
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  }
  const span = Math.max(maxX - minX, maxY - minY, 1e-9);
  const scale = (0.9 * Math.min(width, height)) / span;
  return { scale, cx: (minX + maxX) / 2, cy: (minY + maxY) / 2, width, height };
}

function toScreen([x, y]: Point, vp: Viewport): [number, number] {
  return [vp.width / 2 + (x - vp.cx) * vp.scale, vp.height / 2 - (y - vp.cy) * vp.scale];
}

function tracePath(ctx: CanvasRenderingContext2D, points: Point[], vp: Viewport, close: boolean): void {
  ctx.beginPath();
  points.forEach((p, i) => {
    const [sx, sy] = toScreen(p, vp);
    if (i === 0) ctx.moveTo(sx, sy);
    else ctx.lineTo(sx, sy);
  });
  if (close) ctx.closePath();
}

export function drawCurve(ctx: CanvasRenderingContext2D, frame: FrameMessage, ghost: boolean): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  const vp = fitViewport(frame.vertices, width, height);
  if (ghost) drawGhost(ctx, frame, vp);
  tracePath(ctx, frame.vertices, vp, true);
  ctx.strokeStyle = '#143862';
  ctx.lineWidth = 2.0;
  ctx.lineJoin = 'round';
  ctx.stroke();
}

/** Predicted normal form: a circle of the matching radius, or an eight hint. */
function drawGhost(ctx: CanvasRenderingContext2D, frame: FrameMessage, vp: Viewport): void {
  let perimeter = 0;
  const v = frame.vertices;
  for (let i = 0; i < v.length; i++) {
    const a = v[i]!;
    const b = v[(i + 1) % v.length]!;
    perimeter += Math.hypot(b[0] - a[0], b[1] - a[1]);
  }
  const k = frame.whitneyIndex;
  ctx.save();
  ctx.strokeStyle = 'rgba(120, 140, 170, 0.45)';
  ctx.lineWidth = 1.5;
  ctx.setLineDash([6, 6]);
  const ghost: Point[] = [];
  if (k !== 0) {
    const radius = perimeter / (2 * Math.PI * Math.abs(k));
    for (let i = 0; i <= 128; i++) {
      const a = (2 * Math.PI * i) / 128;
      ghost.push([vp.cx + radius * Math.cos(a), vp.cy + radius * Math.sin(a)]);
    }
  } else {
    // lemniscate-shaped hint for the figure-eight limit
    const a = perimeter / 7.4;
    for (let i = 0; i <= 256; i++) {
      const t = (2 * Math.PI * i) / 256;
      const d = 1 + Math.sin(t) * Math.sin(t);
      ghost.push([vp.cx + (a * Math.cos(t)) / d, vp.cy + (a * Math.sin(t) * Math.cos(t)) / d]);
    }
  }
  tracePath(ctx, ghost, vp, false);
  ctx.stroke();
  ctx.restore();
}

export function drawTrail(ctx: CanvasRenderingContext2D, points: Point[]): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  if (points.length < 2) return;
  ctx.beginPath();
  points.forEach(([x, y], i) => {
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.strokeStyle = '#7a3030';
  ctx.lineWidth = 2.5;
  ctx.stroke();
}

export function drawSparkline(ctx: CanvasRenderingContext2D, history: number[]): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  if (history.length < 2) return;
  const lo = Math.min(...history);
  const hi = Math.max(...history);
  const span = Math.max(hi - lo, 1e-12);
  ctx.beginPath();
  history.forEach((e, i) => {
    const x = (i / (history.length - 1)) * width;
    const y = height - ((e - lo) / span) * (height - 4) - 2;
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.strokeStyle = '#2e6b30';
  ctx.lineWidth = 1.5;
  ctx.stroke();
}
