/**
 * Pointer-trail capture. Points arrive in screen pixels; the buffer filters
 * jitter, marks the trail closed when the pointer lifts near its start, and
 * normalizes into a unit box for submission (auto-closing by appending the
 * start point).
 */
import type { Point } from './protocol.js';

const MIN_SAMPLE_DISTANCE = 2.0; // px
const CLOSE_RADIUS = 24.0; // px

export class DrawingBuffer {
  points: Point[] = [];
  closed = false;
  private active = false;

  begin(x: number, y: number): void {
    this.points = [[x, y]];
    this.closed = false;
    this.active = true;
  }

  extend(x: number, y: number): void {
    if (!this.active) return;
    const last = this.points[this.points.length - 1];
    if (!last) return;
    const dx = x - last[0];
    const dy = y - last[1];
    if (dx * dx + dy * dy >= MIN_SAMPLE_DISTANCE * MIN_SAMPLE_DISTANCE) {
      this.points.push([x, y]);
    }
  }

  end(x: number, y: number): void {
    if (!this.active) return;
    this.extend(x, y);
    this.active = false;
    const first = this.points[0];
    const last = this.points[this.points.length - 1];
    if (first && last) {
      const dx = last[0] - first[0];
      const dy = last[1] - first[1];
      this.closed = Math.hypot(dx, dy) <= CLOSE_RADIUS;
    }
  }

  get count(): number {
    return this.points.length;
  }

  canSubmit(): boolean {
    return !this.active && this.points.length >= 3;
  }

  /**
   * Map the trail into the unit box (aspect preserved, y up) and close it
   * by appending the start point.
   */
  toNormalized(): Point[] {
    if (this.points.length === 0) return [];
    let minX = Infinity;
    let minY = Infinity;
    let maxX = -Infinity;
    let maxY = -Infinity;
    for (const [x, y] of this.points) {
      minX = Math.min(minX, x);
      minY = Math.min(minY, y);
      maxX = Math.max(maxX, x);
      maxY = Math.max(maxY, y);
    }
    const span = Math.max(maxX - minX, maxY - minY, 1e-9);
    const trail = this.points.map(
      ([x, y]): Point => [(x - minX) / span, (maxY - y) / span],
    );
    const first = trail[0];
    if (first) trail.push([first[0], first[1]]);
    return trail;
  }
}
