/**
 * Session view state. Applies server messages idempotently and order-safely:
 * frames with an iteration at or below the last rendered one are discarded,
 * the turning number is pinned by the first frame, and nothing changes after
 * the terminal message.
 */
import type { Classification, ErrorMessage, FrameMessage, ServerMessage } from './protocol.js';

export type Status = 'drawing' | 'running' | 'paused' | 'quiescent' | 'failed';

const ENERGY_HISTORY_LIMIT = 512;

export function bannerText(classification: Classification | null): string {
  if (!classification) return '';
  if (classification.kind === 'circle' && classification.k !== null) {
    const k = classification.k;
    const turns = Math.abs(k);
    const direction = k < 0 ? ' (clockwise)' : '';
    return `Circle ×${turns}${direction}`;
  }
  if (classification.kind === 'figure-eight') return 'Figure eight';
  return 'Still evolving…';
}

export class ViewModel {
  status: Status = 'drawing';
  sessionId: string | null = null;
  frame: FrameMessage | null = null;
  energyHistory: number[] = [];
  pinnedIndex: number | null = null;
  banner = '';
  error: ErrorMessage | null = null;
  finalIterations: number | null = null;

  /** Applies a message; returns true when the visible state changed. */
  apply(msg: ServerMessage): boolean {
    if (this.status === 'failed') return false;
    switch (msg.type) {
      case 'session':
        this.sessionId = msg.sessionId;
        this.status = 'running';
        return true;
      case 'frame':
        return this.applyFrame(msg);
      case 'done':
        this.status = 'quiescent';
        this.finalIterations = msg.iterations;
        this.banner = bannerText(msg.classification);
        return true;
      case 'error':
        this.status = 'failed';
        this.error = msg;
        this.banner = `${msg.code}: ${msg.message}`;
        return true;
    }
  }

  private applyFrame(msg: FrameMessage): boolean {
    if (this.frame !== null && msg.iteration <= this.frame.iteration) {
      return false; // duplicate or out of order
    }
    if (this.pinnedIndex === null) {
      this.pinnedIndex = msg.whitneyIndex;
    } else if (msg.whitneyIndex !== this.pinnedIndex) {
      // the engine aborts on index changes; a disagreeing frame means the
      // stream is corrupt, so surface an error instead of a stale index
      this.status = 'failed';
      this.error = {
        type: 'error',
        code: 'IndexMismatch',
        message: `frame reports index ${msg.whitneyIndex}, expected ${this.pinnedIndex}`,
      };
      this.banner = this.error.message;
      return true;
    }
    this.frame = msg;
    this.energyHistory.push(msg.energyDiscrete);
    if (this.energyHistory.length > ENERGY_HISTORY_LIMIT) {
      this.energyHistory.splice(0, this.energyHistory.length - ENERGY_HISTORY_LIMIT);
    }
    return true;
  }

  setPaused(paused: boolean): void {
    if (this.status === 'running' && paused) this.status = 'paused';
    else if (this.status === 'paused' && !paused) this.status = 'running';
  }

  reset(): void {
    this.status = 'drawing';
    this.sessionId = null;
    this.frame = null;
    this.energyHistory = [];
    this.pinnedIndex = null;
    this.banner = '';
    this.error = null;
    this.finalIterations = null;
  }
}
