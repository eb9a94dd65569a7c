/**
 * Session protocol messages. One JSON object per WebSocket message, each
 * carrying a `type` field; the server ends every run with exactly one
 * `done` or `error`.
 */

export type Point = [number, number];

export interface Classification {
  kind: 'circle' | 'figure-eight' | 'unconverged';
  k: number | null;
  curvatureCv: number | null;
  templateCorrelation: number;
  radiusEstimate: number | null;
  label: string;
}

export interface SessionMessage {
  type: 'session';
  sessionId: string;
}

export interface FrameMessage {
  type: 'frame';
  iteration: number;
  vertices: Point[];
  energyDiscrete: number;
  whitneyIndex: number;
  maxDisplacement: number | null;
  classification: Classification | null;
}

export interface DoneMessage {
  type: 'done';
  iterations: number;
  classification: Classification | null;
}

export interface ErrorMessage {
  type: 'error';
  code: string;
  message: string;
}

export type ServerMessage = SessionMessage | FrameMessage | DoneMessage | ErrorMessage;

export interface EngineParams {
  n?: number;
  c1?: number;
  c2?: number;
  max_iters?: number;
  snapshot_every?: number;
}

export type ControlAction = 'pause' | 'resume' | 'perturb' | 'set-snapshot-rate' | 'stop';

export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== 'object' || data === null) return null;
  const msg = data as Record<string, unknown>;
  switch (msg.type) {
    case 'session':
      return typeof msg.sessionId === 'string' ? (msg as unknown as SessionMessage) : null;
    case 'frame':
      if (
        typeof msg.iteration === 'number' &&
        Array.isArray(msg.vertices) &&
        typeof msg.energyDiscrete === 'number' &&
        typeof msg.whitneyIndex === 'number'
      ) {
        return msg as unknown as FrameMessage;
      }
      return null;
    case 'done':
      return typeof msg.iterations === 'number' ? (msg as unknown as DoneMessage) : null;
    case 'error':
      return typeof msg.code === 'string' ? (msg as unknown as ErrorMessage) : null;
    default:
      return null;
  }
}

export function startMessage(points: Point[], params: EngineParams): string {
  return JSON.stringify({ type: 'start', points, params });
}

export function controlMessage(action: ControlAction, extra: Record<string, unknown> = {}): string {
  return JSON.stringify({ type: 'control', action, ...extra });
}
