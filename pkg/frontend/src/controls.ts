/** Parameter panel and run controls, wired through callbacks only. */
import type { EngineParams } from './protocol.js';

export interface ControlCallbacks {
  onPause(): void;
  onResume(): void;
  onPerturb(seed: number): void;
  onRestart(): void;
}

export interface ControlElements {
  pause: HTMLButtonElement;
  resume: HTMLButtonElement;
  perturb: HTMLButtonElement;
  restart: HTMLButtonElement;
  ghost: HTMLInputElement;
  paramInputs: Record<keyof EngineParams, HTMLInputElement>;
  paramHint: HTMLElement;
}

export function readParams(inputs: ControlElements['paramInputs']): EngineParams {
  const params: EngineParams = {};
  const read = (el: HTMLInputElement): number | undefined => {
    const value = Number(el.value);
    return el.value !== '' && Number.isFinite(value) ? value : undefined;
  };
  const n = read(inputs.n);
  if (n !== undefined) params.n = Math.round(n);
  const c1 = read(inputs.c1);
  if (c1 !== undefined) params.c1 = c1;
  const c2 = read(inputs.c2);
  if (c2 !== undefined) params.c2 = c2;
  const maxIters = read(inputs.max_iters);
  if (maxIters !== undefined) params.max_iters = Math.round(maxIters);
  const snapshot = read(inputs.snapshot_every);
  if (snapshot !== undefined) params.snapshot_every = Math.round(snapshot);
  return params;
}

export function wireControls(el: ControlElements, callbacks: ControlCallbacks): void {
  el.pause.addEventListener('click', callbacks.onPause);
  el.resume.addEventListener('click', callbacks.onResume);
  el.perturb.addEventListener('click', () => callbacks.onPerturb((Math.random() * 1e6) | 0));
  el.restart.addEventListener('click', callbacks.onRestart);
  for (const input of Object.values(el.paramInputs)) {
    input.addEventListener('input', () => {
      el.paramHint.hidden = false; // edits apply on restart
    });
  }
}

export function setControlsEnabled(el: ControlElements, drawing: boolean, running: boolean): void {
  el.pause.disabled = drawing || !running;
  el.resume.disabled = drawing || running;
  el.perturb.disabled = drawing;
  el.restart.disabled = drawing;
}
