/**
 * Bootstrap: draw a closed curve with the pointer, watch it evolve to its
 * normal form, read off the turning number and the classification banner.
 */
import { SessionClient } from './client.js';
import { ControlElements, readParams, setControlsEnabled, wireControls } from './controls.js';
import { DrawingBuffer } from './drawing.js';
import { drawCurve, drawSparkline, drawTrail } from './render.js';
import { ViewModel } from './viewmodel.js';

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const canvas = byId<HTMLCanvasElement>('curve-canvas');
const spark = byId<HTMLCanvasElement>('energy-sparkline');
const banner = byId<HTMLElement>('banner');
const statusBadge = byId<HTMLElement>('status-badge');
const indexBadge = byId<HTMLElement>('index-badge');
const iterBadge = byId<HTMLElement>('iteration-badge');

const controls: ControlElements = {
  pause: byId<HTMLButtonElement>('btn-pause'),
  resume: byId<HTMLButtonElement>('btn-resume'),
  perturb: byId<HTMLButtonElement>('btn-perturb'),
  restart: byId<HTMLButtonElement>('btn-restart'),
  ghost: byId<HTMLInputElement>('ghost-toggle'),
  paramInputs: {
    n: byId<HTMLInputElement>('param-n'),
    c1: byId<HTMLInputElement>('param-c1'),
    c2: byId<HTMLInputElement>('param-c2'),
    max_iters: byId<HTMLInputElement>('param-max-iters'),
    snapshot_every: byId<HTMLInputElement>('param-snapshot'),
  },
  paramHint: byId<HTMLElement>('param-hint'),
};

const ctx = canvas.getContext('2d')!;
const sparkCtx = spark.getContext('2d')!;
const vm = new ViewModel();
const buffer = new DrawingBuffer();
let dirty = true;

const client = new SessionClient(
  (msg) => {
    if (vm.apply(msg)) dirty = true;
  },
  () => {
    dirty = true;
  },
);

function submitDrawing(): void {
  if (!buffer.canSubmit()) return;
  vm.reset();
  vm.status = 'running';
  controls.paramHint.hidden = true;
  client.open(buffer.toNormalized(), readParams(controls.paramInputs));
  dirty = true;
}

canvas.addEventListener('pointerdown', (ev) => {
  if (vm.status !== 'drawing') return;
  canvas.setPointerCapture(ev.pointerId);
  buffer.begin(ev.offsetX, ev.offsetY);
  dirty = true;
});
canvas.addEventListener('pointermove', (ev) => {
  if (vm.status !== 'drawing') return;
  buffer.extend(ev.offsetX, ev.offsetY);
  dirty = true;
});
canvas.addEventListener('pointerup', (ev) => {
  if (vm.status !== 'drawing') return;
  buffer.end(ev.offsetX, ev.offsetY);
  submitDrawing();
});

wireControls(controls, {
  onPause() {
    client.control('pause');
    vm.setPaused(true);
    dirty = true;
  },
  onResume() {
    client.control('resume');
    vm.setPaused(false);
    dirty = true;
  },
  onPerturb(seed) {
    client.control('perturb', { seed });
  },
  onRestart() {
    client.close();
    vm.reset();
    buffer.points = [];
    dirty = true;
  },
});
controls.ghost.addEventListener('change', () => {
  dirty = true;
});

// render at display refresh; the newest frame wins, stale ones were already
// discarded by the view model
function paint(): void {
  requestAnimationFrame(paint);
  if (!dirty) return;
  dirty = false;
  if (vm.status === 'drawing') {
    drawTrail(ctx, buffer.points);
    banner.textContent = 'draw a closed curve';
  } else if (vm.frame) {
    drawCurve(ctx, vm.frame, controls.ghost.checked);
    banner.textContent = vm.banner || '…evolving';
    indexBadge.textContent = `index ${vm.pinnedIndex ?? '?'}`;
    iterBadge.textContent = `iteration ${vm.frame.iteration}`;
  }
  statusBadge.textContent = vm.status;
  statusBadge.dataset.status = vm.status;
  drawSparkline(sparkCtx, vm.energyHistory);
  setControlsEnabled(controls, vm.status === 'drawing', vm.status === 'running');
}

setControlsEnabled(controls, true, false);
requestAnimationFrame(paint);
