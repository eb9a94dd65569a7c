/**
 * End-to-end scenarios against frozen transcripts of the real session
 * server (regenerate with `python frontend/tools/make_transcripts.py`).
 * The scripted drawing runs through DrawingBuffer and must produce exactly
 * the points the transcript sent; the recorded server messages then stream
 * through the ViewModel.
 */
import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { describe, expect, it } from 'vitest';

import { DrawingBuffer } from '../src/drawing.js';
import type { FrameMessage, Point, ServerMessage } from '../src/protocol.js';
import { ViewModel } from '../src/viewmodel.js';

interface Transcript {
  name: string;
  trail: Point[];
  closed: boolean;
  normalized: Point[];
  messages: ServerMessage[];
}

const fixtureDir = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

function load(name: string): Transcript {
  return JSON.parse(readFileSync(join(fixtureDir, `${name}.json`), 'utf-8')) as Transcript;
}

function drawTrail(trail: Point[]): DrawingBuffer {
  const buffer = new DrawingBuffer();
  const first = trail[0]!;
  buffer.begin(first[0], first[1]);
  for (const [x, y] of trail.slice(1)) buffer.extend(x, y);
  const last = trail[trail.length - 1]!;
  buffer.end(last[0], last[1]);
  return buffer;
}

function playback(transcript: Transcript): ViewModel {
  const vm = new ViewModel();
  for (const msg of transcript.messages) vm.apply(msg);
  return vm;
}

function frames(transcript: Transcript): FrameMessage[] {
  return transcript.messages.filter((m): m is FrameMessage => m.type === 'frame');
}

describe.each(['circle_blob', 'figure_eight', 'doubled_eight_perturb'])(
  'scenario %s',
  (name) => {
    const transcript = load(name);

    it('the scripted drawing normalizes to exactly what the server received', () => {
      const buffer = drawTrail(transcript.trail);
      expect(buffer.canSubmit()).toBe(true);
      const points = buffer.toNormalized();
      expect(points.length).toBe(transcript.normalized.length);
      for (let i = 0; i < points.length; i++) {
        expect(points[i]![0]).toBeCloseTo(transcript.normalized[i]![0], 12);
        expect(points[i]![1]).toBeCloseTo(transcript.normalized[i]![1], 12);
      }
    });

    it('frames arrive strictly ordered and keep one turning number', () => {
      const fs = frames(transcript);
      const iters = fs.map((f) => f.iteration);
      for (let i = 1; i < iters.length; i++) expect(iters[i]!).toBeGreaterThan(iters[i - 1]!);
      expect(new Set(fs.map((f) => f.whitneyIndex)).size).toBe(1);
    });

    it('the view model ends quiescent with an intact pinned index', () => {
      const vm = playback(transcript);
      expect(vm.status).toBe('quiescent');
      expect(vm.error).toBeNull();
      expect(vm.pinnedIndex).toBe(frames(transcript)[0]!.whitneyIndex);
    });
  },
);

describe('classification banners', () => {
  it('circle-ish blob reads Circle x1', () => {
    expect(playback(load('circle_blob')).banner).toBe('Circle ×1');
  });

  it('figure-eight drawing reads Figure eight', () => {
    expect(playback(load('figure_eight')).banner).toBe('Figure eight');
  });

  it('doubled eight unwinds to Figure eight', () => {
    expect(playback(load('doubled_eight_perturb')).banner).toBe('Figure eight');
  });
});

describe('pause/resume ordering (circle scenario records the controls)', () => {
  it('replay through the view model never rejects an in-order frame', () => {
    const transcript = load('circle_blob');
    const vm = new ViewModel();
    for (const msg of transcript.messages) {
      if (msg.type === 'frame') expect(vm.apply(msg)).toBe(true);
      else vm.apply(msg);
    }
  });
});

describe('perturb on a stalled doubled eight', () => {
  it('energy plateaus near the double cover, then falls to the single eight', () => {
    const transcript = load('doubled_eight_perturb');
    const energies = frames(transcript).map((f) => f.energyDiscrete);
    const plateau = energies[1]!;
    // early frames sit on the double-cover plateau (relative drift < 1%)
    expect(Math.abs(energies[2]! - plateau) / plateau).toBeLessThan(0.01);
    // after the perturb the descent escapes: the final energy is near a
    // quarter of the plateau (one traversal instead of two at half length)
    const final = energies[energies.length - 1]!;
    expect(final).toBeLessThan(0.3 * plateau);
  });
});
