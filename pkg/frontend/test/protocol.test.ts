import { describe, expect, it } from 'vitest';

import { controlMessage, parseServerMessage, startMessage } from '../src/protocol.js';

describe('parseServerMessage', () => {
  it('accepts well-formed frames', () => {
    const msg = parseServerMessage(
      JSON.stringify({
        type: 'frame',
        iteration: 10,
        vertices: [[0, 0]],
        energyDiscrete: 0.5,
        whitneyIndex: 1,
        maxDisplacement: 1e-5,
        classification: null,
      }),
    );
    expect(msg?.type).toBe('frame');
  });

  it('accepts session, done and error messages', () => {
    expect(parseServerMessage('{"type":"session","sessionId":"x"}')?.type).toBe('session');
    expect(
      parseServerMessage('{"type":"done","iterations":5,"classification":null}')?.type,
    ).toBe('done');
    expect(parseServerMessage('{"type":"error","code":"CuspDetected","message":"m"}')?.type).toBe(
      'error',
    );
  });

  it('rejects malformed payloads', () => {
    expect(parseServerMessage('not json')).toBeNull();
    expect(parseServerMessage('42')).toBeNull();
    expect(parseServerMessage('{"type":"frame"}')).toBeNull();
    expect(parseServerMessage('{"type":"mystery"}')).toBeNull();
    expect(parseServerMessage('{"type":"session"}')).toBeNull();
  });
});

describe('client message encoding', () => {
  it('start message carries points and params', () => {
    const raw = startMessage(
      [
        [0, 0],
        [1, 0],
        [0, 1],
      ],
      { n: 100 },
    );
    const parsed = JSON.parse(raw);
    expect(parsed.type).toBe('start');
    expect(parsed.points.length).toBe(3);
    expect(parsed.params.n).toBe(100);
  });

  it('control message merges extras', () => {
    const parsed = JSON.parse(controlMessage('perturb', { seed: 7 }));
    expect(parsed).toEqual({ type: 'control', action: 'perturb', seed: 7 });
  });
});
