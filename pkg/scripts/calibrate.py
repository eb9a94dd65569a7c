#!/usr/bin/env python3
"""Calibration procedure for the default force coefficients.

Benchmark: axis-ratio-2 ellipse, n = 100 vertices, perimeter normalized to
2*pi.  The procedure scans c1 in half-octaves for the largest value with no
per-step energy increase over the probe window, then picks c2 as the
smallest half-octave keeping worst-case length drift under the budget.
The shipped defaults round the winners down.

Usage: python scripts/calibrate.py [--probe-steps 300000]
"""
import argparse
import math
import sys

import numpy as np

from elastica.descent import CALIBRATION_MEAN_EDGE, DescentEngine, DescentParams
from elastica.errors import ElasticaError
from elastica.geometry import PolyCurve, edge_lengths, ingest


def benchmark_curve(n=100):
    t = np.linspace(0.0, 2.0 * math.pi, 4000, endpoint=False)
    pts = np.column_stack([2.0 * np.cos(t), np.sin(t)])
    curve = ingest(pts, n)
    v = curve.vertices * (2.0 * math.pi / curve.perimeter)
    return PolyCurve(v, edge_lengths(v))


def probe(curve, c1, c2, steps):
    params = DescentParams(c1=c1, c2=c2, max_iters=steps, quiescence_tol=1e-12)
    engine = DescentEngine(curve, params)
    try:
        engine.advance(steps)
    except ElasticaError as err:
        return dict(ok=False, reason=type(err).__name__)
    s = engine.summary()
    e = s.energies
    rel_inc = float((np.diff(e) / e[:-1]).max()) if len(e) > 1 else 0.0
    return dict(ok=True, rel_inc=rel_inc, drift=s.length_drift, energy=float(e[-1]))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--probe-steps", type=int, default=300_000)
    args = parser.parse_args()

    curve = benchmark_curve()
    le2 = CALIBRATION_MEAN_EDGE**2

    print("== c1 scan (c2 = 4.0), largest with no per-step energy increase ==")
    best_c1 = None
    for mult in (0.05, 0.1, 0.15, 0.2, 0.25, 0.35, 0.5):
        c1 = mult * le2
        r = probe(curve, c1, 4.0, args.probe_steps)
        if not r["ok"]:
            print(f"  c1 = {mult:>5} * mean_edge^2 = {c1:.3e}: blew up ({r['reason']})")
            continue
        flag = "monotone" if r["rel_inc"] <= 0.0 else f"increases (max rel {r['rel_inc']:.1e})"
        print(f"  c1 = {mult:>5} * mean_edge^2 = {c1:.3e}: {flag}, drift {r['drift']:.2%}")
        if r["rel_inc"] <= 0.0:
            best_c1 = c1
    print(f"  -> largest monotone c1: {best_c1:.3e}")

    print("== c2 scan at the chosen c1, drift budget 2% over the probe ==")
    for c2 in (1.0, 2.0, 4.0, 6.0):
        r = probe(curve, best_c1, c2, args.probe_steps)
        status = f"drift {r['drift']:.2%}" if r["ok"] else f"blew up ({r['reason']})"
        print(f"  c2 = {c2}: {status}")

    print(f"shipped defaults: c1 = {DescentParams().c1}, c2 = {DescentParams().c2}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
