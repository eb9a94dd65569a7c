#!/usr/bin/env python3
"""Descend the 12-curve seed corpus and print one line per run.

Usage: python scripts/run_corpus.py [--n 100]
"""
import argparse
import math
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from corpus import CORPUS  # noqa: E402

from elastica.descent import DescentParams, run  # noqa: E402
from elastica.geometry import PolyCurve, edge_lengths, ingest  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=100)
    args = parser.parse_args()

    params = DescentParams(n=args.n)
    for name, (expected_k, points) in CORPUS.items():
        curve = ingest(points, args.n)
        v = curve.vertices * (2.0 * math.pi / curve.perimeter)
        curve = PolyCurve(v, edge_lengths(v))
        start = time.perf_counter()
        summary, verdict = run(curve, params)
        wall = time.perf_counter() - start
        final_e = summary.energies[-1] if summary.iterations else float("nan")
        print(
            f"{name:22s} k={expected_k:+d} -> {verdict.label:12s} "
            f"iters={summary.iterations:8d} wall={wall:6.1f}s "
            f"U={final_e:.6f} drift={summary.length_drift:.2%}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
