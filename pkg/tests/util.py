"""Shared curve constructions for the tests."""
from __future__ import annotations

import numpy as np

from elastica.geometry import PolyCurve, edge_lengths, ingest

TWO_PI = 2.0 * np.pi


def parametric(fn, samples: int = 4000, tmax: float = TWO_PI) -> np.ndarray:
    t = np.linspace(0.0, tmax, samples, endpoint=False)
    return np.column_stack(fn(t))


def ellipse_points(ratio: float = 2.0) -> np.ndarray:
    return parametric(lambda t: (ratio * np.cos(t), np.sin(t)))


def regular_polygon(n: int, k: int = 1, radius: float = 1.0) -> PolyCurve:
    theta = TWO_PI * k * np.arange(n) / n
    v = radius * np.column_stack([np.cos(theta), np.sin(theta)])
    return PolyCurve(v, edge_lengths(v))


def normalized(points: np.ndarray, n: int) -> PolyCurve:
    """Ingest and rescale to perimeter 2*pi (the calibration scale)."""
    curve = ingest(points, n)
    v = curve.vertices * (TWO_PI / curve.perimeter)
    return PolyCurve(v, edge_lengths(v))


def random_nondegenerate_polygon(rng: np.random.Generator, n: int = 40) -> PolyCurve:
    """Smooth random blob: a circle with bounded random Fourier wobble."""
    theta = np.linspace(0.0, TWO_PI, n, endpoint=False)
    r = np.ones(n)
    for k in range(2, 6):
        r += 0.08 * rng.uniform(-1, 1) * np.cos(k * theta + rng.uniform(0, TWO_PI))
    v = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    return PolyCurve(v, edge_lengths(v))
