"""Sampled critical curves: k-fold circles, the figure-eight, and its
energy-reducing four-lobe deformation.

All figure-eight geometry is produced in the frame where the tangent-angle
pendulum starts from rest at t=0: the curve's self-crossing (node) sits at
the origin, the two lobes point up and down, and each lobe is mirror
symmetric across the y-axis.  The node tangents make angles of +-alpha0 with
the x-axis.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from ._kernel import rk4_pendulum, rk4_pendulum_from
from .errors import TangencyNotFound
from .geometry import PolyCurve, edge_lengths, resample_closed, turning_angles
from .pendulum import _substeps, find_figure_eight_amplitude, pendulum_period

# Gap tolerance when closing a sampled curve, relative to its length.
CLOSE_TOL = 1e-6

# Dense step used when building deformation polylines.
_DENSE_STEP = 2e-4


@dataclass(frozen=True)
class CriticalCurveSample:
    """A discretized critical curve with its analytic curvature along arclength."""

    kind: str  # 'circle' | 'figure-eight'
    k: int  # turning number
    traversals: int
    curve: PolyCurve
    arc_length_curvature: np.ndarray

    def __post_init__(self):
        kap = np.asarray(self.arc_length_curvature, dtype=np.float64)
        kap.setflags(write=False)
        object.__setattr__(self, "arc_length_curvature", kap)


def sample_circle(k: int, n: int, total_length: float = 2.0 * math.pi) -> CriticalCurveSample:
    """Regular n-gon traversed |k| times, orientation from the sign of k."""
    if k == 0:
        raise ValueError("k must be a nonzero integer")
    if n < 8:
        raise ValueError(f"n must be at least 8, got {n}")
    radius = total_length / (2.0 * n * math.sin(math.pi * abs(k) / n))
    theta = 2.0 * math.pi * k * np.arange(n) / n
    vertices = radius * np.column_stack([np.cos(theta), np.sin(theta)])
    curve = PolyCurve(vertices, edge_lengths(vertices))
    kappa = np.full(n, 2.0 * math.pi * k / total_length)
    return CriticalCurveSample("circle", int(k), abs(int(k)), curve, kappa)


def _eight_period_samples(n_per: int):
    """One pendulum period sampled at n_per+1 uniform times, with positions."""
    a0 = find_figure_eight_amplitude()
    period = pendulum_period(a0)
    alpha, alpha_dot, xs, ys = rk4_pendulum(a0, period, n_per, _substeps(period, n_per))
    return a0, period, alpha, alpha_dot, xs, ys


def sample_figure_eight(
    n: int, traversals: int = 1, total_length: float = 2.0 * math.pi
) -> CriticalCurveSample:
    """Closed polygon tracing the figure-eight ``traversals`` times.

    Vertices sit at equal arclength along the analytic curve; the residual
    endpoint gap (integrator noise, well below CLOSE_TOL of the length) is
    distributed linearly and the result rescaled to ``total_length``.
    """
    m = int(traversals)
    if m < 1:
        raise ValueError("traversals must be >= 1")
    if n < 64 or n % (2 * m) != 0:
        raise ValueError(f"n must be >= 64 and divisible by {2 * m}, got {n}")
    n_per = n // m
    _, period, _, alpha_dot, xs, ys = _eight_period_samples(n_per)
    base = np.column_stack([xs[:-1], ys[:-1]])
    delta = np.array([xs[-1], ys[-1]])
    natural_length = m * period
    gap = m * float(np.hypot(*delta))
    if gap > CLOSE_TOL * natural_length:
        raise AssertionError(f"figure-eight gap {gap:.3e} exceeds {CLOSE_TOL} of length")
    vertices = np.vstack([base + r * delta for r in range(m)])
    vertices = vertices - np.outer(np.arange(n) / n, m * delta)
    scale = total_length / float(edge_lengths(vertices).sum())
    vertices = vertices * scale
    curve = PolyCurve(vertices, edge_lengths(vertices))
    kappa = np.tile(alpha_dot[:-1], m) * (natural_length / total_length)
    return CriticalCurveSample("figure-eight", 0, m, curve, kappa)


@functools.cache
def eight_angle_template(n: int) -> np.ndarray:
    """Turning-angle profile of the single figure-eight at n vertices."""
    sample = sample_figure_eight(n, 1)
    return turning_angles(sample.curve.vertices)


@functools.cache
def _lobe_geometry():
    """(amplitude, period, time and height of the first x = -w extremum probe grid)."""
    a0 = find_figure_eight_amplitude()
    period = pendulum_period(a0)
    n_dense = max(4096, int(math.ceil(period / _DENSE_STEP)))
    alpha, alpha_dot, xs, ys = rk4_pendulum(a0, period, n_dense, _substeps(period, n_dense))
    half = n_dense // 2
    width = 2.0 * float(np.abs(xs[: half + 1]).max())
    return a0, period, width


def lobe_width() -> float:
    """Full x-extent of one figure-eight lobe at the unit pendulum scale."""
    return _lobe_geometry()[2]


def _state_after(duration: float):
    """(alpha, alpha_dot, x, y) after integrating from rest at the closure amplitude."""
    a0, _, _ = _lobe_geometry()
    steps = max(16, int(math.ceil(duration / _DENSE_STEP)))
    alpha, alpha_dot, xs, ys = rk4_pendulum(a0, duration, steps, 1)
    return float(alpha[-1]), float(alpha_dot[-1]), float(xs[-1]), float(ys[-1])


def construct_gamma_epsilon(epsilon: float, n: int) -> PolyCurve:
    """Four-lobe deformation of the doubly traversed figure-eight.

    One lobe keeps its node at the origin but is trimmed at the tangency
    points A = (-epsilon/2, y_A) and its mirror image; two opposite lobes are
    translated to nodes O2 = 2A and its mirror O4; straight segments run from
    O2 and O4 along the node tangent lines to their crossing O3 on the
    y-axis, where the fourth lobe sits.  All six junctions match tangent
    directions exactly, the turning number is 0, and the bending energy is
    strictly below the doubly traversed eight's at equal length.

    Built at the unit pendulum scale (lobe height about 1.8).
    """
    epsilon = float(epsilon)
    a0, period, width = _lobe_geometry()
    if not 0.0 < epsilon < width / 4.0:
        raise TangencyNotFound(
            f"epsilon must lie in (0, {width / 4.0:.4f}) at the unit scale, got {epsilon}"
        )
    if n < 8:
        raise ValueError(f"n must be at least 8, got {n}")

    # x(t) decreases from 0 exactly while alpha(t) > pi/2; find that branch end
    lo, hi = 0.0, period / 4.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _state_after(mid)[0] > 0.5 * math.pi:
            lo = mid
        else:
            hi = mid
    t_descend = 0.5 * (lo + hi)

    # time t_A with x(t_A) = -epsilon/2 on that monotone branch
    target = -0.5 * epsilon
    lo, hi = 0.0, t_descend
    if _state_after(hi)[2] > target:
        raise TangencyNotFound("tangency point not reached on the descending branch")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _state_after(mid)[2] > target:
            lo = mid
        else:
            hi = mid
    t_a = 0.5 * (lo + hi)

    # A is the curve point at t_A; the opposite lobe is its point reflection
    # through A, and the straight segments run along the exact node tangent
    # lines (slope +-|tan alpha0|) to their crossing on the y-axis.
    alpha_a, alpha_dot_a, x_a, y_a = _state_after(t_a)
    slope = abs(math.tan(a0))
    a_pt = np.array([x_a, y_a])
    o2 = 2.0 * a_pt
    o3 = np.array([0.0, 2.0 * y_a + slope * abs(o2[0])])
    o4 = np.array([-o2[0], o2[1]])

    # dense polyline much finer than the target edges, so resampled vertices
    # carry no visible chord-sag error in their turning angles
    dense_step = min(_DENSE_STEP, 2.0 * period / (64.0 * n))

    def integrate(alpha_init, alpha_dot_init, duration, offset):
        steps = max(16, int(math.ceil(duration / dense_step)))
        _, _, xs, ys = rk4_pendulum_from(alpha_init, alpha_dot_init, duration, steps, 1)
        return np.column_stack([xs, ys]) + offset

    lobe3 = integrate(a0, 0.0, 0.5 * period, o3)  # full upper lobe at O3
    lobe2 = integrate(-a0, 0.0, 0.5 * period - t_a, o2)  # lower lobe, O2 around to A
    lobe1 = integrate(alpha_a, alpha_dot_a, 0.5 * period - 2.0 * t_a, a_pt)  # A over the top to A'
    lobe2m = (lobe2 * np.array([-1.0, 1.0]))[::-1]  # mirror image, runs A' -> O4

    path = np.vstack(
        [
            lobe3,
            o2[None, :],
            lobe2,
            lobe1,
            lobe2m,
            o4[None, :],
        ]
    )
    vertices = resample_closed(path, n)
    return PolyCurve(vertices, edge_lengths(vertices))
