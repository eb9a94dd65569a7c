"""Closed polygonal curves: ingestion, turning angles, turning number, closure sums.

Curves are immersed closed polygons in the plane.  Self-intersections are
allowed throughout; the only forbidden configuration is a cusp (a vertex
turning angle at +-pi).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernel import march_equal_chords
from .errors import CuspDetected, DegenerateInput, NonIntegralTurning

# Angle-sum slack for snapping total turning to an integer multiple of 2*pi.
# Descent steps are small; a genuinely broken polygon is off by O(1).
ANGLE_SUM_TOL = 0.1

# |alpha| >= pi - CUSP_TOL counts as a cusp.
CUSP_TOL = 1e-9

MIN_VERTICES = 8


def _as_vertex_array(points) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of points, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class PolyCurve:
    """Closed polygon: vertex i connects to vertex (i+1) mod n.

    ``rest_lengths[i]`` is the target length of the edge from vertex i to
    vertex i+1, frozen at ingestion time and carried unchanged through a
    descent run.
    """

    vertices: np.ndarray
    rest_lengths: np.ndarray

    def __post_init__(self):
        v = _as_vertex_array(self.vertices)
        r = np.asarray(self.rest_lengths, dtype=np.float64)
        n = v.shape[0]
        if n < MIN_VERTICES:
            raise ValueError(f"need at least {MIN_VERTICES} vertices, got {n}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        if r.shape != (n,):
            raise ValueError(f"rest_lengths must have shape ({n},), got {r.shape}")
        if not np.all(np.isfinite(r)) or np.any(r <= 0.0):
            raise ValueError("rest_lengths must be finite and positive")
        if np.any(edge_lengths(v) <= 0.0):
            raise ValueError("consecutive vertices must be distinct")
        v.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "rest_lengths", r)

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    @property
    def edge_lengths(self) -> np.ndarray:
        return edge_lengths(self.vertices)

    @property
    def perimeter(self) -> float:
        return float(self.edge_lengths.sum())

    @property
    def mean_edge(self) -> float:
        return self.perimeter / self.n

    def with_vertices(self, vertices: np.ndarray) -> "PolyCurve":
        """Same rest lengths, new vertex positions."""
        return PolyCurve(np.array(vertices, dtype=np.float64), np.array(self.rest_lengths))

    def scaled(self, factor: float) -> "PolyCurve":
        """Uniform dilation about the origin; rest lengths scale along."""
        return PolyCurve(self.vertices * factor, self.rest_lengths * factor)


@dataclass(frozen=True)
class TurningProfile:
    """Signed exterior angle at every vertex, each in the open interval (-pi, pi)."""

    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=np.float64)
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @property
    def total(self) -> float:
        return float(self.angles.sum())


@dataclass(frozen=True)
class ClosureReport:
    """Edge-direction weighted sums; the discrete closure conditions."""

    cos_integral: float
    sin_integral: float
    gap_norm: float


def edge_lengths(vertices: np.ndarray) -> np.ndarray:
    """Length of edge i = |v[i+1] - v[i]|, cyclic."""
    d = np.roll(vertices, -1, axis=0) - vertices
    return np.hypot(d[:, 0], d[:, 1])


def turning_angles(vertices: np.ndarray) -> np.ndarray:
    """Signed angle at vertex i from edge (i-1 -> i) to edge (i -> i+1).

    Counterclockwise turning is positive.  Raises CuspDetected when any
    angle is within CUSP_TOL of +-pi.
    """
    e = np.roll(vertices, -1, axis=0) - vertices  # edge i: v[i] -> v[i+1]
    a = np.roll(e, 1, axis=0)  # edge entering vertex i
    cross = a[:, 0] * e[:, 1] - a[:, 1] * e[:, 0]
    dot = a[:, 0] * e[:, 0] + a[:, 1] * e[:, 1]
    ang = np.arctan2(cross, dot)
    worst = np.max(np.abs(ang))
    if worst >= np.pi - CUSP_TOL:
        i = int(np.argmax(np.abs(ang)))
        raise CuspDetected(f"vertex {i} turns by {ang[i]:.6f} rad (within {CUSP_TOL} of pi)")
    return ang


def turning_profile(curve: PolyCurve) -> TurningProfile:
    return TurningProfile(turning_angles(curve.vertices))


def whitney_index(curve: PolyCurve, angle_sum_tol: float = ANGLE_SUM_TOL) -> int:
    """Turning number: total turning of the tangent divided by 2*pi."""
    total = turning_profile(curve).total
    k = round(total / (2.0 * np.pi))
    if abs(total - 2.0 * np.pi * k) > angle_sum_tol:
        raise NonIntegralTurning(
            f"total turning {total:.6f} rad is {abs(total - 2 * np.pi * k):.4f} rad "
            f"away from {k}*2pi (tolerance {angle_sum_tol})"
        )
    return int(k)


def chain_closure(points: np.ndarray, closed: bool = True) -> ClosureReport:
    """Closure sums of a vertex chain.

    For ``closed`` the wrap-around edge is included and the gap is zero by
    construction; for an open chain the gap is the distance between the
    endpoints.
    """
    pts = _as_vertex_array(points)
    if closed:
        d = np.roll(pts, -1, axis=0) - pts
        gap = 0.0
    else:
        d = np.diff(pts, axis=0)
        gap = float(np.hypot(*(pts[-1] - pts[0])))
    # sum of cos(theta_i) * l_i over edges is just the sum of edge x-components
    return ClosureReport(
        cos_integral=float(d[:, 0].sum()),
        sin_integral=float(d[:, 1].sum()),
        gap_norm=gap,
    )


def closure_report(curve: PolyCurve) -> ClosureReport:
    return chain_closure(curve.vertices, closed=True)


def _clean_closed_polyline(points: np.ndarray) -> np.ndarray:
    """Drop consecutive duplicates and an explicit closing point."""
    pts = _as_vertex_array(points)
    if len(pts) >= 2 and np.allclose(pts[0], pts[-1], rtol=0.0, atol=0.0):
        pts = pts[:-1]
    keep = np.ones(len(pts), dtype=bool)
    if len(pts) > 1:
        d = np.hypot(*(np.diff(pts, axis=0).T))
        keep[1:] = d > 0.0
    pts = pts[keep]
    if len(pts) > 1 and np.all(pts[-1] == pts[0]):
        pts = pts[:-1]
    return pts


def _collinear(points: np.ndarray, tol: float) -> bool:
    c = points.mean(axis=0)
    q = points - c
    # smallest singular value measures the deviation from the best-fit line
    s = np.linalg.svd(q, compute_uv=False)
    scale = s[0] if s[0] > 0 else 1.0
    return s[-1] / scale <= tol


def resample_closed(points, n: int) -> np.ndarray:
    """Resample a closed polyline into n vertices with equal chord lengths.

    The first input point is kept as vertex 0 and every output vertex lies on
    the input polyline.  The common chord length is found by bisection so the
    n-th chord closes the polygon exactly.
    """
    pts = _clean_closed_polyline(points)
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 distinct points")
    closed = np.vstack([pts, pts[:1]])
    seglen = np.hypot(*(np.diff(closed, axis=0).T))
    perimeter = float(seglen.sum())
    if perimeter <= 0.0:
        raise DegenerateInput("input has zero perimeter")
    if _collinear(pts, 1e-12):
        raise DegenerateInput("input points are collinear; no closed immersed curve exists")

    # unroll one extra wrap so the final march can pass the seam
    unrolled = np.ascontiguousarray(np.vstack([closed, pts[1:], pts[:1]]))
    cum = np.concatenate([[0.0], np.cumsum(np.hypot(*(np.diff(unrolled, axis=0).T)))])

    def overshoot(lam: float) -> float:
        _, pos, _ = march_equal_chords(unrolled, cum, lam, n)
        return pos - perimeter

    hi = perimeter / n  # chords never exceed arcs, so this overshoots
    lo = hi
    for _ in range(60):
        lo *= 0.5
        if overshoot(lo) < 0.0:
            break
    else:
        raise DegenerateInput("equal-chord resampling failed to bracket a chord length")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if overshoot(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    out, _, ok = march_equal_chords(unrolled, cum, 0.5 * (lo + hi), n)
    if not ok:
        raise DegenerateInput("equal-chord resampling failed")
    return out


def ingest(points, n: int) -> PolyCurve:
    """Turn raw input points into a closed n-gon with equal edge lengths.

    The input is read as a closed polyline (last point joins back to the
    first).  Rest lengths are frozen to the achieved edge lengths.
    """
    if n < MIN_VERTICES:
        raise ValueError(f"n must be at least {MIN_VERTICES}, got {n}")
    vertices = resample_closed(points, n)
    rest = edge_lengths(vertices)
    if np.any(rest <= 0.0):
        raise DegenerateInput("resampling produced a degenerate edge")
    return PolyCurve(vertices, rest)
