"""Discrete bending energy of a closed polygon and its per-vertex forces.

The energy of a curve with turning angles alpha_i is

    Uhat = sum_i tan^2(alpha_i / 2)

which is dimensionless and invariant under similarity transforms of the
vertex set.  The straightening force is the negative gradient of Uhat scaled
by c1, estimated by central finite differences; the resilience force is an
edge-spring force pulling every edge back to its rest length, scaled by c2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .geometry import PolyCurve, edge_lengths, turning_angles

if TYPE_CHECKING:
    from .descent import DescentParams


@dataclass(frozen=True)
class ForcePair:
    """Both per-vertex force fields of one descent step."""

    straightening: np.ndarray
    resilience: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.straightening, dtype=np.float64)
        r = np.asarray(self.resilience, dtype=np.float64)
        if s.shape != r.shape or s.ndim != 2 or s.shape[1] != 2:
            raise ValueError(f"force fields must share shape (n, 2), got {s.shape} and {r.shape}")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(r))):
            raise ValueError("force components must be finite")
        s.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "straightening", s)
        object.__setattr__(self, "resilience", r)

    @property
    def total(self) -> np.ndarray:
        return self.straightening + self.resilience


@dataclass(frozen=True)
class EnergyBreakdown:
    """Discrete energy plus a diagnostic estimate of the continuous integral.

    ``continuous_estimate`` approximates the integral of squared curvature,
    sum alpha_i^2 / l_i with l_i the mean of the edges adjacent to vertex i.
    It has units 1/length and exists purely for diagnostics.
    """

    discrete: float
    continuous_estimate: float
    per_vertex: np.ndarray

    def __post_init__(self):
        pv = np.asarray(self.per_vertex, dtype=np.float64)
        pv.setflags(write=False)
        object.__setattr__(self, "per_vertex", pv)


def discrete_energy(curve: PolyCurve) -> EnergyBreakdown:
    alpha = turning_angles(curve.vertices)
    per_vertex = np.tan(0.5 * alpha) ** 2
    el = curve.edge_lengths
    # vertex i sits between edge i-1 and edge i
    l_i = 0.5 * (np.roll(el, 1) + el)
    return EnergyBreakdown(
        discrete=float(per_vertex.sum()),
        continuous_estimate=float((alpha**2 / l_i).sum()),
        per_vertex=per_vertex,
    )


def _perp(v: np.ndarray) -> np.ndarray:
    return np.stack([-v[:, 1], v[:, 0]], axis=1)


def exact_gradient(curve: PolyCurve) -> np.ndarray:
    """Closed-form gradient of the discrete energy with respect to the vertices.

    Vertex j enters exactly the three angles alpha_{j-1}, alpha_j, alpha_{j+1};
    the chain rule through them gives, with a_i and b_i the edges entering and
    leaving vertex i,

        dalpha_i/dv_{i-1} =  perp(a_i)/|a_i|^2
        dalpha_i/dv_i     = -perp(a_i)/|a_i|^2 - perp(b_i)/|b_i|^2
        dalpha_i/dv_{i+1} =  perp(b_i)/|b_i|^2
    """
    v = curve.vertices
    alpha = turning_angles(v)
    e = np.roll(v, -1, axis=0) - v  # edge i: v[i] -> v[i+1]
    el2 = (e**2).sum(axis=1)
    pe = _perp(e) / el2[:, None]
    t = np.tan(0.5 * alpha)
    w = (t * (1.0 + t**2))[:, None]  # d/dalpha tan^2(alpha/2)

    # contribution of angle i to its three vertices, accumulated by rolling
    a_term = w * np.roll(pe, 1, axis=0)  # perp(a_i)/|a_i|^2, a_i = e_{i-1}
    b_term = w * pe
    grad = np.roll(a_term, -1, axis=0) - a_term - b_term + np.roll(b_term, 1, axis=0)
    return grad


def local_energy_triples(v: np.ndarray) -> np.ndarray:
    """tan^2 sums over the three angles adjacent to each vertex (used by tests)."""
    t2 = np.tan(0.5 * turning_angles(v)) ** 2
    return np.roll(t2, 1, axis=0) + t2 + np.roll(t2, -1, axis=0)


def fd_gradient(v: np.ndarray, h: float) -> np.ndarray:
    """Central finite-difference gradient of the discrete energy.

    Moving vertex i changes only angles i-1, i, i+1, so the difference of the
    full energy equals the difference of those three tan^2 terms; all other
    terms cancel exactly.  This keeps the estimate free of cancellation noise
    from the unaffected part of the sum.
    """
    n = v.shape[0]
    idx = np.arange(n)
    im2, im1, ip1, ip2 = (np.roll(idx, k) for k in (2, 1, -1, -2))

    def triple(px, py):
        # angles at vertices i-1, i, i+1 of the curve with vertex i at (px, py)
        def ang(ax, ay, bx, by):
            return np.arctan2(ax * by - ay * bx, ax * bx + ay * by)

        a1 = ang(v[im1, 0] - v[im2, 0], v[im1, 1] - v[im2, 1], px - v[im1, 0], py - v[im1, 1])
        a2 = ang(px - v[im1, 0], py - v[im1, 1], v[ip1, 0] - px, v[ip1, 1] - py)
        a3 = ang(v[ip1, 0] - px, v[ip1, 1] - py, v[ip2, 0] - v[ip1, 0], v[ip2, 1] - v[ip1, 1])
        return np.tan(0.5 * a1) ** 2 + np.tan(0.5 * a2) ** 2 + np.tan(0.5 * a3) ** 2

    x, y = v[:, 0], v[:, 1]
    gx = (triple(x + h, y) - triple(x - h, y)) / (2.0 * h)
    gy = (triple(x, y + h) - triple(x, y - h)) / (2.0 * h)
    return np.stack([gx, gy], axis=1)


def straightening_force(curve: PolyCurve, params: "DescentParams") -> np.ndarray:
    """-c1 times the finite-difference gradient of the discrete energy."""
    turning_angles(curve.vertices)  # cusp check
    h = params.fd_step * curve.mean_edge
    if h <= 0.0:
        raise ValueError("fd_step must be positive")
    return -params.c1 * fd_gradient(curve.vertices, h)


def resilience_force(curve: PolyCurve, params: "DescentParams") -> np.ndarray:
    """Edge springs: c2*(v_{i+1}-v_i)(|v_{i+1}-v_i|-d_i) + c2*(v_{i-1}-v_i)(|v_i-v_{i-1}|-d_{i-1})."""
    v = curve.vertices
    d = curve.rest_lengths
    fwd = np.roll(v, -1, axis=0) - v
    fwd_len = np.hypot(fwd[:, 0], fwd[:, 1])
    back = np.roll(v, 1, axis=0) - v
    back_len = np.hypot(back[:, 0], back[:, 1])
    r = fwd * (fwd_len - d)[:, None] + back * (back_len - np.roll(d, 1))[:, None]
    return params.c2 * r


def force_pair(curve: PolyCurve, params: "DescentParams") -> ForcePair:
    """Both step forces; vertex i moves by their sum."""
    return ForcePair(
        straightening=straightening_force(curve, params),
        resilience=resilience_force(curve, params),
    )
