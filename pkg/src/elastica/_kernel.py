"""Hot numerical kernels, jitted with numba when available.

The descent step and the pendulum integrator live here.  Both have pure
numpy/python fallbacks with identical arithmetic so the package still works
(slower) without a compiler; within one installation results are
deterministic either way.
"""
from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on minimal installs
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def deco(fn):
            return fn

        return deco


# Step status flags
OK = 0
CUSP = 1
NONFINITE = 2

# Chunk outcome flags
CHUNK_BUDGET = 0
CHUNK_QUIESCED = 1
CHUNK_CUSP = 2
CHUNK_NONFINITE = 3
CHUNK_INDEX = 4


@njit(cache=True)
def descent_step(v, rest, c1, c2, fd_step, scale, out):
    """One synchronous descent step.

    Every vertex is shifted by scale*(s_i + r_i) computed from the incoming
    positions.  Returns (uhat, angle_sum, max_disp_rel, mean_edge, status)
    for the incoming curve; ``out`` receives the new positions.

    The finite difference of the total energy with respect to one vertex
    reduces to the difference of the three tan^2 terms that vertex touches;
    all remaining terms cancel exactly.
    """
    n = v.shape[0]
    mean_edge = 0.0
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        mean_edge += math.hypot(v[j, 0] - v[i, 0], v[j, 1] - v[i, 1])
    mean_edge /= n
    h = fd_step * mean_edge

    uhat = 0.0
    angle_sum = 0.0
    max_disp = 0.0
    status = OK
    for i in range(n):
        im2 = (i - 2) % n
        im1 = (i - 1) % n
        ip1 = (i + 1) % n
        ip2 = (i + 2) % n

        ax = v[i, 0] - v[im1, 0]
        ay = v[i, 1] - v[im1, 1]
        bx = v[ip1, 0] - v[i, 0]
        by = v[ip1, 1] - v[i, 1]
        alpha = math.atan2(ax * by - ay * bx, ax * bx + ay * by)
        if abs(alpha) >= math.pi - 1e-9:
            status = CUSP
        t = math.tan(0.5 * alpha)
        uhat += t * t
        angle_sum += alpha

        gx = 0.0
        gy = 0.0
        for d in range(2):
            diff = 0.0
            for sgn in (1.0, -1.0):
                px = v[i, 0] + (h * sgn if d == 0 else 0.0)
                py = v[i, 1] + (h * sgn if d == 1 else 0.0)
                a1 = math.atan2(
                    (v[im1, 0] - v[im2, 0]) * (py - v[im1, 1])
                    - (v[im1, 1] - v[im2, 1]) * (px - v[im1, 0]),
                    (v[im1, 0] - v[im2, 0]) * (px - v[im1, 0])
                    + (v[im1, 1] - v[im2, 1]) * (py - v[im1, 1]),
                )
                a2 = math.atan2(
                    (px - v[im1, 0]) * (v[ip1, 1] - py) - (py - v[im1, 1]) * (v[ip1, 0] - px),
                    (px - v[im1, 0]) * (v[ip1, 0] - px) + (py - v[im1, 1]) * (v[ip1, 1] - py),
                )
                a3 = math.atan2(
                    (v[ip1, 0] - px) * (v[ip2, 1] - v[ip1, 1])
                    - (v[ip1, 1] - py) * (v[ip2, 0] - v[ip1, 0]),
                    (v[ip1, 0] - px) * (v[ip2, 0] - v[ip1, 0])
                    + (v[ip1, 1] - py) * (v[ip2, 1] - v[ip1, 1]),
                )
                t1 = math.tan(0.5 * a1)
                t2 = math.tan(0.5 * a2)
                t3 = math.tan(0.5 * a3)
                e = t1 * t1 + t2 * t2 + t3 * t3
                diff += sgn * e
            if d == 0:
                gx = diff / (2.0 * h)
            else:
                gy = diff / (2.0 * h)

        # spring force toward rest lengths; rest[i] is the edge i -> i+1
        ex = v[ip1, 0] - v[i, 0]
        ey = v[ip1, 1] - v[i, 1]
        el = math.hypot(ex, ey)
        rx = c2 * ex * (el - rest[i])
        ry = c2 * ey * (el - rest[i])
        ex = v[im1, 0] - v[i, 0]
        ey = v[im1, 1] - v[i, 1]
        el = math.hypot(ex, ey)
        rx += c2 * ex * (el - rest[im1])
        ry += c2 * ey * (el - rest[im1])

        dx = scale * (rx - c1 * gx)
        dy = scale * (ry - c1 * gy)
        out[i, 0] = v[i, 0] + dx
        out[i, 1] = v[i, 1] + dy
        disp = math.hypot(dx, dy)
        if disp > max_disp:
            max_disp = disp
        if not (math.isfinite(dx) and math.isfinite(dy)):
            status = NONFINITE

    return uhat, angle_sum, max_disp / mean_edge, mean_edge, status


@njit(cache=True)
def run_chunk(
    v,
    prev,
    scratch,
    rest,
    c1,
    c2,
    fd_step,
    scale,
    initial_index,
    quiescence_tol,
    quiet_in,
    quiescence_runs,
    energies,
    disps,
    perims,
    start_iter,
    max_steps,
):
    """Run up to max_steps descent iterations without returning to Python.

    ``v`` is updated in place; ``prev`` receives the state before the last
    completed step (the last good state when a step fails).  Records go into
    the preallocated trajectory arrays at absolute iteration indices.
    Returns (steps_taken, quiet_count, outcome flag).
    """
    n = v.shape[0]
    quiet = quiet_in
    taken = 0
    two_pi = 2.0 * math.pi
    while taken < max_steps:
        uhat, angle_sum, max_disp, mean_edge, status = descent_step(
            v, rest, c1, c2, fd_step, scale, scratch
        )
        if status == CUSP:
            return taken, quiet, CHUNK_CUSP
        if not math.isfinite(uhat):
            return taken, quiet, CHUNK_NONFINITE
        if int(math.floor(angle_sum / two_pi + 0.5)) != initial_index:
            return taken, quiet, CHUNK_INDEX
        if status == NONFINITE:
            # incoming state is fine; the produced step is not
            for i in range(n):
                prev[i, 0] = v[i, 0]
                prev[i, 1] = v[i, 1]
            return taken, quiet, CHUNK_NONFINITE
        it = start_iter + taken
        energies[it] = uhat
        disps[it] = max_disp
        perims[it] = mean_edge * n
        for i in range(n):
            prev[i, 0] = v[i, 0]
            prev[i, 1] = v[i, 1]
            v[i, 0] = scratch[i, 0]
            v[i, 1] = scratch[i, 1]
        taken += 1
        if max_disp < quiescence_tol:
            quiet += 1
            if quiet >= quiescence_runs:
                return taken, quiet, CHUNK_QUIESCED
        else:
            quiet = 0
    return taken, quiet, CHUNK_BUDGET


@njit(cache=True)
def march_equal_chords(pts, cum, lam, n):
    """Place n points chord-distance lam apart along an unrolled closed polyline.

    ``pts`` holds the polyline continued one full wrap past the seam and
    ``cum`` its cumulative arc positions.  Returns (vertices, arc position
    after the n-th march, ok); ok is False when the march ran off the end.

    While scanning forward the walk position stays inside the circle of
    radius lam around the last placed point, so the first segment whose far
    endpoint leaves the circle must contain the landing; a quadratic solve
    finds it, with a bisection fallback for grazing (double-root) cases such
    as landings exactly on corners.
    """
    out = np.empty((n, 2))
    out[0, 0] = pts[0, 0]
    out[0, 1] = pts[0, 1]
    cx = pts[0, 0]
    cy = pts[0, 1]
    seg = 0
    tcur = 0.0  # parameter of the walk position within segment seg
    nseg = pts.shape[0] - 1
    lam2 = lam * lam
    for j in range(1, n + 1):
        placed = False
        while seg < nseg:
            ax = pts[seg, 0]
            ay = pts[seg, 1]
            dx = pts[seg + 1, 0] - ax
            dy = pts[seg + 1, 1] - ay
            seglen2 = dx * dx + dy * dy
            if seglen2 <= 0.0:
                seg += 1
                tcur = 0.0
                continue
            fx = ax - cx
            fy = ay - cy
            a = seglen2
            b = 2.0 * (fx * dx + fy * dy)
            c = fx * fx + fy * fy - lam2
            disc = b * b - 4.0 * a * c
            t = -1.0
            if disc >= 0.0:
                sq = math.sqrt(disc)
                t1 = (-b - sq) / (2.0 * a)
                t2 = (-b + sq) / (2.0 * a)
                if t1 > tcur + 1e-15 and t1 <= 1.0:
                    t = t1
                elif t2 > tcur + 1e-15 and t2 <= 1.0:
                    t = t2
            if t < 0.0:
                gx = pts[seg + 1, 0] - cx
                gy = pts[seg + 1, 1] - cy
                if gx * gx + gy * gy >= lam2:
                    # crossing exists but the quadratic grazed; bisect on distance
                    lo = tcur
                    hi = 1.0
                    for _ in range(60):
                        mid = 0.5 * (lo + hi)
                        mx = ax + mid * dx - cx
                        my = ay + mid * dy - cy
                        if mx * mx + my * my < lam2:
                            lo = mid
                        else:
                            hi = mid
                    t = hi
            if t >= 0.0:
                # snap landings onto polyline vertices; grazing a vertex
                # within rounding noise would otherwise amplify corner cuts
                if (1.0 - t) * math.sqrt(seglen2) <= 1e-12 * lam:
                    t = 1.0
                cx = ax + t * dx
                cy = ay + t * dy
                tcur = t
                placed = True
                break
            seg += 1
            tcur = 0.0
        if not placed:
            return out, np.inf, False
        if j < n:
            out[j, 0] = cx
            out[j, 1] = cy
    pos = cum[seg] + tcur * math.sqrt(
        (pts[seg + 1, 0] - pts[seg, 0]) ** 2 + (pts[seg + 1, 1] - pts[seg, 1]) ** 2
    )
    return out, pos, True


@njit(cache=True)
def rk4_pendulum(alpha0, total_time, n_out, substeps):
    """Classical fixed-step RK4 for alpha'' = -sin(alpha) from (alpha0, 0).

    Returns (alpha, alpha_dot, x, y) sampled at n_out+1 uniform times in
    [0, total_time]; x and y integrate the unit tangent (cos alpha, sin alpha)
    alongside, so (x, y) traces the curve whose tangent angle is alpha.
    """
    alpha = np.empty(n_out + 1)
    alpha_dot = np.empty(n_out + 1)
    xs = np.empty(n_out + 1)
    ys = np.empty(n_out + 1)
    a = alpha0
    w = 0.0
    x = 0.0
    y = 0.0
    alpha[0] = a
    alpha_dot[0] = w
    xs[0] = x
    ys[0] = y
    h = total_time / (n_out * substeps)
    for i in range(n_out):
        for _ in range(substeps):
            k1a = w
            k1w = -math.sin(a)
            k1x = math.cos(a)
            k1y = math.sin(a)

            a2 = a + 0.5 * h * k1a
            k2a = w + 0.5 * h * k1w
            k2w = -math.sin(a2)
            k2x = math.cos(a2)
            k2y = math.sin(a2)

            a3 = a + 0.5 * h * k2a
            k3a = w + 0.5 * h * k2w
            k3w = -math.sin(a3)
            k3x = math.cos(a3)
            k3y = math.sin(a3)

            a4 = a + h * k3a
            k4a = w + h * k3w
            k4w = -math.sin(a4)
            k4x = math.cos(a4)
            k4y = math.sin(a4)

            x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            a += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
            w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        alpha[i + 1] = a
        alpha_dot[i + 1] = w
        xs[i + 1] = x
        ys[i + 1] = y
    return alpha, alpha_dot, xs, ys


@njit(cache=True)
def rk4_pendulum_from(alpha_init, alpha_dot_init, total_time, n_out, substeps):
    """Same integrator started from an arbitrary pendulum state."""
    alpha = np.empty(n_out + 1)
    alpha_dot = np.empty(n_out + 1)
    xs = np.empty(n_out + 1)
    ys = np.empty(n_out + 1)
    a = alpha_init
    w = alpha_dot_init
    x = 0.0
    y = 0.0
    alpha[0] = a
    alpha_dot[0] = w
    xs[0] = x
    ys[0] = y
    h = total_time / (n_out * substeps)
    for i in range(n_out):
        for _ in range(substeps):
            k1a = w
            k1w = -math.sin(a)
            k1x = math.cos(a)
            k1y = math.sin(a)

            a2 = a + 0.5 * h * k1a
            k2a = w + 0.5 * h * k1w
            k2w = -math.sin(a2)
            k2x = math.cos(a2)
            k2y = math.sin(a2)

            a3 = a + 0.5 * h * k2a
            k3a = w + 0.5 * h * k2w
            k3w = -math.sin(a3)
            k3x = math.cos(a3)
            k3y = math.sin(a3)

            a4 = a + h * k3a
            k4a = w + h * k3w
            k4w = -math.sin(a4)
            k4x = math.cos(a4)
            k4y = math.sin(a4)

            x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            a += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
            w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        alpha[i + 1] = a
        alpha_dot[i + 1] = w
        xs[i + 1] = x
        ys[i + 1] = y
    return alpha, alpha_dot, xs, ys
