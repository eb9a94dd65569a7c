"""Pendulum solutions of the tangent-angle equation and the closure amplitude.

With curves normalized so the tangent angle alpha satisfies
alpha'' = -sin(alpha), a critical curve's Gauss data is a pendulum swing.
Solutions started from rest at amplitude alpha0 conserve

    alpha_dot^2 = 2*cos(alpha) + C,      C = -2*cos(alpha0),

and have period T = 4*K(m) with m = sin^2(alpha0/2).  The figure-eight
closure amplitude is the unique alpha0 in (pi/2, pi) where the curve's
displacement along the symmetry axis over one period vanishes.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from ._kernel import rk4_pendulum
from .errors import AmplitudeOutOfRange, RootNotBracketed

# Residual bound on the energy integral along returned samples.
ODE_TOL = 1e-8

# Internal RK4 step ceiling; small enough that the energy residual stays
# two orders below ODE_TOL at every admissible amplitude.
_MAX_INTERNAL_STEP = 5e-4


@dataclass(frozen=True)
class PendulumSolution:
    """One period of the swing started from rest at ``amplitude``."""

    amplitude: float
    energy_constant: float
    period: float
    t: np.ndarray
    alpha: np.ndarray
    alpha_dot: np.ndarray

    def __post_init__(self):
        for name in ("t", "alpha", "alpha_dot"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def energy_residual(self) -> np.ndarray:
        return self.alpha_dot**2 - (2.0 * np.cos(self.alpha) + self.energy_constant)


def complete_elliptic_k(m: float) -> float:
    """Complete elliptic integral of the first kind, parameter m = k^2.

    Arithmetic-geometric mean iteration: K(m) = pi / (2 * agm(1, sqrt(1-m))).
    """
    if not 0.0 <= m < 1.0:
        raise ValueError(f"parameter m must be in [0, 1), got {m}")
    a = 1.0
    b = math.sqrt(1.0 - m)
    for _ in range(200):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def _check_amplitude(amplitude: float) -> float:
    amplitude = float(amplitude)
    if not 0.0 < amplitude < math.pi:
        raise AmplitudeOutOfRange(f"amplitude must be in (0, pi), got {amplitude}")
    return amplitude


def pendulum_period(amplitude: float) -> float:
    """T = 4*K(sin^2(amplitude/2))."""
    amplitude = _check_amplitude(amplitude)
    return 4.0 * complete_elliptic_k(math.sin(0.5 * amplitude) ** 2)


def _substeps(period: float, steps: int) -> int:
    return max(1, math.ceil(period / (steps * _MAX_INTERNAL_STEP)))


def integrate_pendulum(amplitude: float, steps: int = 4096) -> PendulumSolution:
    """Fixed-step RK4 over exactly one period, sampled on a uniform grid.

    ``steps`` sets the output grid; the integrator internally subdivides each
    output interval so the energy-integral residual stays below ODE_TOL.
    """
    amplitude = _check_amplitude(amplitude)
    if steps < 1000:
        raise ValueError(f"steps must be at least 1000, got {steps}")
    period = pendulum_period(amplitude)
    alpha, alpha_dot, _, _ = rk4_pendulum(amplitude, period, steps, _substeps(period, steps))
    t = np.linspace(0.0, period, steps + 1)
    return PendulumSolution(
        amplitude=amplitude,
        energy_constant=-2.0 * math.cos(amplitude),
        period=period,
        t=t,
        alpha=alpha,
        alpha_dot=alpha_dot,
    )


def closure_functional(amplitude: float, steps: int = 4096) -> float:
    """Displacement along the symmetry axis over one period: F = integral of cos(alpha) dt."""
    amplitude = _check_amplitude(amplitude)
    period = pendulum_period(amplitude)
    _, _, xs, _ = rk4_pendulum(amplitude, period, steps, _substeps(period, steps))
    return float(xs[-1])


@functools.cache
def find_figure_eight_amplitude() -> float:
    """The unique amplitude in (pi/2, pi) where the closure functional vanishes."""
    lo = math.pi / 2 + 1e-9
    hi = math.pi - 1e-4
    f_lo = closure_functional(lo)
    f_hi = closure_functional(hi)
    if f_lo * f_hi >= 0.0:
        raise RootNotBracketed(
            f"closure functional has signs {np.sign(f_lo)}, {np.sign(f_hi)} at the bracket ends"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-12:
            break
        f_mid = closure_functional(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
