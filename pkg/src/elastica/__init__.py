"""Discrete bending-energy descent for closed plane curves.

Drives any closed immersed polygon to its normal form (a k-fold circle or
the Bernoulli figure-eight) by gradient descent on sum tan^2(alpha_i/2),
and provides the continuous machinery (pendulum solutions, elliptic-integral
periods, closure shooting, lobe deformations) needed to verify the limits.
"""

from .descent import (
    ClassifyTolerances,
    DescentEngine,
    DescentParams,
    DescentStep,
    NormalFormClass,
    TrajectorySummary,
    classify,
    run,
    step,
)
from .energy import (
    EnergyBreakdown,
    ForcePair,
    discrete_energy,
    exact_gradient,
    force_pair,
    resilience_force,
    straightening_force,
)
from .errors import (
    AmplitudeOutOfRange,
    ContradictoryFit,
    CurveFormatError,
    CuspDetected,
    DegenerateInput,
    ElasticaError,
    IndexBroken,
    NonIntegralTurning,
    RootNotBracketed,
    TangencyNotFound,
)
from .geometry import (
    ClosureReport,
    PolyCurve,
    TurningProfile,
    chain_closure,
    closure_report,
    ingest,
    resample_closed,
    turning_profile,
    whitney_index,
)
from .pendulum import (
    PendulumSolution,
    closure_functional,
    complete_elliptic_k,
    find_figure_eight_amplitude,
    integrate_pendulum,
    pendulum_period,
)
from .shapes import (
    CriticalCurveSample,
    construct_gamma_epsilon,
    eight_angle_template,
    lobe_width,
    sample_circle,
    sample_figure_eight,
)

__all__ = [
    "AmplitudeOutOfRange",
    "ClassifyTolerances",
    "ClosureReport",
    "ContradictoryFit",
    "CriticalCurveSample",
    "CurveFormatError",
    "CuspDetected",
    "DegenerateInput",
    "DescentEngine",
    "DescentParams",
    "DescentStep",
    "ElasticaError",
    "EnergyBreakdown",
    "ForcePair",
    "IndexBroken",
    "NonIntegralTurning",
    "NormalFormClass",
    "PendulumSolution",
    "PolyCurve",
    "RootNotBracketed",
    "TangencyNotFound",
    "TrajectorySummary",
    "TurningProfile",
    "chain_closure",
    "classify",
    "closure_functional",
    "closure_report",
    "complete_elliptic_k",
    "construct_gamma_epsilon",
    "discrete_energy",
    "eight_angle_template",
    "exact_gradient",
    "find_figure_eight_amplitude",
    "force_pair",
    "ingest",
    "integrate_pendulum",
    "lobe_width",
    "pendulum_period",
    "resample_closed",
    "resilience_force",
    "run",
    "sample_circle",
    "sample_figure_eight",
    "step",
    "straightening_force",
    "turning_profile",
    "whitney_index",
]

__version__ = "0.1.0"
