"""Interactive session state machine, independent of any transport.

A session ingests a drawn point trail, normalizes it to the calibration
scale (perimeter 2*pi), and steps the descent engine in chunks, producing
frames at the snapshot cadence.  Control actions (pause/resume/perturb/
set-snapshot-rate/stop) apply between chunks, never mid-step.
"""
from __future__ import annotations

import collections
import enum
import math
import secrets
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .descent import (
    ClassifyTolerances,
    DescentEngine,
    DescentParams,
    NormalFormClass,
    _decide,
    _shape_diagnostics,
)
from .energy import discrete_energy
from .errors import ElasticaError, CuspDetected, IndexBroken
from .geometry import PolyCurve, edge_lengths, ingest

HISTORY_LIMIT = 10_000
PERTURB_MAGNITUDE = 1e-3
SESSION_PERIMETER = 2.0 * math.pi


class SessionStatus(enum.Enum):
    DRAWING = "drawing"
    RUNNING = "running"
    PAUSED = "paused"
    QUIESCENT = "quiescent"
    FAILED = "failed"


@dataclass(frozen=True)
class Frame:
    iteration: int
    vertices: np.ndarray
    energy_discrete: float
    whitney_index: int
    max_displacement: float
    classification: Optional[NormalFormClass]

    def to_wire(self) -> dict:
        cls = None
        if self.classification is not None:
            c = self.classification
            cls = {
                "kind": c.kind,
                "k": c.k,
                "curvatureCv": None if math.isinf(c.curvature_cv) else c.curvature_cv,
                "templateCorrelation": c.template_correlation,
                "radiusEstimate": c.radius_estimate,
                "label": c.label,
            }
        return {
            "type": "frame",
            "iteration": self.iteration,
            "vertices": [[float(x), float(y)] for x, y in self.vertices],
            "energyDiscrete": self.energy_discrete,
            "whitneyIndex": self.whitney_index,
            "maxDisplacement": None if math.isnan(self.max_displacement) else self.max_displacement,
            "classification": cls,
        }


def _classify_soft(curve: PolyCurve) -> Optional[NormalFormClass]:
    """Classification for display; never raises mid-run."""
    try:
        k, cv, corr = _shape_diagnostics(curve)
        return _decide(curve, k, cv, corr, ClassifyTolerances())
    except ElasticaError:
        return None


class Session:
    """One drawing-to-normal-form run."""

    def __init__(self, params: Optional[DescentParams] = None, session_id: Optional[str] = None):
        self.session_id = session_id or secrets.token_hex(8)
        self.params = params or DescentParams()
        self.status = SessionStatus.DRAWING
        self.history: collections.deque[Frame] = collections.deque(maxlen=HISTORY_LIMIT)
        self.engine: Optional[DescentEngine] = None
        self.error: Optional[dict] = None
        self.verdict: Optional[NormalFormClass] = None

    def start(self, points) -> Frame:
        """Ingest a drawn trail and arm the engine.

        The curve is rescaled to perimeter 2*pi so the calibrated default
        force coefficients apply regardless of the drawing's pixel scale.
        """
        if self.status is not SessionStatus.DRAWING:
            raise ValueError("session already started")
        curve = ingest(points, self.params.n)
        scale = SESSION_PERIMETER / curve.perimeter
        vertices = curve.vertices * scale
        curve = PolyCurve(vertices, edge_lengths(vertices))
        self.engine = DescentEngine(curve, self.params)
        self.status = SessionStatus.RUNNING
        frame = self._frame()
        return frame

    def _frame(self) -> Frame:
        engine = self.engine
        curve = engine.curve
        energy = engine.last_energy
        if math.isnan(energy):
            energy = discrete_energy(curve).discrete
        frame = Frame(
            iteration=engine.iteration,
            vertices=curve.vertices,
            energy_discrete=float(energy),
            whitney_index=engine.initial_index,
            max_displacement=engine.last_displacement,
            classification=_classify_soft(curve),
        )
        self.history.append(frame)
        return frame

    def control(self, action: str, **kwargs) -> None:
        if action == "pause":
            if self.status is SessionStatus.RUNNING:
                self.status = SessionStatus.PAUSED
        elif action == "resume":
            if self.status is SessionStatus.PAUSED:
                self.status = SessionStatus.RUNNING
        elif action == "set-snapshot-rate":
            every = int(kwargs.get("value", self.params.snapshot_every))
            if every < 1:
                raise ValueError("snapshot rate must be >= 1")
            self.params = replace(self.params, snapshot_every=every)
        elif action == "perturb":
            if self.engine is None:
                raise ValueError("session not started")
            seed = int(kwargs.get("seed", 0))
            self.engine.perturb(seed, PERTURB_MAGNITUDE)
            if self.status is SessionStatus.QUIESCENT:
                self.status = SessionStatus.RUNNING
        elif action == "stop":
            if self.status in (SessionStatus.RUNNING, SessionStatus.PAUSED):
                self.status = SessionStatus.QUIESCENT
        else:
            raise ValueError(f"unknown control action {action!r}")

    def advance(self, max_steps: Optional[int] = None) -> Optional[Frame]:
        """Step up to one snapshot interval; returns the new frame, if any."""
        if self.status is not SessionStatus.RUNNING:
            return None
        engine = self.engine
        chunk = max_steps if max_steps is not None else self.params.snapshot_every
        try:
            engine.advance(chunk)
        except (CuspDetected, IndexBroken) as err:
            self.status = SessionStatus.FAILED
            self.error = {"type": "error", "code": type(err).__name__, "message": str(err)}
            return None
        if engine.quiesced:
            self.status = SessionStatus.QUIESCENT
            self.verdict = _classify_soft(engine.curve)
        elif engine.exhausted:
            self.status = SessionStatus.QUIESCENT
            k, cv, corr = _shape_diagnostics(engine.curve)
            self.verdict = NormalFormClass(
                kind="unconverged",
                k=None,
                curvature_cv=cv,
                template_correlation=corr,
                radius_estimate=None,
            )
        return self._frame()

    def terminal_message(self) -> Optional[dict]:
        if self.status is SessionStatus.FAILED:
            return self.error
        if self.status is SessionStatus.QUIESCENT:
            verdict = self.verdict or (_classify_soft(self.engine.curve) if self.engine else None)
            cls = None
            if verdict is not None:
                cls = {
                    "kind": verdict.kind,
                    "k": verdict.k,
                    "curvatureCv": None if math.isinf(verdict.curvature_cv) else verdict.curvature_cv,
                    "templateCorrelation": verdict.template_correlation,
                    "radiusEstimate": verdict.radius_estimate,
                    "label": verdict.label,
                }
            return {
                "type": "done",
                "iterations": self.engine.iteration if self.engine else 0,
                "classification": cls,
            }
        return None
