"""Curve file format: a JSON object with version, points, optional restLengths.

Numbers are serialized with Python's repr (17 significant digits), so a
round trip preserves at least 12 significant digits.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import CurveFormatError
from .geometry import PolyCurve

FORMAT_VERSION = 1


def dumps_points(points: np.ndarray, rest_lengths: Optional[np.ndarray] = None) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "points": [[float(x), float(y)] for x, y in np.asarray(points, dtype=np.float64)],
    }
    if rest_lengths is not None:
        doc["restLengths"] = [float(r) for r in np.asarray(rest_lengths, dtype=np.float64)]
    return json.dumps(doc)


def dumps_curve(curve: PolyCurve) -> str:
    return dumps_points(curve.vertices, curve.rest_lengths)


def save_curve(path: Union[str, Path], curve: PolyCurve) -> None:
    Path(path).write_text(dumps_curve(curve), encoding="utf-8")


def save_points(path: Union[str, Path], points: np.ndarray) -> None:
    Path(path).write_text(dumps_points(points), encoding="utf-8")


def loads(text: str) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Parse a curve document into (points, rest_lengths or None)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise CurveFormatError(f"not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise CurveFormatError("top level: expected an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise CurveFormatError(f"version: expected {FORMAT_VERSION}, got {version!r}")
    raw = doc.get("points")
    if not isinstance(raw, list) or len(raw) < 3:
        raise CurveFormatError("points: expected a list of at least 3 [x, y] pairs")
    try:
        points = np.array(raw, dtype=np.float64)
    except (TypeError, ValueError) as err:
        raise CurveFormatError(f"points: values must be numbers ({err})") from err
    if points.ndim != 2 or points.shape[1] != 2:
        raise CurveFormatError(f"points: expected shape (n, 2), got {points.shape}")
    if not np.all(np.isfinite(points)):
        raise CurveFormatError("points: all coordinates must be finite")
    rest = None
    if "restLengths" in doc and doc["restLengths"] is not None:
        raw_rest = doc["restLengths"]
        if not isinstance(raw_rest, list):
            raise CurveFormatError("restLengths: expected a list of numbers")
        try:
            rest = np.array(raw_rest, dtype=np.float64)
        except (TypeError, ValueError) as err:
            raise CurveFormatError(f"restLengths: values must be numbers ({err})") from err
        if rest.shape != (len(points),):
            raise CurveFormatError(
                f"restLengths: expected {len(points)} entries, got {rest.shape}"
            )
        if not np.all(np.isfinite(rest)) or np.any(rest <= 0):
            raise CurveFormatError("restLengths: entries must be finite and positive")
    return points, rest


def load(path: Union[str, Path]) -> tuple[np.ndarray, Optional[np.ndarray]]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as err:
        raise CurveFormatError(f"cannot read {p}: {err}") from err
    return loads(text)


def load_curve(path: Union[str, Path]) -> PolyCurve:
    """Load a document that already stores a full polygon (with rest lengths)."""
    points, rest = load(path)
    if rest is None:
        from .geometry import edge_lengths

        rest = edge_lengths(points)
    return PolyCurve(points, rest)
