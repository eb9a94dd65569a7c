"""Minimal SVG rendering of a closed polygon."""
from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

VIEWPORT = 800.0
MARGIN_FRACTION = 0.05


def curve_svg(points: np.ndarray) -> str:
    """Closed polygon in a fixed viewport with a 5% margin.

    Stroke width is 1/400 of the viewport; crossings are not marked.
    The y-axis is flipped so the mathematical orientation reads normally.
    """
    pts = np.asarray(points, dtype=np.float64)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    if span <= 0.0:
        span = 1.0
    margin = MARGIN_FRACTION * span
    scale = VIEWPORT / (span + 2.0 * margin)
    center = 0.5 * (lo + hi)
    xy = (pts - center) * scale
    xy[:, 1] *= -1.0
    xy += VIEWPORT / 2.0
    coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in xy)
    stroke = VIEWPORT / 400.0
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEWPORT:.0f}" '
        f'height="{VIEWPORT:.0f}" viewBox="0 0 {VIEWPORT:.0f} {VIEWPORT:.0f}">\n'
        f'  <polygon points="{coords}" fill="none" stroke="black" '
        f'stroke-width="{stroke:.2f}" stroke-linejoin="round"/>\n'
        "</svg>\n"
    )


def save_svg(path: Union[str, Path], points: np.ndarray) -> None:
    Path(path).write_text(curve_svg(points), encoding="utf-8")
