#!/usr/bin/env python3
"""Capture real session-server transcripts for the UI end-to-end tests.

Each scenario scripts a pointer drawing (pixel trail), normalizes it exactly
like the browser DrawingBuffer, drives the WebSocket endpoint with it, and
records every server message.  The engine is deterministic, so the frozen
transcripts are stable; regenerate with:

    python frontend/tools/make_transcripts.py
"""
import json
import math
import sys
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from elastica.server import create_app
from elastica.shapes import construct_gamma_epsilon

FIXTURES = Path(__file__).resolve().parent.parent / "test" / "fixtures"

MIN_SAMPLE_DISTANCE = 2.0
CLOSE_RADIUS = 24.0


def capture_trail(raw_points):
    """Mirror DrawingBuffer: begin/extend jitter filter and close detection."""
    pts = [list(map(float, raw_points[0]))]
    for x, y in raw_points[1:]:
        lx, ly = pts[-1]
        if (x - lx) ** 2 + (y - ly) ** 2 >= MIN_SAMPLE_DISTANCE**2:
            pts.append([float(x), float(y)])
    closed = math.hypot(pts[-1][0] - pts[0][0], pts[-1][1] - pts[0][1]) <= CLOSE_RADIUS
    return pts, closed


def normalize(trail):
    """Mirror DrawingBuffer.toNormalized: unit box, y flipped up, auto-close."""
    xs = [p[0] for p in trail]
    ys = [p[1] for p in trail]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y, 1e-9)
    out = [[(x - min_x) / span, (max_y - y) / span] for x, y in trail]
    out.append(list(out[0]))
    return out


def pixel_circle_blob():
    # clockwise in screen pixels (y down) = counterclockwise mathematically
    t = np.linspace(0, -2 * np.pi, 300, endpoint=False)
    r = 150 + 12 * np.cos(3 * t) + 5 * np.sin(7 * t)
    return np.column_stack([360 + r * np.cos(t), 280 + r * np.sin(t)])


def pixel_figure_eight():
    t = np.linspace(0, 2 * np.pi, 300, endpoint=False)
    return np.column_stack([360 + 240 * np.cos(t), 280 + 170 * np.sin(t) * np.cos(t)])


def pixel_doubled_eight():
    # a drawn double eight: the paper's energy-reducing deformation of the
    # exact double cover, scaled into screen pixels (long axis vertical)
    gamma = construct_gamma_epsilon(0.15, 400)
    v = gamma.vertices
    v = (v - v.mean(axis=0)) / np.abs(v - v.mean(axis=0)).max()
    return np.column_stack([360 + 200 * v[:, 0], 280 - 200 * v[:, 1]])


SCENARIOS = {
    "circle_blob": dict(
        raw=pixel_circle_blob(),
        params={"snapshot_every": 10_000},
        controls=[(2, {"action": "pause"}), (2, {"action": "resume"})],
    ),
    "figure_eight": dict(
        raw=pixel_figure_eight(),
        params={"snapshot_every": 10_000},
        controls=[],
    ),
    "doubled_eight_perturb": dict(
        raw=pixel_doubled_eight(),
        params={"snapshot_every": 25_000},
        controls=[(6, {"action": "perturb", "seed": 13})],
    ),
}


def run_scenario(client, name, spec):
    trail, closed = capture_trail(spec["raw"])
    points = normalize(trail)
    messages = []
    controls = list(spec["controls"])
    with client.websocket_connect("/session") as ws:
        ws.send_json({"type": "start", "points": points, "params": spec["params"]})
        frames_seen = 0
        while True:
            msg = ws.receive_json()
            messages.append(msg)
            if msg["type"] == "frame":
                frames_seen += 1
                while controls and controls[0][0] <= frames_seen:
                    _, control = controls.pop(0)
                    ws.send_json({"type": "control", **control})
            if msg["type"] in ("done", "error"):
                break
    return {
        "name": name,
        "trail": trail,
        "closed": closed,
        "normalized": points,
        "params": spec["params"],
        "controls": [[n, c] for n, c in spec["controls"]],
        "messages": messages,
    }


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with TestClient(create_app()) as client:
        for name, spec in SCENARIOS.items():
            print(f"capturing {name}...", flush=True)
            transcript = run_scenario(client, name, spec)
            out = FIXTURES / f"{name}.json"
            out.write_text(json.dumps(transcript))
            frames = sum(1 for m in transcript["messages"] if m["type"] == "frame")
            terminal = transcript["messages"][-1]
            label = (terminal.get("classification") or {}).get("label")
            print(f"  {frames} frames, terminal {terminal['type']} ({label})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
