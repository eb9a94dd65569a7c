"""Command-line interface.

Subcommands:
  run            descend an input curve to its normal form
  generate       write sampled critical curves (circle / eight / gamma-epsilon)
  classify       report the turning number and the predicted normal form
  serve          start the interactive session server

Exit codes for ``run``: 0 success, 2 parse failure, 3 cusp or broken index,
4 not converged within the iteration cap.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import curvefile, svg
from .config import load_params
from .descent import DescentParams, run as descent_run
from .errors import (
    ContradictoryFit,
    CurveFormatError,
    CuspDetected,
    DegenerateInput,
    ElasticaError,
    IndexBroken,
    TangencyNotFound,
)
from .geometry import PolyCurve, edge_lengths, ingest, whitney_index
from .session import SESSION_PERIMETER
from .shapes import construct_gamma_epsilon, sample_circle, sample_figure_eight

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_PARSE = 2
EXIT_ENGINE = 3
EXIT_UNCONVERGED = 4


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="key = value file with descent parameters")
    parser.add_argument("--n", type=int, help="vertex count")
    parser.add_argument("--c1", type=float, help="straightening coefficient")
    parser.add_argument("--c2", type=float, help="resilience coefficient")
    parser.add_argument("--fd-step", type=float, dest="fd_step", help="relative finite-difference step")
    parser.add_argument("--quiescence-tol", type=float, dest="quiescence_tol")
    parser.add_argument("--quiescence-runs", type=int, dest="quiescence_runs")
    parser.add_argument("--max-iters", type=int, dest="max_iters")
    parser.add_argument("--snapshot-every", type=int, dest="snapshot_every")
    parser.add_argument("--step-scale", type=float, dest="step_scale")


def _params_from_args(args) -> DescentParams:
    return load_params(
        config_path=args.config,
        n=args.n,
        c1=args.c1,
        c2=args.c2,
        fd_step=args.fd_step,
        quiescence_tol=args.quiescence_tol,
        quiescence_runs=args.quiescence_runs,
        max_iters=args.max_iters,
        snapshot_every=args.snapshot_every,
        step_scale=args.step_scale,
    )


def _load_normalized(path: Path, n: int) -> PolyCurve:
    """Parse, resample to n equal edges, rescale to the calibration perimeter."""
    points, _ = curvefile.load(path)
    curve = ingest(points, n)
    vertices = curve.vertices * (SESSION_PERIMETER / curve.perimeter)
    return PolyCurve(vertices, edge_lengths(vertices))


def cmd_run(args) -> int:
    try:
        params = _params_from_args(args)
        curve = _load_normalized(args.input, params.n)
    except (CurveFormatError, DegenerateInput, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    frames_dir = out_dir / "frames"
    if args.svg:
        frames_dir.mkdir(exist_ok=True)

    if args.perturb_seed is not None:
        rng = np.random.default_rng(args.perturb_seed)
        vertices = curve.vertices + 1e-3 * curve.mean_edge * rng.standard_normal(
            curve.vertices.shape
        )
        curve = curve.with_vertices(vertices)

    def observer(step):
        if args.svg:
            svg.save_svg(frames_dir / f"frame_{step.iteration:08d}.svg", step.curve.vertices)

    try:
        summary, verdict = descent_run(curve, params, observer=observer)
    except (CuspDetected, IndexBroken) as err:
        print(f"engine failure: {err}", file=sys.stderr)
        summary = getattr(err, "summary", None)
        if summary is not None and summary.final_curve is not None:
            curvefile.save_curve(out_dir / "final.curve.json", summary.final_curve)
        return EXIT_ENGINE

    curvefile.save_curve(out_dir / "final.curve.json", summary.final_curve)
    svg.save_svg(out_dir / "final.svg", summary.final_curve.vertices)
    _write_trace(out_dir / "trace.csv", summary)
    report = _format_report(summary, verdict)
    (out_dir / "report.txt").write_text(report, encoding="utf-8")
    print(report, end="")
    return EXIT_OK if verdict.kind != "unconverged" else EXIT_UNCONVERGED


def _write_trace(path: Path, summary) -> None:
    every = max(1, summary.params.snapshot_every)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("iteration,energy,index,maxDisplacement\n")
        total = summary.iterations
        rows = list(range(0, total, every))
        if total and (total - 1) not in rows:
            rows.append(total - 1)
        for i in rows:
            fh.write(
                f"{i + 1},{summary.energies[i]!r},{summary.initial_index},"
                f"{summary.max_displacements[i]!r}\n"
            )
        fh.write(
            f"# final iterations={summary.iterations} quiesced={summary.quiesced} "
            f"lengthDrift={summary.length_drift!r}\n"
        )


def _format_report(summary, verdict) -> str:
    lines = []
    if verdict.kind == "circle":
        lines.append(f"class=Circle k={verdict.k}")
        lines.append(f"radiusEstimate={verdict.radius_estimate!r}")
    elif verdict.kind == "figure-eight":
        lines.append("class=FigureEight")
        lines.append(f"templateCorrelation={verdict.template_correlation!r}")
    else:
        lines.append("class=Unconverged")
    lines.append(f"index={summary.initial_index}")
    lines.append(f"iterations={summary.iterations}")
    lines.append(f"quiesced={summary.quiesced}")
    lines.append(f"finalEnergy={summary.energies[-1]!r}" if summary.iterations else "finalEnergy=nan")
    lines.append(f"lengthDrift={summary.length_drift!r}")
    return "\n".join(lines) + "\n"


def cmd_generate(args) -> int:
    try:
        if args.kind == "circle":
            sample = sample_circle(args.k, args.n, args.length)
            curve = sample.curve
        elif args.kind == "eight":
            sample = sample_figure_eight(args.n, args.m, args.length)
            curve = sample.curve
        elif args.kind == "gamma-epsilon":
            curve = construct_gamma_epsilon(args.epsilon, args.n)
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(f"unknown kind {args.kind}")
    except (ValueError, TangencyNotFound, ElasticaError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    curvefile.save_curve(args.output, curve)
    print(f"wrote {args.output} (n={curve.n}, perimeter={curve.perimeter:.6f})")
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        points, _ = curvefile.load(args.input)
        curve = ingest(points, args.n or 100)
    except (CurveFormatError, DegenerateInput, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        k = whitney_index(curve)
    except ElasticaError as err:
        print(f"engine failure: {err}", file=sys.stderr)
        return EXIT_ENGINE
    prediction = f"Circle k={k}" if k != 0 else "FigureEight"
    print(f"whitneyIndex={k}")
    print(f"prediction={prediction}")
    if not args.descend:
        return EXIT_OK
    try:
        params = _params_from_args(args)
        normalized = _load_normalized(args.input, params.n)
        summary, verdict = descent_run(normalized, params)
    except (CuspDetected, IndexBroken, ContradictoryFit) as err:
        print(f"engine failure: {err}", file=sys.stderr)
        return EXIT_ENGINE
    print(f"descended={verdict.label}")
    if verdict.kind == "circle" and verdict.k == k:
        agreement = True
    elif verdict.kind == "figure-eight" and k == 0:
        agreement = True
    else:
        agreement = False
    print(f"agreement={'yes' if agreement else 'NO'}")
    return EXIT_OK if agreement else EXIT_DISAGREE


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="elastica", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="descend a curve file to its normal form")
    p_run.add_argument("input", type=Path, help="curve file (JSON)")
    p_run.add_argument("-o", "--output-dir", type=Path, default=Path("elastica-out"))
    p_run.add_argument("--svg", action="store_true", help="write an SVG frame per snapshot")
    p_run.add_argument("--perturb-seed", type=int, default=None, help="seeded jitter before the run")
    _add_param_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_gen = sub.add_parser("generate", help="write sampled critical curves")
    p_gen.add_argument("kind", choices=["circle", "eight", "gamma-epsilon"])
    p_gen.add_argument("-o", "--output", type=Path, required=True)
    p_gen.add_argument("-k", type=int, default=1, help="turning number (circle)")
    p_gen.add_argument("-m", type=int, default=1, help="traversal count (eight)")
    p_gen.add_argument("-N", "--n", type=int, default=200, dest="n")
    p_gen.add_argument("--length", type=float, default=2.0 * math.pi)
    p_gen.add_argument("-e", "--epsilon", type=float, default=0.05)
    p_gen.set_defaults(func=cmd_generate)

    p_cls = sub.add_parser("classify", help="turning number and predicted normal form")
    p_cls.add_argument("input", type=Path)
    p_cls.add_argument("--descend", action="store_true", help="also run the descent and compare")
    _add_param_flags(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_srv = sub.add_parser("serve", help="start the session server")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.add_argument("--static", default=None, help="directory with the UI bundle")
    p_srv.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
