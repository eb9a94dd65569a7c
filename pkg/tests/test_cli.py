import json
import os

import numpy as np
import pytest

from elastica import curvefile
from elastica.cli import main
from elastica.config import load_params, read_config_file
from elastica.descent import DescentParams
from elastica.geometry import ingest, whitney_index

from util import ellipse_points


def _write_ellipse(path, n_samples=600):
    curvefile.save_points(path, ellipse_points()[:: 4000 // n_samples])


class TestGenerate:
    def test_circle_file(self, tmp_path):
        out = tmp_path / "circle.json"
        assert main(["generate", "circle", "-k", "2", "-N", "100", "-o", str(out)]) == 0
        points, rest = curvefile.load(out)
        assert whitney_index(ingest(points, 100)) == 2

    def test_eight_file_closes(self, tmp_path):
        out = tmp_path / "eight.json"
        assert main(["generate", "eight", "-m", "1", "-N", "200", "-o", str(out)]) == 0
        curve = curvefile.load_curve(out)
        total = (np.roll(curve.vertices, -1, axis=0) - curve.vertices).sum(axis=0)
        assert np.abs(total).max() < 1e-12 * curve.perimeter

    def test_gamma_epsilon_energy(self, tmp_path):
        from elastica.energy import discrete_energy
        from elastica.shapes import sample_figure_eight

        out = tmp_path / "gamma.json"
        assert main(["generate", "gamma-epsilon", "-e", "0.1", "-N", "4096", "-o", str(out)]) == 0
        gamma = curvefile.load_curve(out)
        double = sample_figure_eight(4096, 2, gamma.perimeter).curve
        assert discrete_energy(gamma).discrete < discrete_energy(double).discrete

    def test_bad_options(self, tmp_path):
        out = tmp_path / "x.json"
        assert main(["generate", "circle", "-k", "0", "-o", str(out)]) == 2
        assert main(["generate", "eight", "-N", "30", "-o", str(out)]) == 2


class TestRun:
    def test_eight_input_reaches_figure_eight(self, tmp_path):
        eight = tmp_path / "eight.json"
        main(["generate", "eight", "-m", "1", "-N", "200", "-o", str(eight)])
        out_dir = tmp_path / "out"
        code = main(["run", str(eight), "-o", str(out_dir)])
        assert code == 0
        report = (out_dir / "report.txt").read_text()
        assert "class=FigureEight" in report
        assert (out_dir / "final.curve.json").exists()
        assert (out_dir / "final.svg").exists()
        trace = (out_dir / "trace.csv").read_text().splitlines()
        assert trace[0] == "iteration,energy,index,maxDisplacement"
        # the near-fixed-point run settles in a few thousand iterations
        iters = int(report.split("iterations=")[1].split()[0])
        assert iters < 10_000

    def test_malformed_file_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"version": 1, "points": "nope"}')
        assert main(["run", str(bad), "-o", str(tmp_path / "o")]) == 2
        assert "points" in capsys.readouterr().err

    def test_unconverged_exit_4(self, tmp_path):
        ell = tmp_path / "e.json"
        _write_ellipse(ell)
        out_dir = tmp_path / "out"
        assert main(["run", str(ell), "-o", str(out_dir), "--max-iters", "200"]) == 4
        assert "class=Unconverged" in (out_dir / "report.txt").read_text()

    def test_engine_failure_exit_3(self, tmp_path):
        ell = tmp_path / "e.json"
        _write_ellipse(ell)
        assert (
            main(["run", str(ell), "-o", str(tmp_path / "o"), "--c1", "50.0", "--c2", "0.001"])
            == 3
        )

    def test_svg_frames(self, tmp_path):
        eight = tmp_path / "eight.json"
        main(["generate", "eight", "-m", "1", "-N", "100", "-o", str(eight)])
        out_dir = tmp_path / "out"
        main(["run", str(eight), "-o", str(out_dir), "--svg", "--snapshot-every", "2000"])
        frames = list((out_dir / "frames").glob("frame_*.svg"))
        assert len(frames) >= 1


class TestClassify:
    def test_prediction_circle(self, tmp_path, capsys):
        f = tmp_path / "c3.json"
        main(["generate", "circle", "-k", "3", "-N", "100", "-o", str(f)])
        assert main(["classify", str(f)]) == 0
        out = capsys.readouterr().out
        assert "whitneyIndex=3" in out
        assert "prediction=Circle k=3" in out

    def test_prediction_eight(self, tmp_path, capsys):
        f = tmp_path / "e.json"
        main(["generate", "eight", "-N", "200", "-o", str(f)])
        assert main(["classify", str(f)]) == 0
        out = capsys.readouterr().out
        assert "whitneyIndex=0" in out
        assert "prediction=FigureEight" in out

    def test_descend_agreement(self, tmp_path, capsys):
        f = tmp_path / "c1.json"
        main(["generate", "circle", "-k", "1", "-N", "100", "-o", str(f)])
        assert main(["classify", str(f), "--descend"]) == 0
        assert "agreement=yes" in capsys.readouterr().out


class TestConfig:
    def test_file_env_flag_precedence(self, tmp_path, monkeypatch):
        cfg = tmp_path / "elastica.cfg"
        cfg.write_text("c1 = 0.001\nmax_iters = 5000  # comment\n")
        values = read_config_file(cfg)
        assert values == {"c1": 0.001, "max_iters": 5000}
        monkeypatch.setenv("ELASTICA_C1", "0.002")
        params = load_params(config_path=cfg)
        assert params.c1 == 0.002 and params.max_iters == 5000
        params = load_params(config_path=cfg, c1=0.003)
        assert params.c1 == 0.003

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nope = 3\n")
        with pytest.raises(ValueError, match="unknown key"):
            read_config_file(cfg)

    def test_defaults_match_dataclass(self):
        assert load_params(environ={}) == DescentParams()
