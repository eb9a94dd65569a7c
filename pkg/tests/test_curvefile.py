import json

import numpy as np
import pytest

from elastica import curvefile
from elastica.errors import CurveFormatError
from elastica.shapes import sample_figure_eight

from util import random_nondegenerate_polygon


class TestRoundTrip:
    def test_twelve_significant_digits(self):
        curve = random_nondegenerate_polygon(np.random.default_rng(1), 32)
        text = curvefile.dumps_curve(curve)
        points, rest = curvefile.loads(text)
        np.testing.assert_allclose(points, curve.vertices, rtol=1e-12, atol=0)
        np.testing.assert_allclose(rest, curve.rest_lengths, rtol=1e-12, atol=0)

    def test_repr_floats_are_exact(self):
        curve = sample_figure_eight(64, 1).curve
        points, rest = curvefile.loads(curvefile.dumps_curve(curve))
        assert np.array_equal(points, curve.vertices)
        assert np.array_equal(rest, curve.rest_lengths)

    def test_file_io(self, tmp_path):
        curve = random_nondegenerate_polygon(np.random.default_rng(2), 16)
        path = tmp_path / "c.json"
        curvefile.save_curve(path, curve)
        loaded = curvefile.load_curve(path)
        assert np.array_equal(loaded.vertices, curve.vertices)

    def test_version_field_present(self):
        curve = random_nondegenerate_polygon(np.random.default_rng(3), 16)
        doc = json.loads(curvefile.dumps_curve(curve))
        assert doc["version"] == 1


class TestParseErrors:
    def test_not_json(self):
        with pytest.raises(CurveFormatError, match="JSON"):
            curvefile.loads("{not json")

    def test_wrong_version(self):
        with pytest.raises(CurveFormatError, match="version"):
            curvefile.loads('{"version": 2, "points": [[0,0],[1,0],[0,1]]}')

    def test_missing_points(self):
        with pytest.raises(CurveFormatError, match="points"):
            curvefile.loads('{"version": 1}')

    def test_bad_point_shape(self):
        with pytest.raises(CurveFormatError, match="points"):
            curvefile.loads('{"version": 1, "points": [[0,0,0],[1,0,0],[0,1,0]]}')

    def test_nonfinite_points(self):
        with pytest.raises(CurveFormatError, match="points"):
            curvefile.loads('{"version": 1, "points": [[0,0],[1,0],[null,1]]}')

    def test_rest_lengths_wrong_count(self):
        with pytest.raises(CurveFormatError, match="restLengths"):
            curvefile.loads('{"version": 1, "points": [[0,0],[1,0],[0,1]], "restLengths": [1.0]}')

    def test_rest_lengths_nonpositive(self):
        with pytest.raises(CurveFormatError, match="restLengths"):
            curvefile.loads(
                '{"version": 1, "points": [[0,0],[1,0],[0,1]], "restLengths": [1.0, -1.0, 1.0]}'
            )
