"""The 12-curve seed corpus: three curves each of turning number -1, 0, +1, +2."""
from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def _closed(fn, tmax=TWO_PI, samples=4000):
    t = np.linspace(0.0, tmax, samples, endpoint=False)
    x, y = fn(t)
    return np.column_stack([x, y])


CORPUS = {
    # turning number +1
    "ellipse_2_1": (+1, _closed(lambda t: (2 * np.cos(t), np.sin(t)))),
    "wobbly_blob": (+1, _closed(lambda t: ((1 + 0.25 * np.cos(3 * t)) * np.cos(t),
                                           (1 + 0.25 * np.cos(3 * t)) * np.sin(t)))),
    "rounded_square": (+1, _closed(lambda t: (np.sign(np.cos(t)) * np.abs(np.cos(t)) ** 0.5,
                                              np.sign(np.sin(t)) * np.abs(np.sin(t)) ** 0.5))),
    # turning number -1 (clockwise traversals)
    "ellipse_cw": (-1, _closed(lambda t: (2 * np.cos(-t), np.sin(-t)))),
    "egg_cw": (-1, _closed(lambda t: ((1 + 0.2 * np.cos(-t)) * np.cos(-t),
                                      (1 + 0.2 * np.cos(-t)) * np.sin(-t)))),
    "blob_cw": (-1, _closed(lambda t: ((1 + 0.2 * np.sin(4 * -t)) * np.cos(-t),
                                       (1 + 0.2 * np.sin(4 * -t)) * np.sin(-t)))),
    # turning number 0 (one crossing)
    "gerono_eight": (0, _closed(lambda t: (np.cos(t), np.sin(t) * np.cos(t)))),
    "bean_crossing": (0, _closed(lambda t: (np.cos(t) + 0.15 * np.cos(2 * t),
                                            0.8 * np.sin(t) * np.cos(t) + 0.1 * np.sin(t)))),
    "bernoulli_lemniscate": (0, _closed(lambda t: (np.cos(t) / (1 + np.sin(t) ** 2),
                                                   np.sin(t) * np.cos(t) / (1 + np.sin(t) ** 2)))),
    # turning number +2
    "limacon_loop": (+2, _closed(lambda t: ((0.5 + np.cos(t)) * np.cos(t),
                                            (0.5 + np.cos(t)) * np.sin(t)))),
    "trefoil_projection": (+2, _closed(lambda t: ((2 + np.cos(3 * t)) * np.cos(2 * t),
                                                  (2 + np.cos(3 * t)) * np.sin(2 * t)))),
    "double_wound": (+2, _closed(lambda t: ((1 + 0.2 * np.cos(1.5 * t)) * np.cos(t),
                                            (1 + 0.2 * np.cos(1.5 * t)) * np.sin(t)), tmax=2 * TWO_PI,
                                 samples=8000)),
}
