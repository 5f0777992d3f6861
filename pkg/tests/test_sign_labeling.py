"""Tests for sign sampling and component labeling."""

import numpy as np
import pytest

from classes.chart_grid import ChartGrid
from classes.manifold_tag import ManifoldTag
from classes.sign_labeling import SignLabeling, slab_bounds

TWO_PI = 2.0 * np.pi


def count(sampler, manifold, resolution, threads=1, **params):
    grid = ChartGrid.build(manifold, resolution, **params)
    signs = SignLabeling.sign_field(sampler, grid, threads=threads)
    return SignLabeling.label(signs, grid, threads=threads)


@pytest.mark.parametrize(
    "n, threads, expected",
    [
        (10, 3, [(0, 4), (4, 7), (7, 10)]),
        (2, 5, [(0, 1), (1, 2)]),
        (8, 1, [(0, 8)]),
    ],
)
def test_slab_bounds(n, threads, expected):
    assert slab_bounds(n, threads) == expected


class TestLabeling:
    def test_checkerboard_on_the_two_torus(self):
        labeling = count(
            lambda x, y: np.sin(TWO_PI * x) * np.sin(TWO_PI * y), ManifoldTag.TORUS2, (16, 16)
        )
        assert (labeling.n_pos, labeling.n_neg) == (2, 2)

    def test_wraps_merge_components(self):
        labeling = count(lambda x, y: np.cos(TWO_PI * x) + 0.0 * y, ManifoldTag.TORUS2, (16, 16))
        assert (labeling.n_pos, labeling.n_neg) == (1, 1)

    def test_without_wraps_components_stay_apart(self):
        labeling = count(
            lambda x, y: np.cos(np.pi * x) + 0.0 * y, ManifoldTag.DISC2, (16, 16), radius=1.0
        )
        # cos(pi x) > 0 on |x| < 1/2 and < 0 on both sides
        assert (labeling.n_pos, labeling.n_neg) == (1, 2)

    @pytest.mark.parametrize("threads", [2, 3, 5])
    def test_threads_do_not_change_labels(self, threads):
        def sampler(x1, x2, x3):
            return np.sin(TWO_PI * x1) * np.cos(TWO_PI * x2) + 0.3 * np.sin(2 * TWO_PI * x3)

        serial = count(sampler, ManifoldTag.TORUS3, (12, 12, 12))
        parallel = count(sampler, ManifoldTag.TORUS3, (12, 12, 12), threads=threads)
        assert np.array_equal(serial.labels, parallel.labels)
        assert serial.total == parallel.total

    def test_labels_are_canonical(self):
        labeling = count(
            lambda x, y: np.sin(TWO_PI * x) * np.sin(TWO_PI * y), ManifoldTag.TORUS2, (16, 16)
        )
        assert labeling.labels[0, 0] == 1
        assert set(np.unique(labeling.labels)) == {1, 2, 3, 4}

    def test_zero_tolerance_blanks_small_values(self):
        grid = ChartGrid.build(ManifoldTag.TORUS2, (8, 8))
        signs = SignLabeling.sign_field(lambda x, y: 0.5 + 0.0 * x * y, grid, zero_tol=1.0)
        assert not signs.any()
        assert SignLabeling.label(signs, grid).total == 0

    def test_outside_cells_have_no_sign(self):
        grid = ChartGrid.build(ManifoldTag.DISC2, (16, 16))
        signs = SignLabeling.sign_field(lambda x, y: 1.0 + 0.0 * x * y, grid)
        assert np.array_equal(signs != 0, grid.inside_mask())
