"""Tests for winding degrees around circles and grid cells."""

from fractions import Fraction

import numpy as np
import pytest

from classes.chart_grid import ChartGrid
from classes.manifold_tag import ManifoldTag
from modules.errors import RadiusError
from modules.winding import Winding, WindingIndex

TWO_PI = 2.0 * np.pi


class TestWindingIndex:
    def test_identity_has_degree_one(self):
        result = Winding.winding_index(lambda x, y: x + 1j * y, (0.0, 0.0), 0.5)
        assert result.degree == 1
        assert result.index == 1

    def test_conjugate_has_degree_minus_one(self):
        result = Winding.winding_index(lambda x, y: x - 1j * y, (0.0, 0.0), 0.5)
        assert result.degree == -1

    def test_index_divides_by_the_weight(self):
        result = Winding.winding_index(lambda x, y: (x + 1j * y) ** 2, (0.0, 0.0), 0.3, m=2)
        assert result.degree == 2
        assert result.index == Fraction(1)

    def test_zero_outside_the_circle(self):
        result = Winding.winding_index(lambda x, y: x - 2.0 + 1j * y, (0.0, 0.0), 0.5)
        assert result.degree == 0

    def test_zero_on_the_circle(self):
        with pytest.raises(RadiusError):
            Winding.winding_index(lambda x, y: x - 0.1 + 1j * y, (0.0, 0.0), 0.1)

    def test_weight_must_be_positive(self):
        with pytest.raises(ValueError):
            Winding.winding_index(lambda x, y: x + 1j * y, (0.0, 0.0), 0.5, m=0)

    def test_index_serializes_as_a_fraction(self):
        result = WindingIndex(degree=1, m=2, index=Fraction(1, 2))
        assert result.model_dump()["index"] == "1/2"


def test_zero_cells_on_the_two_torus():
    grid = ChartGrid.build(ManifoldTag.TORUS2, (32, 32))
    cells = Winding.base_zero_cells(
        lambda x, y: np.sin(TWO_PI * x) + 1j * np.sin(TWO_PI * y), grid
    )
    assert len(cells) == 4
    assert sum(cell.degree for cell in cells) == 0
    assert {cell.index for cell in cells} == {(15, 15), (15, 31), (31, 15), (31, 31)}
    assert all(abs(cell.degree) == 1 for cell in cells)


def test_zero_cells_need_a_plane_grid():
    with pytest.raises(ValueError):
        Winding.base_zero_cells(lambda x, y: x + 1j * y, ChartGrid.build(ManifoldTag.TORUS3, (8, 8, 8)))
