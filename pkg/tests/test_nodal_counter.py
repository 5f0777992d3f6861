"""Tests for nodal-domain counting and fiber zero counts."""

import math

import numpy as np
import pytest

from classes.chart_grid import ChartGrid
from classes.equivariant_field import BasePoint, EquivariantField
from classes.manifold_tag import ManifoldTag
from classes.nodal_counter import NodalCounter, grid_sampler
from modules.errors import SingularFiberError

TWO_PI = 2.0 * math.pi


def torus_base(a, b):
    a, b = TWO_PI * np.asarray(a), TWO_PI * np.asarray(b)
    return np.cos(a) * np.cos(b) + 1j * np.sin(a) * np.sin(b)


def constant_field(value, weight):
    return EquivariantField(
        weight=weight, base=lambda a, b: np.full(np.broadcast(a, b).shape, value), chart_id="disc2"
    )


class TestCounts:
    @pytest.mark.parametrize("k", [1, 2])
    def test_two_torus_products(self, k):
        def product(x, y):
            return np.sin(TWO_PI * k * x) * np.sin(TWO_PI * k * y)

        count = NodalCounter().count_nodal_domains(product, ManifoldTag.TORUS2, (16 * k, 16 * k))
        assert count.total == 4 * k * k
        assert count.converged
        assert (count.coarse_n_pos, count.coarse_n_neg) == (count.n_pos, count.n_neg)

    def test_lift_on_the_three_torus(self):
        field = EquivariantField(weight=1, base=torus_base, chart_id="torus")
        count = NodalCounter().count_nodal_domains(field, ManifoldTag.TORUS3, (16, 16, 16))
        assert (count.n_pos, count.n_neg) == (1, 1)

    def test_field_and_direct_sampler_agree(self):
        field = EquivariantField(weight=1, base=torus_base, chart_id="torus")

        def direct(x1, x2, x3):
            return np.real(torus_base(x2, x3) * np.exp(-1j * TWO_PI * x1))

        counter = NodalCounter(threads=2)
        via_field = counter.count_nodal_domains(field, ManifoldTag.TORUS3, (16, 16, 16))
        via_sampler = counter.count_nodal_domains(direct, ManifoldTag.TORUS3, (16, 16, 16))
        assert via_field.total == via_sampler.total

    def test_disc_with_a_zero_has_two_domains(self):
        field = EquivariantField(weight=1, base=lambda x, y: x + 1j * y, chart_id="disc2")
        count = NodalCounter().count_nodal_domains(field, ManifoldTag.DISC2_X_CIRCLE, (32, 32, 8))
        assert count.total == 2

    def test_field_needs_a_fibered_grid(self):
        with pytest.raises(ValueError):
            grid_sampler(constant_field(1.0, 1), ManifoldTag.TORUS2)


class TestFiberZeroCount:
    @pytest.mark.parametrize("m", [1, 2, 3, 24, -2])
    def test_two_m_sign_changes(self, m):
        point = BasePoint(chart_id="disc2", coords=(0.1, 0.2))
        count = NodalCounter().fiber_zero_count(constant_field(1.0 + 2.0j, m), point, 32 * abs(m))
        assert count == 2 * abs(m)

    def test_zero_base_value(self):
        point = BasePoint(chart_id="disc2", coords=(0.0, 0.0))
        with pytest.raises(SingularFiberError):
            NodalCounter().fiber_zero_count(constant_field(0.0, 2), point, 64)

    def test_too_few_samples(self):
        point = BasePoint(chart_id="disc2", coords=(0.0, 0.0))
        with pytest.raises(ValueError):
            NodalCounter().fiber_zero_count(constant_field(1.0, 3), point, 11)


class TestNodalSet:
    def test_crossing_lines_form_one_component(self):
        grid = ChartGrid.build(ManifoldTag.TORUS2, (16, 16))
        counter = NodalCounter()
        labeling = counter.label_grid(lambda x, y: np.sin(TWO_PI * x) * np.sin(TWO_PI * y), grid)
        assert counter.nodal_set_components(labeling, grid) == 1

    def test_parallel_circles_stay_apart(self):
        grid = ChartGrid.build(ManifoldTag.TORUS2, (16, 16))
        counter = NodalCounter()
        labeling = counter.label_grid(lambda x, y: np.sin(TWO_PI * x) + 0.0 * y, grid)
        assert counter.nodal_set_components(labeling, grid) == 2

    def test_close_sheets_merge_until_refined(self):
        def stripes(x, y):
            return np.sin(TWO_PI * 4 * x) + 0.0 * y

        counter = NodalCounter()
        count, nodal_set = counter.count_with_nodal_set(stripes, ManifoldTag.TORUS2, (16, 16))
        assert count.total == 8
        assert count.converged
        # Two cells per domain: every cell touches a sheet
        assert (nodal_set.coarse_components, nodal_set.components) == (1, 8)
        assert not nodal_set.converged

        _, refined = counter.count_with_nodal_set(stripes, ManifoldTag.TORUS2, (32, 32))
        assert (refined.coarse_components, refined.components) == (8, 8)
        assert refined.converged

    def test_counts_match_the_domain_counter(self):
        field = EquivariantField(weight=1, base=torus_base, chart_id="torus")
        counter = NodalCounter()
        count, _ = counter.count_with_nodal_set(field, ManifoldTag.TORUS3, (16, 16, 16))
        assert count == counter.count_nodal_domains(field, ManifoldTag.TORUS3, (16, 16, 16))
