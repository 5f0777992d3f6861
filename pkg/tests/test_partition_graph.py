"""Tests for partition pairs and the layered region graph."""

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from classes.chart_grid import ChartGrid
from classes.equivariant_field import EquivariantField
from classes.manifold_tag import ManifoldTag
from classes.nodal_counter import NodalCounter
from classes.partition_graph import LayeredGraph, PartitionPair, count_via_graph
from modules.errors import DegenerateFieldError, NonGenericPairError
from modules.random_fields import RandomFieldFactory

TWO_PI = 2.0 * np.pi


@pytest.fixture(scope="module")
def disc():
    return ChartGrid.build(ManifoldTag.DISC2, (64, 64))


def identity(x, y):
    return x + 1j * y


def plane_wave(x, y):
    return np.exp(1j * TWO_PI * x) + 0.0 * y


def two_zeros(x, y):
    z = x + 1j * y
    return z * (z - 0.4)


def shallow_crossing(x, y):
    return y + 1j * (y - 0.05 * x)


def grid_count(field, m):
    lift = EquivariantField(weight=m, base=field, chart_id="disc2")
    return NodalCounter().count_nodal_domains(lift, ManifoldTag.DISC2_X_CIRCLE, (64, 64, 8 * m))


class TestPartitionPair:
    def test_quadrants(self, disc):
        pp = PartitionPair.from_field(identity, disc)
        assert (pp.n_p, pp.n_q) == (2, 2)
        assert pp.overlaps().all()
        assert sorted(pp.c_p.tolist()) == [0, 1]
        assert pp.has_split_quadruple()
        assert pp.check_generic_pair()

    def test_plane_wave_bands(self, disc):
        pp = PartitionPair.from_field(plane_wave, disc)
        assert (pp.n_p, pp.n_q) == (5, 4)
        assert pp.check_generic_pair()
        # Bands only meet their neighbors
        assert pp.overlaps().sum() == 8

    def test_vanishing_part_is_degenerate(self, disc):
        with pytest.raises(DegenerateFieldError):
            PartitionPair.from_field(lambda x, y: x + 0j * y, disc)

    def test_closed_common_zero_curve_is_rejected(self, disc):
        def circle(x, y):
            r = x**2 + y**2 - 0.25
            return r + 1j * r

        pp = PartitionPair.from_field(circle, disc)
        assert not pp.check_generic_pair()
        with pytest.raises(NonGenericPairError):
            count_via_graph(circle, 1, disc)

    def test_shallow_crossing_is_generic(self, disc):
        # The zero lines share a long strip of cells but cross only once
        pp = PartitionPair.from_field(shallow_crossing, disc)
        assert pp.check_generic_pair()
        assert count_via_graph(shallow_crossing, 1, disc) == 2

    def test_coloring_shape_is_checked(self, disc):
        pp = PartitionPair.from_field(identity, disc)
        with pytest.raises(ValueError):
            pp.with_colorings([0, 1, 1], [0, 1])


class TestLayeredGraph:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_zero_inside_gives_two(self, disc, m):
        assert count_via_graph(identity, m, disc) == 2

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_no_zero_gives_two_m(self, disc, m):
        assert count_via_graph(plane_wave, m, disc) == 2 * m

    @pytest.mark.parametrize("m", [1, 4])
    def test_constant_field(self, disc, m):
        assert count_via_graph(lambda x, y: (1.0 + 1.0j) + 0.0 * x * y, m, disc) == 2 * m

    def test_single_regions_with_equal_colors(self, disc):
        pp = PartitionPair.from_field(lambda x, y: (1.0 + 1.0j) + 0.0 * x * y, disc)
        recolored = pp.with_colorings([0], [0])
        assert LayeredGraph.build(recolored, 1).graph_components() == 2

    def test_graph_without_edges(self):
        graph = LayeredGraph(m=1, n_p=1, n_q=1, edges=np.empty((0, 2), dtype=np.int64))
        assert graph.n_vertices == 4
        assert graph.graph_components() == 4

    def test_rows_and_offsets(self, disc):
        graph = LayeredGraph.build(PartitionPair.from_field(plane_wave, disc), 2)
        assert graph.n_rows == 8
        assert graph.offsets().tolist() == [0, 4, 9, 13, 18, 22, 27, 31, 36]
        assert graph.n_vertices == 36
        assert graph.vertex_rows()[4] == 1

    def test_export_uses_row_column_pairs(self, disc):
        graph = LayeredGraph.build(PartitionPair.from_field(identity, disc), 1)
        exported = graph.to_export()
        assert len(exported) == len(graph.edges)
        for (row_a, col_a), (row_b, col_b) in exported:
            assert row_b == (row_a + 1) % 4
            assert 0 <= col_a < graph.row_size(row_a)
            assert 0 <= col_b < graph.row_size(row_b)

    def test_weight_must_be_positive(self, disc):
        with pytest.raises(ValueError):
            LayeredGraph.build(PartitionPair.from_field(identity, disc), 0)


@given(seed=st.integers(0, 10_000))
@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_random_fields_match_their_planted_count(seed, disc):
    planted = RandomFieldFactory(seed=seed).draw()
    pp = PartitionPair.from_field(planted, disc)
    assume(pp.check_generic_pair())
    for m in (1, 2):
        count = LayeredGraph.build(pp, m).graph_components()
        assert count == planted.expected_count(m)
        assert count <= 2 * m


colorings = st.tuples(
    st.lists(st.integers(0, 1), min_size=5, max_size=5),
    st.lists(st.integers(0, 1), min_size=4, max_size=4),
)


@given(colors=colorings, m=st.integers(1, 3))
@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_every_component_reaches_a_p_row(colors, m, disc):
    pp = PartitionPair.from_field(plane_wave, disc).with_colorings(*colors)
    graph = LayeredGraph.build(pp, m)
    roots = graph.components().roots()
    odd = graph.vertex_rows() % 2 == 1
    assert set(roots.tolist()) == set(roots[odd].tolist())


@given(colors=colorings)
@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_flipping_both_colorings_keeps_the_edge_count(colors, disc):
    pp = PartitionPair.from_field(plane_wave, disc).with_colorings(*colors)
    flipped = pp.with_colorings(1 - pp.c_p, 1 - pp.c_q)
    assert len(LayeredGraph.build(pp, 2).edges) == len(LayeredGraph.build(flipped, 2).edges)


@given(
    c_p=st.lists(st.integers(0, 1), min_size=2, max_size=2),
    c_q=st.lists(st.integers(0, 1), min_size=2, max_size=2),
    m=st.integers(1, 3),
)
@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_split_quadruple_forces_two_components(c_p, c_q, m, disc):
    pp = PartitionPair.from_field(identity, disc).with_colorings(c_p, c_q)
    if pp.has_split_quadruple():
        assert LayeredGraph.build(pp, m).graph_components() == 2
    else:
        assert len(set(c_p)) == 1 or len(set(c_q)) == 1


def test_two_zeros_give_two_domains(disc):
    assert count_via_graph(two_zeros, 2, disc) == 2


@pytest.mark.parametrize(
    "field, m",
    [(identity, 1), (identity, 3), (plane_wave, 1), (plane_wave, 2), (two_zeros, 2)],
)
def test_graph_count_matches_the_grid_count(field, m, disc):
    assert count_via_graph(field, m, disc) == grid_count(field, m).total


def test_trig_fields_match_the_grid_count(disc):
    factory = RandomFieldFactory(seed=11)
    compared = 0
    for _ in range(6):
        trig = factory.draw_trig()
        pp = PartitionPair.from_field(trig, disc)
        if not pp.check_generic_pair():
            continue
        for m in (1, 2):
            count = grid_count(trig, m)
            if count.converged:
                assert LayeredGraph.build(pp, m).graph_components() == count.total
                compared += 1
    assert compared > 0
