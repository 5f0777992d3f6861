"""Tests for the disjoint-set forest."""

import numpy as np
from hypothesis import given, settings, strategies as st

from modules.union_find import UnionFind


class TestUnionFind:
    def test_singletons(self):
        forest = UnionFind(5)
        assert forest.num_components == 5
        assert forest.roots().tolist() == [0, 1, 2, 3, 4]

    def test_union_reports_merges(self):
        forest = UnionFind(4)
        assert forest.union(1, 3)
        assert not forest.union(3, 1)
        assert forest.num_components == 3

    def test_root_is_smallest_member(self):
        forest = UnionFind(6)
        forest.union_pairs(np.array([[5, 4], [4, 2], [3, 5]]))
        assert forest.find(5) == 2
        assert forest.roots().tolist() == [0, 1, 2, 2, 2, 2]

    @given(
        pairs=st.lists(
            st.tuples(st.integers(0, 19), st.integers(0, 19)), min_size=0, max_size=40
        )
    )
    @settings(deadline=None)
    def test_components_partition_elements(self, pairs):
        forest = UnionFind(20)
        forest.union_pairs(np.array(pairs, dtype=np.int64).reshape(-1, 2))

        roots = forest.roots()
        assert len(set(roots.tolist())) == forest.num_components
        assert all(roots[r] == r for r in roots.tolist())
        for a, b in pairs:
            assert forest.find(a) == forest.find(b)
