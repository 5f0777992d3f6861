"""Disjoint-set forest used to merge labels across slab seams and gluings."""

import numpy as np


class UnionFind:
    """Union-find over the integers ``0..size-1`` with path compression.

    Roots are always the smallest member of their set, so merging order
    never changes the result.

    :ivar size: Number of elements.
    :ivar num_components: Current number of disjoint sets.
    """

    def __init__(self, size: int) -> None:
        """Create ``size`` singleton sets.

        :param size: Number of elements.
        :type size: int
        """
        self.size = size
        self.parents = list(range(size))
        self.num_components = size

    def find(self, elem: int) -> int:
        """Return the root of ``elem``, compressing the path taken.

        :param elem: Element to look up.
        :type elem: int
        :return: Root element of the set containing ``elem``.
        :rtype: int
        """
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]

        while elem != root:
            parent = self.parents[elem]
            self.parents[elem] = root
            elem = parent

        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets containing ``a`` and ``b``.

        :param a: First element.
        :type a: int
        :param b: Second element.
        :type b: int
        :return: True if two distinct sets were merged.
        :rtype: bool
        """
        root_a = self.find(a)
        root_b = self.find(b)
        if root_a == root_b:
            return False

        if root_a < root_b:
            self.parents[root_b] = root_a
        else:
            self.parents[root_a] = root_b
        self.num_components -= 1
        return True

    def union_pairs(self, pairs: np.ndarray) -> None:
        """Merge every row ``(a, b)`` of an integer array of shape (k, 2).

        :param pairs: Pairs of elements to merge.
        :type pairs: np.ndarray
        """
        for a, b in np.asarray(pairs, dtype=np.int64).reshape(-1, 2).tolist():
            self.union(a, b)

    def roots(self) -> np.ndarray:
        """Return the root of every element as an array.

        :return: Array of length ``size`` with each element's root.
        :rtype: np.ndarray
        """
        return np.fromiter(
            (self.find(i) for i in range(self.size)), dtype=np.int64, count=self.size
        )
