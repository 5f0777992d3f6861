"""Sign fields on chart grids and their connected components."""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import ndimage

from classes.chart_grid import ChartGrid
from modules.union_find import UnionFind

GridSampler = Callable[..., np.ndarray]


def slab_bounds(n: int, threads: int) -> list[tuple[int, int]]:
    """Split ``range(n)`` into at most ``threads`` contiguous nonempty slabs.

    :param n: Length of axis 0.
    :type n: int
    :param threads: Requested number of slabs.
    :type threads: int
    :return: (start, stop) pairs in order.
    :rtype: list[tuple[int, int]]
    """
    chunks = np.array_split(np.arange(n), max(1, min(threads, n)))
    return [(int(c[0]), int(c[-1]) + 1) for c in chunks if len(c)]


class SignLabeling(BaseModel):
    """Per-cell signs and the components of equal nonzero sign.

    :ivar signs: Cell signs in {-1, 0, +1}.
    :ivar labels: Component id per cell, 0 for zero cells. Ids are ordered by
        the lowest flat cell index of each component.
    :ivar n_pos: Number of positive components.
    :ivar n_neg: Number of negative components.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    signs: np.ndarray
    labels: np.ndarray
    n_pos: int
    n_neg: int

    @property
    def total(self) -> int:
        """Total number of components."""
        return self.n_pos + self.n_neg

    @staticmethod
    def sign_field(
        sampler: GridSampler, grid: ChartGrid, zero_tol: float = 0.0, threads: int = 1
    ) -> np.ndarray:
        """Sample a real function at every cell center and take signs.

        Values with ``|v| <= zero_tol`` and cells outside the domain get 0.

        :param sampler: Vectorized function of the grid's coordinate arrays.
        :type sampler: GridSampler
        :param grid: Grid to sample on.
        :type grid: ChartGrid
        :param zero_tol: Magnitude at or below which a value counts as zero.
        :type zero_tol: float
        :param threads: Number of slabs sampled concurrently.
        :type threads: int
        :return: int8 array of shape ``grid.dims``.
        :rtype: np.ndarray
        """

        def sample_slab(bounds: tuple[int, int]) -> np.ndarray:
            start, stop = bounds
            shape = (stop - start,) + tuple(grid.dims[1:])
            values = np.broadcast_to(
                np.asarray(sampler(*grid.slab_coords(start, stop)), dtype=float), shape
            )
            signs = np.zeros(shape, dtype=np.int8)
            signs[values > zero_tol] = 1
            signs[values < -zero_tol] = -1
            return signs

        bounds = slab_bounds(grid.dims[0], threads)
        with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
            parts = list(pool.map(sample_slab, bounds))

        signs = np.concatenate(parts, axis=0)
        signs[~grid.inside_mask()] = 0
        return signs

    @classmethod
    def label(cls, signs: np.ndarray, grid: ChartGrid, threads: int = 1) -> "SignLabeling":
        """Label the face-connected components of equal nonzero sign.

        Axis 0 is cut into slabs labeled concurrently. Labels touching across
        slab seams, periodic wraps and gluings are then merged with a
        union-find, so the result does not depend on ``threads``.

        :param signs: Cell signs of shape ``grid.dims``.
        :type signs: np.ndarray
        :param grid: Grid providing adjacency.
        :type grid: ChartGrid
        :param threads: Number of slabs labeled concurrently.
        :type threads: int
        :return: The labeling.
        :rtype: SignLabeling
        """
        signs = np.asarray(signs, dtype=np.int8)
        structure = ndimage.generate_binary_structure(signs.ndim, 1)
        bounds = slab_bounds(signs.shape[0], threads)

        def label_slab(slab: tuple[int, int]) -> tuple[np.ndarray, int, np.ndarray, int]:
            start, stop = slab
            pos, n_pos = ndimage.label(signs[start:stop] == 1, structure=structure)
            neg, n_neg = ndimage.label(signs[start:stop] == -1, structure=structure)
            return pos, n_pos, neg, n_neg

        with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
            slab_labels = list(pool.map(label_slab, bounds))

        # Provisional ids: positives of every slab first, then negatives
        total_pos = sum(part[1] for part in slab_labels)
        provisional = np.zeros(signs.shape, dtype=np.int64)
        pos_offset, neg_offset = 0, total_pos
        for (start, stop), (pos, n_pos, neg, n_neg) in zip(bounds, slab_labels):
            block = np.where(pos > 0, pos.astype(np.int64) + pos_offset, 0)
            block += np.where(neg > 0, neg.astype(np.int64) + neg_offset, 0)
            provisional[start:stop] = block
            pos_offset += n_pos
            neg_offset += n_neg

        pairs = cls._touching_pairs(signs, provisional, grid, bounds)
        forest = UnionFind(neg_offset + 1)
        forest.union_pairs(pairs)
        roots = forest.roots()[provisional]

        labels = cls._canonical_labels(roots)
        n_pos = len(np.unique(roots[signs == 1]))
        n_neg = len(np.unique(roots[signs == -1]))
        return cls(signs=signs, labels=labels, n_pos=n_pos, n_neg=n_neg)

    @staticmethod
    def _touching_pairs(
        signs: np.ndarray,
        provisional: np.ndarray,
        grid: ChartGrid,
        bounds: list[tuple[int, int]],
    ) -> np.ndarray:
        """Provisional label pairs that must be merged.

        :return: Unique pairs of provisional ids, shape (k, 2).
        :rtype: np.ndarray
        """
        chunks = []

        def collect(s_a, s_b, l_a, l_b) -> None:
            same = (s_a == s_b) & (s_a != 0)
            if np.any(same):
                chunks.append(np.stack([l_a[same], l_b[same]], axis=1))

        for _, stop in bounds[:-1]:
            collect(signs[stop - 1], signs[stop], provisional[stop - 1], provisional[stop])

        for axis, wraps in enumerate(grid.periodic):
            if wraps:
                collect(
                    np.take(signs, 0, axis=axis),
                    np.take(signs, -1, axis=axis),
                    np.take(provisional, 0, axis=axis),
                    np.take(provisional, -1, axis=axis),
                )

        flat_signs = signs.ravel()
        flat_labels = provisional.ravel()
        for gluing in grid.gluings:
            collect(
                flat_signs[gluing.source],
                flat_signs[gluing.target],
                flat_labels[gluing.source],
                flat_labels[gluing.target],
            )

        if not chunks:
            return np.empty((0, 2), dtype=np.int64)
        return np.unique(np.concatenate(chunks), axis=0)

    @staticmethod
    def _canonical_labels(roots: np.ndarray) -> np.ndarray:
        """Renumber component roots 1..K in order of their lowest flat cell index.

        :param roots: Root id per cell, 0 for zero cells.
        :type roots: np.ndarray
        :return: Canonical labels with the same shape.
        :rtype: np.ndarray
        """
        flat = roots.ravel()
        nonzero = np.flatnonzero(flat)
        unique_roots, first_seen = np.unique(flat[nonzero], return_index=True)
        ordered = unique_roots[np.argsort(first_seen)]

        mapping = np.zeros(int(flat.max(initial=0)) + 1, dtype=np.int64)
        mapping[ordered] = np.arange(1, len(ordered) + 1)
        return mapping[roots]
