"""Partitions of a disc by the signs of Re f and Im f, and the layered graph whose components are nodal domains."""

from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import ndimage

from classes.chart_grid import ChartGrid
from classes.sign_labeling import SignLabeling
from modules.errors import DegenerateFieldError, NonGenericPairError
from modules.union_find import UnionFind
from modules.winding import Winding

ComplexSampler = Callable[[np.ndarray, np.ndarray], np.ndarray]

# Widest cluster of winding cells still read as one isolated common zero
MAX_COMMON_ZERO_DIAMETER = 3
EIGHT_NEIGHBORS = np.ones((3, 3), dtype=bool)


class PartitionPair(BaseModel):
    """Two region labelings of a disc grid with binary colorings.

    Region ids run from 1; 0 marks cells outside every region.

    :ivar grid: The disc grid.
    :ivar p_labels: P-region id per cell (sign components of Re f).
    :ivar q_labels: Q-region id per cell (sign components of Im f).
    :ivar c_p: Coloring of P regions, indexed by id - 1.
    :ivar c_q: Coloring of Q regions, indexed by id - 1.
    :ivar samples: Values of f on the grid nodes.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: ChartGrid
    p_labels: np.ndarray
    q_labels: np.ndarray
    c_p: np.ndarray
    c_q: np.ndarray
    samples: np.ndarray

    @property
    def n_p(self) -> int:
        """Number of P regions."""
        return len(self.c_p)

    @property
    def n_q(self) -> int:
        """Number of Q regions."""
        return len(self.c_q)

    @staticmethod
    def _regions(values: np.ndarray, grid: ChartGrid, name: str) -> tuple[np.ndarray, np.ndarray]:
        signs = np.sign(values).astype(np.int8)
        signs[~grid.inside_mask()] = 0
        if not np.any(signs):
            raise DegenerateFieldError(f"{name} vanishes on the whole disc.")

        labeling = SignLabeling.label(signs, grid)
        n_regions = labeling.total
        colors = np.zeros(n_regions, dtype=np.int8)
        positive = labeling.labels[signs == 1]
        colors[np.unique(positive) - 1] = 1
        return labeling.labels, colors

    @classmethod
    def from_field(cls, f: ComplexSampler, grid: ChartGrid) -> "PartitionPair":
        """P from the sign components of Re f, Q from those of Im f.

        A region is colored 1 where its function is positive.

        :param f: Vectorized complex function of (x, y).
        :type f: ComplexSampler
        :param grid: Disc grid.
        :type grid: ChartGrid
        :return: The partition pair.
        :rtype: PartitionPair
        :raises DegenerateFieldError: If Re f or Im f vanishes on the disc.
        """
        x, y = (np.broadcast_to(c, grid.dims) for c in grid.coords)
        values = np.asarray(f(x, y), dtype=complex)
        p_labels, c_p = cls._regions(values.real, grid, "Re f")
        q_labels, c_q = cls._regions(values.imag, grid, "Im f")
        return cls(
            grid=grid,
            p_labels=p_labels,
            q_labels=q_labels,
            c_p=c_p,
            c_q=c_q,
            samples=values,
        )

    def with_colorings(self, c_p: np.ndarray, c_q: np.ndarray) -> "PartitionPair":
        """The same partitions with other colorings.

        :param c_p: New P coloring.
        :type c_p: np.ndarray
        :param c_q: New Q coloring.
        :type c_q: np.ndarray
        :return: A new pair.
        :rtype: PartitionPair
        """
        c_p = np.asarray(c_p, dtype=np.int8)
        c_q = np.asarray(c_q, dtype=np.int8)
        if c_p.shape != self.c_p.shape or c_q.shape != self.c_q.shape:
            raise ValueError("colorings must have one entry per region")
        return self.model_copy(update={"c_p": c_p, "c_q": c_q})

    def overlaps(self) -> np.ndarray:
        """O[a, b] is True when some cell lies in P region a+1 and Q region b+1.

        :return: Boolean matrix of shape (n_p, n_q).
        :rtype: np.ndarray
        """
        both = (self.p_labels > 0) & (self.q_labels > 0)
        overlap = np.zeros((self.n_p, self.n_q), dtype=bool)
        overlap[self.p_labels[both] - 1, self.q_labels[both] - 1] = True
        return overlap

    def has_split_quadruple(self) -> bool:
        """Whether P regions a1, a2 and Q regions b1, b2 with split colorings
        all overlap pairwise.

        :return: True if such four regions exist.
        :rtype: bool
        """
        overlap = self.overlaps().astype(np.int64)
        p1, p0 = overlap[self.c_p == 1], overlap[self.c_p == 0]
        q1, q0 = self.c_q == 1, self.c_q == 0
        # Pairs (b1, b2) covered by one P region of each color
        covered_by_p1 = p1[:, q1].T @ p1[:, q0] > 0
        covered_by_p0 = p0[:, q1].T @ p0[:, q0] > 0
        return bool(np.any(covered_by_p1 & covered_by_p0))

    def check_generic_pair(self) -> bool:
        """Heuristic test that the common zero set holds no closed curve.

        Crossing cells lie between four sample nodes on which both Re f and
        Im f change sign. The pair is rejected when the crossing cells
        enclose a hole, or when the crossing cells with a nonzero corner
        winding cluster wider than a few cells. Crossing cells without
        winding are ignored. This is a witness, not a certificate.

        :return: True if the pair looks generic.
        :rtype: bool
        """
        crossing, degrees = Winding.corner_cells(self.samples, self.grid)
        if not np.any(crossing):
            return True
        if np.any(ndimage.binary_fill_holes(crossing) & ~crossing):
            return False

        winding = crossing & (degrees != 0)
        components, _ = ndimage.label(winding, structure=EIGHT_NEIGHBORS)
        for box in ndimage.find_objects(components):
            extent = max(s.stop - s.start for s in box)
            if extent > MAX_COMMON_ZERO_DIAMETER:
                return False
        return True


class LayeredGraph(BaseModel):
    """The graph on 4m rows of regions; odd rows are P regions, even rows Q.

    Vertex (r, a) has id ``offsets[r] + a`` with a counted from 0. Row 4m
    is row 0.

    :ivar m: Weight.
    :ivar n_p: Vertices in odd rows.
    :ivar n_q: Vertices in even rows.
    :ivar edges: Vertex-id pairs, shape (k, 2).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    m: int
    n_p: int
    n_q: int
    edges: np.ndarray

    @property
    def n_rows(self) -> int:
        """Number of rows, 4m."""
        return 4 * self.m

    def row_size(self, row: int) -> int:
        """Vertices in a row."""
        return self.n_p if row % 2 else self.n_q

    def offsets(self) -> np.ndarray:
        """First vertex id of every row.

        :return: Array of length 4m + 1; the last entry is the vertex count.
        :rtype: np.ndarray
        """
        sizes = [self.row_size(r) for r in range(self.n_rows)]
        return np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)

    @property
    def n_vertices(self) -> int:
        """Total number of vertices."""
        return 2 * self.m * (self.n_p + self.n_q)

    def vertex_rows(self) -> np.ndarray:
        """Row of every vertex id."""
        offsets = self.offsets()
        return np.repeat(np.arange(self.n_rows), np.diff(offsets))

    @classmethod
    def build(cls, pp: PartitionPair, m: int) -> "LayeredGraph":
        """Build G_m(P, Q, c_P, c_Q).

        For every j < m, with c' = 1 - c:
          (4j, a)-(4j+1, b)   when Q(a) meets P(b) and c_Q'(a) = c_P(b);
          (4j+1, a)-(4j+2, b) when P(a) meets Q(b) and c_P(a) = c_Q(b);
          (4j+2, a)-(4j+3, b) when Q(a) meets P(b) and c_Q(a) = c_P'(b);
          (4j+3, a)-(4j+4, b) when P(a) meets Q(b) and c_P'(a) = c_Q'(b).

        :param pp: The partition pair.
        :type pp: PartitionPair
        :param m: Positive weight.
        :type m: int
        :return: The graph.
        :rtype: LayeredGraph
        """
        if m <= 0:
            raise ValueError(f"Weight must be positive, got m={m}.")
        graph = cls(m=m, n_p=pp.n_p, n_q=pp.n_q, edges=np.empty((0, 2), dtype=np.int64))
        offsets = graph.offsets()
        overlap = pp.overlaps()
        c_p = pp.c_p.astype(np.int64)
        c_q = pp.c_q.astype(np.int64)

        rules = (
            (overlap.T, (1 - c_q)[:, None] == c_p[None, :]),
            (overlap, c_p[:, None] == c_q[None, :]),
            (overlap.T, c_q[:, None] == (1 - c_p)[None, :]),
            (overlap, (1 - c_p)[:, None] == (1 - c_q)[None, :]),
        )
        chunks = []
        for j in range(m):
            for step, (meets, colors) in enumerate(rules):
                row = 4 * j + step
                next_row = (row + 1) % graph.n_rows
                a, b = np.nonzero(meets & colors)
                chunks.append(np.stack([offsets[row] + a, offsets[next_row] + b], axis=1))

        graph.edges = np.concatenate(chunks).astype(np.int64)
        return graph

    def components(self) -> UnionFind:
        """Union-find over the vertices with every edge merged."""
        forest = UnionFind(self.n_vertices)
        forest.union_pairs(self.edges)
        return forest

    def graph_components(self) -> int:
        """Number of connected components.

        :return: Component count.
        :rtype: int
        """
        return self.components().num_components

    def to_export(self) -> list[list[list[int]]]:
        """Edges as [[row, column], [row, column]] pairs.

        :return: JSON-ready adjacency.
        :rtype: list[list[list[int]]]
        """
        offsets = self.offsets()
        rows = self.vertex_rows()
        return [
            [[int(rows[u]), int(u - offsets[rows[u]])], [int(rows[v]), int(v - offsets[rows[v]])]]
            for u, v in self.edges.tolist()
        ]


def count_via_graph(f: ComplexSampler, m: int, grid: ChartGrid) -> int:
    """Nodal domains of Re(f e^{-im theta}) over a disc, counted on G_m.

    :param f: Vectorized complex function of (x, y).
    :type f: ComplexSampler
    :param m: Positive weight.
    :type m: int
    :param grid: Disc grid.
    :type grid: ChartGrid
    :return: Number of components of the graph.
    :rtype: int
    :raises NonGenericPairError: If the partitions fail the genericity check.
    """
    pp = PartitionPair.from_field(f, grid)
    if not pp.check_generic_pair():
        raise NonGenericPairError(
            "The common zero set of Re f and Im f looks like it contains a closed curve."
        )
    return LayeredGraph.build(pp, m).graph_components()
