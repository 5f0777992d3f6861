"""Cell-centered discretizations of the manifolds with their gluing identifications."""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from classes.manifold_tag import ManifoldTag
from modules.errors import ConfigurationError

MIN_AXIS_CELLS = 8


class Gluing(BaseModel):
    """An identification between boundary cells.

    Cell ``source[i]`` is adjacent to cell ``target[i]`` for every i. Both
    arrays hold flat (C-order) cell indices.

    :ivar name: Human-readable name of the identification.
    :ivar source: Flat indices of the source cells.
    :ivar target: Flat indices of the target cells.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    source: np.ndarray
    target: np.ndarray


class ChartGrid(BaseModel):
    """A manifold discretized into a box of cells.

    Axes flagged periodic wrap around; every other identification is listed
    in ``gluings``. Cells outside ``inside`` are treated as genuine boundary
    and never carry a sign.

    :ivar manifold: Which manifold the grid discretizes.
    :ivar dims: Cell counts per axis.
    :ivar axis_names: Coordinate names passed positionally to samplers.
    :ivar coords: Cell-center coordinate arrays, broadcastable to ``dims``.
    :ivar periodic: Per-axis wrap-around flag.
    :ivar inside: Optional mask of cells belonging to the domain.
    :ivar gluings: Additional cell identifications.
    :ivar params: Construction parameters, kept for reports.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    manifold: ManifoldTag
    dims: tuple[int, ...]
    axis_names: tuple[str, ...]
    coords: tuple[np.ndarray, ...]
    periodic: tuple[bool, ...]
    inside: Optional[np.ndarray] = None
    gluings: list[Gluing] = Field(default_factory=list)
    params: dict[str, float | int | str] = Field(default_factory=dict)

    @property
    def size(self) -> int:
        """Total number of cells."""
        return int(np.prod(self.dims))

    @classmethod
    def build(
        cls, manifold: ManifoldTag, resolution: tuple[int, ...], **params
    ) -> "ChartGrid":
        """Build the grid of a manifold at a resolution.

        :param manifold: Manifold to discretize.
        :type manifold: ManifoldTag
        :param resolution: Cell counts per axis, each at least 8.
        :type resolution: tuple[int, ...]
        :param params: Manifold-specific parameters (``radius`` and ``center``
            for discs; ``y_max``, ``cap_rows`` and ``front_gluing`` for the
            modular solid).
        :return: The discretization.
        :rtype: ChartGrid
        :raises ConfigurationError: If the resolution does not fit the manifold.
        """
        expected_axes = {
            ManifoldTag.TORUS3: 3,
            ManifoldTag.TORUS2: 2,
            ManifoldTag.DISC2: 2,
            ManifoldTag.DISC2_X_CIRCLE: 3,
            ManifoldTag.MODULAR_SOLID: 3,
        }[manifold]
        if len(resolution) != expected_axes:
            raise ConfigurationError(
                f"{manifold.value} needs {expected_axes} resolution axes, got {len(resolution)}."
            )
        if min(resolution) < MIN_AXIS_CELLS:
            raise ConfigurationError(
                f"Every resolution axis must have at least {MIN_AXIS_CELLS} cells, got {resolution}."
            )

        if manifold in (ManifoldTag.TORUS3, ManifoldTag.TORUS2):
            return cls._torus(manifold, resolution)
        if manifold in (ManifoldTag.DISC2, ManifoldTag.DISC2_X_CIRCLE):
            return cls._disc(manifold, resolution, **params)

        from classes.modular_solid import FundamentalSolid

        solid = FundamentalSolid(resolution=resolution, **params)
        return solid.to_grid()

    @classmethod
    def _torus(cls, manifold: ManifoldTag, resolution: tuple[int, ...]) -> "ChartGrid":
        ndim = len(resolution)
        coords = []
        for axis, n in enumerate(resolution):
            shape = [1] * ndim
            shape[axis] = n
            coords.append(((np.arange(n) + 0.5) / n).reshape(shape))
        names = ("x1", "x2", "x3") if ndim == 3 else ("x", "y")
        return cls(
            manifold=manifold,
            dims=tuple(resolution),
            axis_names=names,
            coords=tuple(coords),
            periodic=(True,) * ndim,
        )

    @classmethod
    def _disc(
        cls,
        manifold: ManifoldTag,
        resolution: tuple[int, ...],
        radius: float = 1.0,
        center: tuple[float, float] = (0.0, 0.0),
    ) -> "ChartGrid":
        n_x, n_y = resolution[0], resolution[1]
        xs = center[0] - radius + (np.arange(n_x) + 0.5) * (2.0 * radius / n_x)
        ys = center[1] - radius + (np.arange(n_y) + 0.5) * (2.0 * radius / n_y)
        inside = (xs[:, None] - center[0]) ** 2 + (ys[None, :] - center[1]) ** 2 <= radius**2
        params: dict[str, float | int | str] = {
            "radius": radius,
            "center_x": center[0],
            "center_y": center[1],
        }

        if manifold is ManifoldTag.DISC2:
            return cls(
                manifold=manifold,
                dims=(n_x, n_y),
                axis_names=("x", "y"),
                coords=(xs[:, None], ys[None, :]),
                periodic=(False, False),
                inside=inside,
                params=params,
            )

        # Fiber samples sit on the slices theta = k * 2*pi / n_theta
        n_theta = resolution[2]
        thetas = np.arange(n_theta) * (2.0 * math.pi / n_theta)
        return cls(
            manifold=manifold,
            dims=(n_x, n_y, n_theta),
            axis_names=("x", "y", "theta"),
            coords=(xs[:, None, None], ys[None, :, None], thetas[None, None, :]),
            periodic=(False, False, True),
            inside=inside[:, :, None],
            params=params,
        )

    def slab_coords(self, start: int, stop: int) -> tuple[np.ndarray, ...]:
        """Coordinate arrays restricted to cells ``start:stop`` of axis 0.

        :param start: First axis-0 index.
        :type start: int
        :param stop: One past the last axis-0 index.
        :type stop: int
        :return: Coordinate arrays broadcastable to the slab shape.
        :rtype: tuple[np.ndarray, ...]
        """
        return tuple(c[start:stop] if c.shape[0] > 1 else c for c in self.coords)

    def inside_mask(self) -> np.ndarray:
        """The domain mask broadcast to the full grid shape.

        :return: Boolean array of shape ``dims``.
        :rtype: np.ndarray
        """
        if self.inside is None:
            return np.ones(self.dims, dtype=bool)
        return np.broadcast_to(self.inside, self.dims)

    def adjacency_pairs(self) -> np.ndarray:
        """All undirected face-adjacent cell pairs, including wraps and gluings.

        Intended for inspection and small grids; labeling never materializes
        this list.

        :return: Array of shape (k, 2) of flat indices with the smaller first.
        :rtype: np.ndarray
        """
        flat = np.arange(self.size).reshape(self.dims)
        chunks = []
        for axis, n in enumerate(self.dims):
            lower = np.take(flat, np.arange(n - 1), axis=axis).ravel()
            upper = np.take(flat, np.arange(1, n), axis=axis).ravel()
            chunks.append(np.stack([lower, upper], axis=1))
            if self.periodic[axis]:
                first = np.take(flat, [0], axis=axis).ravel()
                last = np.take(flat, [n - 1], axis=axis).ravel()
                chunks.append(np.stack([last, first], axis=1))
        for gluing in self.gluings:
            chunks.append(np.stack([gluing.source, gluing.target], axis=1))

        pairs = np.concatenate(chunks).astype(np.int64)
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        return np.unique(np.sort(pairs, axis=1), axis=0)

    def neighbor_counts(self) -> np.ndarray:
        """Number of distinct neighbors of every cell.

        :return: Integer array of shape ``dims``.
        :rtype: np.ndarray
        """
        pairs = self.adjacency_pairs()
        counts = np.bincount(pairs.ravel(), minlength=self.size)
        return counts.reshape(self.dims)

