"""Winding degrees of complex fields around circles and grid cells."""

import math
from fractions import Fraction
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer

from classes.chart_grid import ChartGrid
from modules.errors import RadiusError, SamplingError

ComplexSampler = Callable[[np.ndarray, np.ndarray], np.ndarray]

MAX_PHASE_STEP = math.pi / 2.0
INTEGER_TOL = 0.1
RADIUS_SAFETY = 10.0


class WindingIndex(BaseModel):
    """Index of an isolated base zero.

    :ivar degree: Winding degree of f/|f| around the zero.
    :ivar m: Weight of the equivariant field.
    :ivar index: degree / m.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    degree: int
    m: int
    index: Fraction

    @field_serializer("index")
    def _index_as_text(self, value: Fraction) -> str:
        return str(value)


class ZeroCell(BaseModel):
    """A grid cell that contains a zero of a complex field.

    :ivar index: Index of the lower-left corner node.
    :ivar center: Center of the cell.
    :ivar degree: Winding degree around the cell corners.
    """

    index: tuple[int, int]
    center: tuple[float, float]
    degree: int


class Winding:
    """Utility class for winding numbers of complex fields in a 2-D chart."""

    @staticmethod
    def _circle_steps(
        f: ComplexSampler, center: tuple[float, float], radius: float, n: int
    ) -> tuple[np.ndarray, np.ndarray]:
        t = 2.0 * math.pi * np.arange(n) / n
        values = np.asarray(
            f(center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)), dtype=complex
        )
        if not np.all(np.isfinite(values)) or np.any(values == 0):
            raise RadiusError(
                f"Field vanishes on the circle of radius {radius} around {center}."
            )
        steps = np.angle(np.roll(values, -1) / values)
        return steps, values

    @classmethod
    def winding_index(
        cls,
        f: ComplexSampler,
        center: tuple[float, float],
        radius: float,
        n_samples: int = 256,
        m: int = 1,
        max_doublings: int = 12,
    ) -> WindingIndex:
        """Accumulated argument of f along a circle, divided by 2 pi m.

        Samples are doubled until every phase step is below pi/2 and two
        consecutive refinements agree on the degree.

        :param f: Vectorized complex function of the chart coordinates.
        :type f: ComplexSampler
        :param center: Circle center.
        :type center: tuple[float, float]
        :param radius: Circle radius.
        :type radius: float
        :param n_samples: Initial number of samples.
        :type n_samples: int
        :param m: Positive weight.
        :type m: int
        :param max_doublings: Refinements allowed before giving up.
        :type max_doublings: int
        :return: The index.
        :rtype: WindingIndex
        :raises RadiusError: If |f| is too small on the circle.
        :raises SamplingError: If the winding never settles on an integer.
        """
        if m <= 0:
            raise ValueError(f"Weight must be positive, got m={m}.")

        n = n_samples
        previous = None
        for _ in range(max_doublings):
            steps, values = cls._circle_steps(f, center, radius, n)
            if np.max(np.abs(steps)) <= MAX_PHASE_STEP:
                total = float(np.sum(steps)) / (2.0 * math.pi)
                if previous is not None and round(previous) == round(total):
                    break
                previous = total
            n *= 2
        else:
            raise SamplingError(
                f"Winding around {center} did not stabilize within {n // 2} samples."
            )

        # Chord interpolation error is bounded by the second differences
        interpolation = float(np.max(np.abs(np.roll(values, -1) - 2 * values + np.roll(values, 1))))
        if float(np.min(np.abs(values))) <= RADIUS_SAFETY * interpolation:
            raise RadiusError(
                f"|f| on the circle of radius {radius} is too small to resolve the winding."
            )
        if abs(total - round(total)) > INTEGER_TOL:
            raise SamplingError(f"Accumulated winding {total:.3f} is not near an integer.")

        degree = int(round(total))
        return WindingIndex(degree=degree, m=m, index=Fraction(degree, m))

    @staticmethod
    def corner_cells(values: np.ndarray, grid: ChartGrid) -> tuple[np.ndarray, np.ndarray]:
        """Sign crossings and corner windings of the cells between sample nodes.

        Cell (a, b) has the corners (a, b), (a+1, b), (a+1, b+1) and
        (a, b+1). Periodic axes contribute the wrap-around cells.

        :param values: Complex samples on the grid nodes, shape ``grid.dims``.
        :type values: np.ndarray
        :param grid: Two-dimensional grid.
        :type grid: ChartGrid
        :return: (mask of inside cells where both Re and Im change sign,
            winding degree around every cell).
        :rtype: tuple[np.ndarray, np.ndarray]
        """
        if len(grid.dims) != 2:
            raise ValueError("Corner windings need a two-dimensional grid.")

        inside = grid.inside_mask()
        n_x, n_y = grid.dims
        cells_x = n_x if grid.periodic[0] else n_x - 1
        cells_y = n_y if grid.periodic[1] else n_y - 1
        i = np.arange(cells_x)[:, None]
        j = np.arange(cells_y)[None, :]
        i1, j1 = (i + 1) % n_x, (j + 1) % n_y

        corners = [values[i, j], values[i1, j], values[i1, j1], values[i, j1]]
        re = np.stack([c.real for c in corners])
        im = np.stack([c.imag for c in corners])
        crossing = (re.min(axis=0) < 0) & (re.max(axis=0) > 0)
        crossing &= (im.min(axis=0) < 0) & (im.max(axis=0) > 0)
        crossing &= inside[i, j] & inside[i1, j] & inside[i1, j1] & inside[i, j1]

        with np.errstate(divide="ignore", invalid="ignore"):
            turns = sum(
                np.angle(corners[(k + 1) % 4] / corners[k]) for k in range(4)
            ) / (2.0 * math.pi)
        degrees = np.where(np.isfinite(turns), np.rint(turns), 0).astype(int)
        return crossing, degrees

    @classmethod
    def base_zero_cells(cls, f: ComplexSampler, grid: ChartGrid) -> list[ZeroCell]:
        """Cells between sample nodes where both Re f and Im f change sign
        and the corner winding is nonzero.

        Sample nodes are the grid's cell centers. Periodic axes contribute
        the wrap-around cells.

        :param f: Vectorized complex function of the two chart coordinates.
        :type f: ComplexSampler
        :param grid: Two-dimensional grid.
        :type grid: ChartGrid
        :return: Zero cells in index order.
        :rtype: list[ZeroCell]
        """
        if len(grid.dims) != 2:
            raise ValueError("base_zero_cells needs a two-dimensional grid.")

        x, y = (np.broadcast_to(c, grid.dims) for c in grid.coords)
        values = np.asarray(f(x, y), dtype=complex)
        crossing, degrees = cls.corner_cells(values, grid)

        dx = float(x[1, 0] - x[0, 0])
        dy = float(y[0, 1] - y[0, 0])
        cells = []
        for a, b in zip(*np.nonzero(crossing & (degrees != 0))):
            cells.append(
                ZeroCell(
                    index=(int(a), int(b)),
                    center=(float(x[a, 0]) + dx / 2.0, float(y[0, b]) + dy / 2.0),
                    degree=int(degrees[a, b]),
                )
            )
        return cells
