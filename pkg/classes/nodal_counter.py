"""Nodal-domain counting on chart grids, fiber zero counts and the nodal-set connectivity proxy."""

import math
from typing import Callable, Union

import numpy as np
from pydantic import BaseModel

from classes.chart_grid import ChartGrid
from classes.equivariant_field import BasePoint, EquivariantField
from classes.manifold_tag import ManifoldTag
from classes.sign_labeling import GridSampler, SignLabeling
from modules.errors import SingularFiberError

CountTarget = Union[EquivariantField, Callable[..., np.ndarray]]

FIBERED = (ManifoldTag.TORUS3, ManifoldTag.MODULAR_SOLID, ManifoldTag.DISC2_X_CIRCLE)


class NodalCount(BaseModel):
    """Nodal-domain counts at a resolution and at twice that resolution.

    :ivar manifold: Manifold counted on.
    :ivar resolution: Coarse resolution.
    :ivar n_pos: Positive domains at the fine resolution.
    :ivar n_neg: Negative domains at the fine resolution.
    :ivar total: n_pos + n_neg.
    :ivar converged: Whether both resolutions agree.
    :ivar coarse_n_pos: Positive domains at the coarse resolution.
    :ivar coarse_n_neg: Negative domains at the coarse resolution.
    """

    manifold: ManifoldTag
    resolution: tuple[int, ...]
    n_pos: int
    n_neg: int
    total: int
    converged: bool
    coarse_n_pos: int
    coarse_n_neg: int


class NodalSetCount(BaseModel):
    """Components of the nodal-set witness at a resolution and at twice it.

    :ivar components: Components at the fine resolution.
    :ivar coarse_components: Components at the coarse resolution.
    :ivar converged: Whether both resolutions agree.
    """

    components: int
    coarse_components: int
    converged: bool


def grid_sampler(target: CountTarget, manifold: ManifoldTag) -> GridSampler:
    """Adapt a field or scalar sampler to the coordinate arrays of a grid.

    On the three-torus the fiber is the x1 circle, theta = 2 pi x1, over the
    (x2, x3) base. Other fibered grids pass (x, y, theta) straight through.

    :param target: Equivariant field or vectorized real function of the grid
        coordinates.
    :type target: CountTarget
    :param manifold: Grid manifold.
    :type manifold: ManifoldTag
    :return: Vectorized real function of the grid coordinate arrays.
    :rtype: GridSampler
    """
    if not isinstance(target, EquivariantField):
        return target
    if manifold not in FIBERED:
        raise ValueError(f"An equivariant field needs a fibered grid, not {manifold.value}.")
    if manifold is ManifoldTag.TORUS3:
        return lambda x1, x2, x3: target.sample(x2, x3, 2.0 * math.pi * x1)
    return lambda x, y, theta: target.sample(x, y, theta)


class NodalCounter:
    """Count nodal domains of real functions on the discretized manifolds.

    :ivar threads: Number of slabs sampled and labeled concurrently.
    :ivar zero_tol: Magnitude at or below which a sample counts as zero.
    """

    def __init__(self, threads: int = 1, zero_tol: float = 0.0) -> None:
        """Initialize the counter.

        :param threads: Number of slabs processed concurrently.
        :type threads: int
        :param zero_tol: Zero threshold for sign sampling.
        :type zero_tol: float
        """
        self.threads = threads
        self.zero_tol = zero_tol

    def label_grid(self, target: CountTarget, grid: ChartGrid) -> SignLabeling:
        """Sample signs on a grid and label their components.

        :param target: Field or sampler.
        :type target: CountTarget
        :param grid: Grid to count on.
        :type grid: ChartGrid
        :return: The labeling.
        :rtype: SignLabeling
        """
        sampler = grid_sampler(target, grid.manifold)
        signs = SignLabeling.sign_field(sampler, grid, self.zero_tol, self.threads)
        return SignLabeling.label(signs, grid, self.threads)

    def _label_pair(
        self, target: CountTarget, manifold: ManifoldTag, resolution: tuple[int, ...], **params
    ) -> list[tuple[SignLabeling, ChartGrid]]:
        labeled = []
        for scale in (1, 2):
            grid = ChartGrid.build(manifold, tuple(scale * n for n in resolution), **params)
            labeled.append((self.label_grid(target, grid), grid))
        return labeled

    @staticmethod
    def _nodal_count(
        manifold: ManifoldTag, resolution: tuple[int, ...], coarse: SignLabeling, fine: SignLabeling
    ) -> NodalCount:
        return NodalCount(
            manifold=manifold,
            resolution=tuple(resolution),
            n_pos=fine.n_pos,
            n_neg=fine.n_neg,
            total=fine.total,
            converged=(coarse.n_pos, coarse.n_neg) == (fine.n_pos, fine.n_neg),
            coarse_n_pos=coarse.n_pos,
            coarse_n_neg=coarse.n_neg,
        )

    def count_nodal_domains(
        self, target: CountTarget, manifold: ManifoldTag, resolution: tuple[int, ...], **params
    ) -> NodalCount:
        """Count at a resolution and at twice it; converged when both agree.

        :param target: Field or sampler.
        :type target: CountTarget
        :param manifold: Manifold to discretize.
        :type manifold: ManifoldTag
        :param resolution: Coarse cell counts per axis.
        :type resolution: tuple[int, ...]
        :param params: Grid parameters forwarded to ``ChartGrid.build``.
        :return: The counts.
        :rtype: NodalCount
        """
        (coarse, _), (fine, _) = self._label_pair(target, manifold, resolution, **params)
        return self._nodal_count(manifold, resolution, coarse, fine)

    def count_with_nodal_set(
        self, target: CountTarget, manifold: ManifoldTag, resolution: tuple[int, ...], **params
    ) -> tuple[NodalCount, NodalSetCount]:
        """Nodal domains and nodal-set witness components from the same two labelings.

        :param target: Field or sampler.
        :type target: CountTarget
        :param manifold: Manifold to discretize.
        :type manifold: ManifoldTag
        :param resolution: Coarse cell counts per axis.
        :type resolution: tuple[int, ...]
        :param params: Grid parameters forwarded to ``ChartGrid.build``.
        :return: Domain counts and nodal-set components.
        :rtype: tuple[NodalCount, NodalSetCount]
        """
        (coarse, coarse_grid), (fine, fine_grid) = self._label_pair(
            target, manifold, resolution, **params
        )
        coarse_components = self.nodal_set_components(coarse, coarse_grid)
        components = self.nodal_set_components(fine, fine_grid)
        nodal_set = NodalSetCount(
            components=components,
            coarse_components=coarse_components,
            converged=components == coarse_components,
        )
        return self._nodal_count(manifold, resolution, coarse, fine), nodal_set

    def fiber_zero_count(self, field: EquivariantField, base_point: BasePoint, n_theta: int) -> int:
        """Sign changes of theta -> Re phi(x, theta) around one fiber.

        :param field: The equivariant field.
        :type field: EquivariantField
        :param base_point: Base point of the fiber.
        :type base_point: BasePoint
        :param n_theta: Uniform samples on the fiber, at least 4|m|.
        :type n_theta: int
        :return: Number of cyclic sign changes.
        :rtype: int
        :raises SingularFiberError: If |f| at the base point is within zero_tol.
        """
        if n_theta < 4 * abs(field.weight):
            raise ValueError(f"Need at least {4 * abs(field.weight)} fiber samples, got {n_theta}.")
        if abs(field.base_value(base_point)) <= self.zero_tol:
            raise SingularFiberError(f"Base point {base_point.coords} is a zero of the base field.")

        a, b = base_point.coords
        thetas = (np.arange(n_theta) + 0.5) * (2.0 * math.pi / n_theta)
        signs = np.sign(field.sample(np.asarray(a), np.asarray(b), thetas))
        signs = signs[signs != 0]
        if len(signs) == 0:
            return 0
        return int(np.count_nonzero(signs != np.roll(signs, -1)))

    def nodal_set_components(self, labeling: SignLabeling, grid: ChartGrid) -> int:
        """Components of the cells that witness the nodal set.

        A witness cell is a zero cell inside the domain or a cell with a face
        neighbor, across wraps and gluings included, of the opposite sign.
        Every nodal sheet is covered by a band two cells thick, so sheets less
        than four cells apart are reported as one component.

        :param labeling: Signs on the grid.
        :type labeling: SignLabeling
        :param grid: The grid.
        :type grid: ChartGrid
        :return: Number of witness components.
        :rtype: int
        """
        signs = labeling.signs
        inside = grid.inside_mask()
        witness = (signs == 0) & inside
        for axis, wraps in enumerate(grid.periodic):
            for shift in (1, -1):
                opposite = signs * np.roll(signs, shift, axis=axis) < 0
                if not wraps:
                    edge = [slice(None)] * signs.ndim
                    edge[axis] = 0 if shift == 1 else -1
                    opposite[tuple(edge)] = False
                witness |= opposite

        flat = witness.ravel()
        flat_signs = signs.ravel()
        for gluing in grid.gluings:
            opposite = flat_signs[gluing.source] * flat_signs[gluing.target] < 0
            flat[gluing.source[opposite]] = True
            flat[gluing.target[opposite]] = True

        witness_signs = flat.reshape(signs.shape).astype(np.int8)
        return SignLabeling.label(witness_signs, grid, self.threads).n_pos
