"""The fundamental-domain solid of SL2(Z) and the weight-24 counterexample lift on it."""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from classes.chart_grid import ChartGrid, Gluing
from classes.equivariant_field import EquivariantField
from classes.manifold_tag import FrontGluing, ManifoldTag
from classes.q_series import DEFAULT_ORDER, UPPER_HALF_PLANE, QSeries
from modules.errors import ConfigurationError

BOUNDARY_TOL = 1e-12
FRONT_ARC = (math.pi / 3.0, 2.0 * math.pi / 3.0)


def in_fundamental_domain(z: complex) -> bool:
    """Whether z lies in {|x| <= 1/2, |z| >= 1}, boundary included.

    :param z: Point with Im z > 0.
    :type z: complex
    :return: Membership.
    :rtype: bool
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError(f"Point {z} is not in the upper half-plane.")
    return abs(z.real) <= 0.5 + BOUNDARY_TOL and abs(z) ** 2 >= 1.0 - BOUNDARY_TOL


def front_reference(theta: np.ndarray | float, phi: np.ndarray | float, weight: int = 24):
    """The analytic sign reference cos((k/2)(phi + 2 theta)) on the front arc.

    For the weight-24 lift this is cos(12(phi + 2 theta)).

    :param theta: Fiber angle.
    :type theta: np.ndarray | float
    :param phi: Arc angle in [pi/3, 2pi/3], z = exp(i phi).
    :type phi: np.ndarray | float
    :param weight: Weight k of the lifted form.
    :type weight: int
    :return: Reference values.
    """
    return np.cos((weight // 2) * (np.asarray(phi) + 2.0 * np.asarray(theta)))


def phi_series(order: int = DEFAULT_ORDER) -> QSeries:
    """The weight-24 series of the square of the discriminant form.

    :param order: Truncation order.
    :type order: int
    :return: Delta squared.
    :rtype: QSeries
    """
    return QSeries.delta(order).power(2, order)


def capped_field(series: QSeries, y_max: float) -> EquivariantField:
    """The lift of a series, switched to its leading term above ``y_max``.

    :param series: The modular form.
    :type series: QSeries
    :param y_max: Cusp truncation height.
    :type y_max: float
    :return: Field on the upper half-plane chart.
    :rtype: EquivariantField
    """
    half_weight = series.weight // 2

    def base(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        z = x + 1j * y
        values = np.empty(z.shape, dtype=complex)
        below = y <= y_max
        if np.any(below):
            values[below] = series.evaluate(z[below])
        if np.any(~below):
            values[~below] = series.leading_term(z[~below])
        return y**half_weight * values

    return EquivariantField(weight=series.weight, base=base, chart_id=UPPER_HALF_PLANE)


class PhaseOffset(BaseModel):
    """Phase of y^(k/2) F(z) exp(i (k/2) phi) along the front arc.

    :ivar offset: Mean phase, folded into (-pi/2, pi/2].
    :ivar spread: Largest deviation from the mean.
    :ivar constant: Whether the spread is below tolerance.
    """

    offset: float
    spread: float
    constant: bool


class FaceAgreement(BaseModel):
    """Sign comparison of the lift with an analytic reference on one face.

    :ivar face: ``side`` or ``front``.
    :ivar compared: Cells farther than one cell from the reference zero set.
    :ivar agreeing: Compared cells whose signs match.
    :ivar phase_offset: Front-arc phase report, front face only.
    """

    face: str
    compared: int
    agreeing: int
    phase_offset: Optional[PhaseOffset] = None

    @property
    def agrees(self) -> bool:
        """True when every compared cell matches."""
        return self.compared > 0 and self.compared == self.agreeing


class FundamentalSolid(BaseModel):
    """The solid M0 = F x S^1 over the truncated fundamental domain.

    The base is parametrized by x = cos(phi), y = sin(phi) + v (y_max - sin(phi))
    with phi in [pi/3, 2pi/3] and v in [0, 1]: columns are vertical lines,
    row v = 0 is the front arc and the first and last columns are the sides.
    Cap rows above ``y_max`` carry the cusp cap.

    :ivar resolution: Cell counts (n_phi, n_v, n_theta).
    :ivar y_max: Cusp truncation height.
    :ivar cap_rows: Rows of the cusp cap above y_max.
    :ivar cap_height: Height covered by the cap rows.
    :ivar front_gluing: How front cells are identified.
    """

    resolution: tuple[int, int, int]
    y_max: float = Field(default=2.0, gt=1.0)
    cap_rows: int = Field(default=4, ge=0)
    cap_height: float = Field(default=1.0, gt=0)
    front_gluing: FrontGluing = FrontGluing.OVERLAP

    @field_validator("resolution")
    @classmethod
    def _even_columns(cls, value: tuple[int, int, int]) -> tuple[int, int, int]:
        if value[0] % 2:
            raise ValueError("n_phi must be even so that front columns pair up")
        return value

    @property
    def d_phi(self) -> float:
        """Angular width of a column."""
        return (FRONT_ARC[1] - FRONT_ARC[0]) / self.resolution[0]

    @property
    def d_theta(self) -> float:
        """Fiber width of a cell."""
        return 2.0 * math.pi / self.resolution[2]

    def phi_angles(self) -> np.ndarray:
        """Column arc angles, decreasing from 2pi/3 so that x increases.

        :return: phi_i for every column.
        :rtype: np.ndarray
        """
        return FRONT_ARC[1] - (np.arange(self.resolution[0]) + 0.5) * self.d_phi

    def thetas(self) -> np.ndarray:
        """Fiber samples theta_k = k * d_theta.

        :return: Fiber angles.
        :rtype: np.ndarray
        """
        return np.arange(self.resolution[2]) * self.d_theta

    def heights(self) -> np.ndarray:
        """Cell-center heights y of every column and row, cap included.

        :return: Array of shape (n_phi, n_v + cap_rows).
        :rtype: np.ndarray
        """
        n_v = self.resolution[1]
        arc = np.sin(self.phi_angles())[:, None]
        v = (np.arange(n_v) + 0.5) / n_v
        body = arc + v[None, :] * (self.y_max - arc)
        cap = self.y_max + (np.arange(self.cap_rows) + 0.5) * (self.cap_height / max(self.cap_rows, 1))
        cap = np.broadcast_to(cap[None, :], (self.resolution[0], self.cap_rows))
        return np.concatenate([body, cap], axis=1)

    def front_targets(self, column: int, k: int) -> list[tuple[int, int]]:
        """Front cells glued to front cell (column, k) by (phi, theta) -> (pi - phi, theta + phi).

        :param column: Column index.
        :type column: int
        :param k: Fiber index.
        :type k: int
        :return: Target (column, fiber index) pairs.
        :rtype: list[tuple[int, int]]
        """
        n_theta = self.resolution[2]
        shift = self.phi_angles()[column] / self.d_theta
        base = math.floor(shift + BOUNDARY_TOL)
        mirror = self.resolution[0] - 1 - column
        targets = [(mirror, (k + base) % n_theta)]
        if self.front_gluing is FrontGluing.OVERLAP and shift - base > BOUNDARY_TOL:
            targets.append((mirror, (k + base + 1) % n_theta))
        return targets

    def _front_gluing(self, dims: tuple[int, int, int]) -> Gluing:
        n_phi, _, n_theta = dims
        if self.front_gluing is FrontGluing.EXACT and n_theta % (12 * n_phi):
            raise ConfigurationError(
                f"Exact front gluing needs n_theta to be a multiple of 12 * n_phi "
                f"(n_theta={n_theta}, n_phi={n_phi}); use the overlap gluing instead."
            )

        sources, targets = [], []
        ks = np.arange(n_theta)
        for column in range(n_phi):
            for mirror, k_target in self.front_targets(column, 0):
                sources.append(np.ravel_multi_index((column, 0, ks), dims))
                targets.append(np.ravel_multi_index((mirror, 0, (ks + k_target) % n_theta), dims))
        return Gluing(
            name="front", source=np.concatenate(sources), target=np.concatenate(targets)
        )

    def to_grid(self) -> ChartGrid:
        """Discretize the solid; columns wrap (side gluing) and theta wraps.

        :return: The grid with the front gluing attached.
        :rtype: ChartGrid
        :raises ConfigurationError: If the exact front gluing does not fit.
        """
        n_phi, n_v, n_theta = self.resolution
        dims = (n_phi, n_v + self.cap_rows, n_theta)
        x = np.cos(self.phi_angles())
        return ChartGrid(
            manifold=ManifoldTag.MODULAR_SOLID,
            dims=dims,
            axis_names=("x", "y", "theta"),
            coords=(x[:, None, None], self.heights()[:, :, None], self.thetas()[None, None, :]),
            periodic=(True, False, True),
            gluings=[self._front_gluing(dims)],
            params={
                "y_max": self.y_max,
                "cap_rows": self.cap_rows,
                "front_gluing": self.front_gluing.value,
            },
        )

    def front_phase_offset(self, series: QSeries, tol: float = 1e-8) -> PhaseOffset:
        """Measure the phase of y^(k/2) F e^(i(k/2)phi) along the front arc.

        :param series: The modular form.
        :type series: QSeries
        :param tol: Spread below which the offset counts as constant.
        :type tol: float
        :return: The offset report.
        :rtype: PhaseOffset
        """
        phi = self.phi_angles()
        z = np.exp(1j * phi)
        values = series.evaluate(z) * np.exp(1j * (series.weight // 2) * phi)
        # Fold into (-pi/2, pi/2]: a sign flip is a shift of the reference zeros by pi
        phases = np.angle(values)
        phases = np.where(phases > math.pi / 2, phases - math.pi, phases)
        phases = np.where(phases <= -math.pi / 2, phases + math.pi, phases)
        offset = float(np.mean(phases))
        spread = float(np.max(np.abs(phases - offset)))
        return PhaseOffset(offset=offset, spread=spread, constant=spread < tol)

    def face_sign_agreement(self, series: QSeries, face: str) -> FaceAgreement:
        """Compare the lift on a face with its analytic reference.

        The side face x = -1/2 is compared with cos(k theta) and the front arc
        with ``front_reference``. Cells with a sign change of the reference
        among their face neighbors are skipped.

        :param series: The modular form.
        :type series: QSeries
        :param face: ``side`` or ``front``.
        :type face: str
        :return: The comparison.
        :rtype: FaceAgreement
        """
        field = series.as_field()
        theta = self.thetas()[None, :]
        weight = series.weight
        phase = None

        if face == "side":
            n_v = self.resolution[1]
            ys = math.sqrt(3.0) / 2.0 + (np.arange(n_v) + 0.5) / n_v * (self.y_max - math.sqrt(3.0) / 2.0)
            values = field.sample(np.full((n_v, 1), -0.5), ys[:, None], theta)
            reference = np.broadcast_to(np.cos(weight * theta), values.shape)
        elif face == "front":
            phi = self.phi_angles()[:, None]
            values = field.sample(np.cos(phi), np.sin(phi), theta)
            reference = np.broadcast_to(front_reference(theta, phi, weight), values.shape)
            phase = self.front_phase_offset(series)
        else:
            raise ValueError(f"Unknown face '{face}', expected 'side' or 'front'.")

        ref_sign = np.sign(reference)
        near_zero = ref_sign == 0
        for axis in (0, 1):
            near_zero |= ref_sign != np.roll(ref_sign, 1, axis=axis)
            near_zero |= ref_sign != np.roll(ref_sign, -1, axis=axis)
        far = ~near_zero

        agreeing = int(np.count_nonzero(np.sign(values)[far] == ref_sign[far]))
        return FaceAgreement(
            face=face, compared=int(np.count_nonzero(far)), agreeing=agreeing, phase_offset=phase
        )

    def nodal_face_rows(self, grid: ChartGrid, signs: np.ndarray, labels: np.ndarray) -> list[dict]:
        """Cells on the front, side and top faces where the sign flips in theta.

        :param grid: Grid built by ``to_grid``.
        :type grid: ChartGrid
        :param signs: Cell signs on the grid.
        :type signs: np.ndarray
        :param labels: Component labels on the grid.
        :type labels: np.ndarray
        :return: Rows with keys face, x, y, theta, sign, label.
        :rtype: list[dict]
        """
        n_v = self.resolution[1]
        x = np.broadcast_to(grid.coords[0], grid.dims)
        y = np.broadcast_to(grid.coords[1], grid.dims)
        theta = np.broadcast_to(grid.coords[2], grid.dims)
        flips = signs != np.roll(signs, -1, axis=2)

        faces = {
            "front": flips[:, 0, :],
            "side": flips[0, :, :],
            "top": flips[:, n_v - 1, :],
        }
        rows = []
        for face, mask in faces.items():
            for a, b in zip(*np.nonzero(mask)):
                if face == "front":
                    full = (a, 0, b)
                elif face == "side":
                    full = (0, a, b)
                else:
                    full = (a, n_v - 1, b)
                rows.append(
                    {
                        "face": face,
                        "x": round(float(x[full]), 6),
                        "y": round(float(y[full]), 6),
                        "theta": round(float(theta[full]), 6),
                        "sign": int(signs[full]),
                        "label": int(labels[full]),
                    }
                )
        return rows
