"""Equivariant functions on circle bundles and the fiberwise algebra of their real parts."""

import math
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from modules.errors import ChartMismatchError, SingularFiberError

# Lifts are phi(x, theta) = f(x) * exp(LIFT_SIGN * i * m * theta) everywhere in
# the toolkit. Fields written with exp(+i m theta) are stored with weight -m.
LIFT_SIGN = -1

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-10

BaseSampler = Callable[[np.ndarray, np.ndarray], np.ndarray]


def normalize_angles(angles: np.ndarray) -> np.ndarray:
    """Map angles into [0, 2*pi), folding values within ANGLE_TOL of 2*pi to 0.

    :param angles: Angles in radians.
    :type angles: np.ndarray
    :return: Normalized angles.
    :rtype: np.ndarray
    """
    wrapped = np.mod(np.asarray(angles, dtype=float), TWO_PI)
    return np.where(wrapped >= TWO_PI - ANGLE_TOL, 0.0, wrapped)


class BasePoint(BaseModel):
    """A point of a base chart.

    :ivar chart_id: Identifier of the chart the coordinates belong to.
    :ivar coords: The two chart coordinates.
    """

    model_config = ConfigDict(frozen=True)

    chart_id: str
    coords: tuple[float, float]


class FiberZeroSet(BaseModel):
    """Zeros of the real part of a lift along one fiber.

    :ivar base_point: Base point of the fiber, if known.
    :ivar angles: Sorted zero angles in [0, 2*pi).
    """

    base_point: Optional[BasePoint] = None
    angles: list[float]

    @classmethod
    def from_value(
        cls, f_value: complex, m: int, base_point: Optional[BasePoint] = None
    ) -> "FiberZeroSet":
        """Solve Re(f * exp(-i m theta)) = 0 on the fiber.

        With f = |f| exp(i arg f) the real part is |f| cos(arg f - m theta), so
        the zeros are theta_0 + k*pi/m with theta_0 = (arg f - pi/2)/m.

        :param f_value: Base value f(x).
        :type f_value: complex
        :param m: Positive weight.
        :type m: int
        :param base_point: Optional base point to record.
        :type base_point: Optional[BasePoint]
        :return: The 2m sorted zero angles.
        :rtype: FiberZeroSet
        :raises SingularFiberError: If f_value is zero.
        """
        if m <= 0:
            raise ValueError(f"Fiber zeros need a positive weight, got m={m}.")
        if f_value == 0:
            raise SingularFiberError(
                "Base value is zero: the real part vanishes on the whole fiber."
            )

        theta_0 = (np.angle(f_value) - math.pi / 2.0) / m
        angles = normalize_angles(theta_0 + np.arange(2 * m) * math.pi / m)
        return cls(base_point=base_point, angles=sorted(angles.tolist()))


class EquivariantField(BaseModel):
    """A weight-m equivariant function phi(x, theta) = f(x) exp(-i m theta).

    :ivar weight: The weight m, possibly negative.
    :ivar base: Vectorized sampler of the complex base function f.
    :ivar chart_id: Identifier of the chart the sampler expects.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weight: int
    base: BaseSampler
    chart_id: str

    @field_validator("chart_id")
    @classmethod
    def _chart_not_empty(cls, value: str) -> str:
        if not value:
            raise ValueError("chart_id must be a non-empty identifier")
        return value

    def base_value(self, x: BasePoint) -> complex:
        """Evaluate f at a base point.

        :param x: Base point in this field's chart.
        :type x: BasePoint
        :return: The complex value f(x).
        :rtype: complex
        :raises ChartMismatchError: If the point belongs to another chart.
        """
        if x.chart_id != self.chart_id:
            raise ChartMismatchError(
                f"Field expects chart '{self.chart_id}' but the point is in '{x.chart_id}'."
            )
        a, b = x.coords
        return complex(np.asarray(self.base(np.asarray(a), np.asarray(b))))

    def lift(self, x: BasePoint, theta: float) -> complex:
        """Evaluate the complex lift phi(x, theta).

        :param x: Base point.
        :type x: BasePoint
        :param theta: Fiber angle.
        :type theta: float
        :return: f(x) * exp(-i m theta).
        :rtype: complex
        """
        return self.base_value(x) * complex(
            np.exp(LIFT_SIGN * 1j * self.weight * theta)
        )

    def eval_real_part(self, x: BasePoint, theta: float) -> float:
        """Evaluate Re phi(x, theta) = Re f cos(m theta) - LIFT_SIGN Im f sin(m theta).

        :param x: Base point.
        :type x: BasePoint
        :param theta: Fiber angle.
        :type theta: float
        :return: The real part of the lift.
        :rtype: float
        """
        f = self.base_value(x)
        m_theta = self.weight * theta
        return f.real * math.cos(m_theta) - LIFT_SIGN * f.imag * math.sin(m_theta)

    def sample(self, a: np.ndarray, b: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """Evaluate the real part on broadcastable coordinate arrays.

        :param a: First base coordinate.
        :type a: np.ndarray
        :param b: Second base coordinate.
        :type b: np.ndarray
        :param theta: Fiber angle.
        :type theta: np.ndarray
        :return: Real part of the lift, broadcast over all inputs.
        :rtype: np.ndarray
        """
        f = np.asarray(self.base(a, b), dtype=complex)
        return np.real(f * np.exp(LIFT_SIGN * 1j * self.weight * np.asarray(theta)))

    def fiber_zeros(self, x: BasePoint) -> FiberZeroSet:
        """Zeros of theta -> Re phi(x, theta).

        When the lift turns the fiber the other way, the zeros are those of the
        conjugate value at weight |m|.

        :param x: Base point.
        :type x: BasePoint
        :return: The 2|m| zero angles.
        :rtype: FiberZeroSet
        """
        f = self.base_value(x)
        if LIFT_SIGN * self.weight > 0:
            f = f.conjugate()
        return FiberZeroSet.from_value(f, abs(self.weight), base_point=x)
