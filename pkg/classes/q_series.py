"""Truncated q-expansions of modular forms with rigorous tail bounds."""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from classes.equivariant_field import EquivariantField
from modules.errors import PrecisionError

DEFAULT_TAIL_TOL = 1e-12
DEFAULT_ORDER = 60
UPPER_HALF_PLANE = "upper_half_plane"


def truncated_product(a: list[int], b: list[int], length: int) -> list[int]:
    """Product of two power series given by coefficient lists, truncated.

    :param a: Coefficients of the first series, constant term first.
    :type a: list[int]
    :param b: Coefficients of the second series.
    :type b: list[int]
    :param length: Number of coefficients to keep.
    :type length: int
    :return: The first ``length`` coefficients of the product.
    :rtype: list[int]
    """
    out = [0] * length
    for i, a_i in enumerate(a[:length]):
        if a_i == 0:
            continue
        for j, b_j in enumerate(b[: length - i]):
            out[i + j] += a_i * b_j
    return out


def truncated_power(a: list[int], p: int, length: int) -> list[int]:
    """Raise a power series to a positive integer power by repeated squaring.

    :param a: Coefficients, constant term first.
    :type a: list[int]
    :param p: Exponent, p >= 1.
    :type p: int
    :param length: Number of coefficients to keep.
    :type length: int
    :return: Coefficients of ``a**p``.
    :rtype: list[int]
    """
    result: Optional[list[int]] = None
    square = (list(a) + [0] * length)[:length]
    while p:
        if p & 1:
            result = square if result is None else truncated_product(result, square, length)
        p >>= 1
        if p:
            square = truncated_product(square, square, length)
    assert result is not None
    return result


class FormValue(BaseModel):
    """A value of a truncated q-expansion with its tail bound.

    :ivar value: Sum of the kept terms.
    :ivar tail_bound: Upper bound on the modulus of the discarded terms.
    """

    value: complex
    tail_bound: float


class QSeries(BaseModel):
    """A truncated q-expansion sum_{n=n0}^{N} c_n q^n of a modular form.

    Coefficients are majorized by ``growth_constant * n**growth_exponent``,
    which is what the tail bound uses.

    :ivar weight: Even positive weight k.
    :ivar n0: Leading exponent.
    :ivar coeffs: c_n for n = n0..N.
    :ivar growth_constant: Majorant constant K.
    :ivar growth_exponent: Majorant exponent A.
    """

    weight: int
    n0: int = Field(ge=0)
    coeffs: list[int]
    growth_constant: float = Field(default=1.0, gt=0)
    growth_exponent: int = Field(default=12, ge=0)

    @field_validator("weight")
    @classmethod
    def _weight_even_positive(cls, value: int) -> int:
        if value <= 0 or value % 2:
            raise ValueError(f"weight must be an even positive integer, got {value}")
        return value

    @model_validator(mode="after")
    def _has_leading_term(self) -> "QSeries":
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("coeffs must start with a nonzero leading coefficient c_n0")
        return self

    @property
    def order(self) -> int:
        """Truncation order N."""
        return self.n0 + len(self.coeffs) - 1

    def coefficient(self, n: int) -> int:
        """Return c_n, zero below the leading exponent.

        :param n: Exponent, at most the truncation order.
        :type n: int
        :return: The coefficient.
        :rtype: int
        """
        if n > self.order:
            raise PrecisionError(
                f"c_{n} is beyond the truncation order {self.order}.", required_n=n
            )
        return self.coeffs[n - self.n0] if n >= self.n0 else 0

    @classmethod
    def delta(cls, n: int = DEFAULT_ORDER) -> "QSeries":
        """Coefficients tau(1..n) of the discriminant form q * prod (1 - q^k)^24.

        :param n: Truncation order N >= 1.
        :type n: int
        :return: The weight-12 series with n0 = 1.
        :rtype: QSeries
        """
        if n < 1:
            raise ValueError(f"Truncation order must be at least 1, got {n}.")

        # prod_{k>=1} (1 - q^k) up to q^(n-1); the factor q shifts it to q^n
        euler = [1] + [0] * (n - 1)
        for k in range(1, n):
            for d in range(n - 1, k - 1, -1):
                euler[d] -= euler[d - k]

        p2 = truncated_product(euler, euler, n)
        p4 = truncated_product(p2, p2, n)
        p8 = truncated_product(p4, p4, n)
        p16 = truncated_product(p8, p8, n)
        return cls(weight=12, n0=1, coeffs=truncated_product(p16, p8, n))

    def power(self, p: int, n: Optional[int] = None) -> "QSeries":
        """The p-th power of this series truncated at q^n.

        :param p: Exponent, p >= 1.
        :type p: int
        :param n: Truncation order; defaults to the largest order this
            series determines.
        :type n: Optional[int]
        :return: A series of weight ``p * weight``.
        :rtype: QSeries
        :raises PrecisionError: If this series is truncated too early.
        """
        if p < 1:
            raise ValueError(f"Power must be positive, got {p}.")
        n0 = self.n0 * p
        determined = self.order + (p - 1) * self.n0
        if n is None:
            n = determined
        if n > determined:
            raise PrecisionError(
                f"Order {n} of the {p}-th power needs the base series to order "
                f"{n - (p - 1) * self.n0}, but it stops at {self.order}.",
                required_n=n - (p - 1) * self.n0,
            )
        length = n - n0 + 1
        if length < 1:
            raise ValueError(f"Order {n} is below the leading exponent {n0}.")

        return QSeries(
            weight=self.weight * p,
            n0=n0,
            coeffs=truncated_power(self.coeffs, p, length),
            growth_constant=self.growth_constant**p,
            growth_exponent=p * self.growth_exponent + p - 1,
        )

    def _log_tail_ratio(self, order: int, y: float) -> float:
        """Log of (tail bound / leading-term modulus) at height y, or inf."""
        log_r = -2.0 * math.pi * y
        a = self.growth_exponent
        log_rho = a * math.log((order + 2) / (order + 1)) + log_r
        if log_rho >= 0:
            return math.inf
        log_tail = (
            math.log(self.growth_constant)
            + a * math.log(order + 1)
            + (order + 1) * log_r
            - math.log1p(-math.exp(log_rho))
        )
        log_lead = math.log(abs(self.coeffs[0])) + self.n0 * log_r
        return log_tail - log_lead

    def tail_bound(self, y: float, order: Optional[int] = None) -> float:
        """Bound on |sum_{n>N} c_n q^n| at Im z = y.

        :param y: Height Im z > 0.
        :type y: float
        :param order: Truncation order N; defaults to this series' order.
        :type order: Optional[int]
        :return: The bound, possibly inf when the majorant does not converge.
        :rtype: float
        """
        order = self.order if order is None else order
        ratio = self._log_tail_ratio(order, y)
        if ratio == math.inf:
            return math.inf
        lead = abs(self.coeffs[0]) * math.exp(-2.0 * math.pi * y * self.n0)
        return lead * math.exp(ratio)

    def required_order(self, y: float, tol: float = DEFAULT_TAIL_TOL) -> int:
        """Smallest truncation order whose relative tail bound is below tol at y.

        :param y: Minimal height.
        :type y: float
        :param tol: Relative tolerance against the leading term.
        :type tol: float
        :return: The order N.
        :rtype: int
        """
        log_tol = math.log(tol)
        order = self.n0
        while self._log_tail_ratio(order, y) > log_tol:
            order += 1
            if order > 100_000:
                raise PrecisionError(f"No usable truncation order at y={y}.")
        return order

    def check_precision(self, y_min: float, tol: float = DEFAULT_TAIL_TOL) -> None:
        """Raise unless the truncation meets the tolerance down to y_min.

        :param y_min: Smallest height that will be evaluated.
        :type y_min: float
        :param tol: Relative tolerance.
        :type tol: float
        :raises PrecisionError: Naming the order that would suffice.
        """
        if y_min <= 0:
            raise ValueError(f"Evaluation needs Im z > 0, got {y_min}.")
        if self._log_tail_ratio(self.order, y_min) > math.log(tol):
            required = self.required_order(y_min, tol)
            raise PrecisionError(
                f"Order {self.order} is too low at y={y_min:.4g}; need N >= {required}.",
                required_n=required,
            )

    def evaluate(self, z: np.ndarray | complex, tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
        """Vectorized sum of the kept terms at points of the upper half-plane.

        :param z: Points with Im z > 0.
        :type z: np.ndarray | complex
        :param tol: Relative tail tolerance enforced at the lowest point.
        :type tol: float
        :return: Complex values with the shape of ``z``.
        :rtype: np.ndarray
        """
        z = np.asarray(z, dtype=complex)
        self.check_precision(float(np.min(z.imag)), tol)

        q = np.exp(2j * math.pi * z)
        total = np.zeros_like(q)
        for c in reversed(self.coeffs):
            total = total * q + float(c)
        return total * q**self.n0

    def eval_form(self, z: complex, tol: float = DEFAULT_TAIL_TOL) -> FormValue:
        """Evaluate at one point together with the tail bound.

        :param z: Point with Im z > 0.
        :type z: complex
        :param tol: Relative tail tolerance.
        :type tol: float
        :return: Value and tail bound.
        :rtype: FormValue
        """
        value = complex(self.evaluate(np.asarray(z), tol))
        return FormValue(value=value, tail_bound=self.tail_bound(complex(z).imag))

    def leading_term(self, z: np.ndarray | complex) -> np.ndarray:
        """The dominant term c_n0 q^n0.

        :param z: Points of the upper half-plane.
        :type z: np.ndarray | complex
        :return: Complex values.
        :rtype: np.ndarray
        """
        z = np.asarray(z, dtype=complex)
        return self.coeffs[0] * np.exp(2j * math.pi * self.n0 * z)

    def lift_values(self, x: np.ndarray, y: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """Re(y^(k/2) F(x + iy) e^(-ik theta)) on broadcastable arrays.

        :param x: Real parts.
        :type x: np.ndarray
        :param y: Imaginary parts, positive.
        :type y: np.ndarray
        :param theta: Fiber angles.
        :type theta: np.ndarray
        :return: The real lift.
        :rtype: np.ndarray
        """
        return self.as_field().sample(x, y, theta)

    def eval_lift(self, z: complex, theta: float) -> float:
        """Evaluate the real lift at one point of the bundle.

        :param z: Base point in the upper half-plane.
        :type z: complex
        :param theta: Fiber angle.
        :type theta: float
        :return: Re(y^(k/2) F(z) e^(-ik theta)).
        :rtype: float
        """
        z = complex(z)
        return float(self.lift_values(np.asarray(z.real), np.asarray(z.imag), np.asarray(theta)))

    def as_field(self) -> EquivariantField:
        """The weight-k equivariant function y^(k/2) F(z) e^(-ik theta).

        :return: Field on the upper half-plane chart.
        :rtype: EquivariantField
        """
        half_weight = self.weight // 2

        def base(x: np.ndarray, y: np.ndarray) -> np.ndarray:
            x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
            return y**half_weight * self.evaluate(x + 1j * y)

        return EquivariantField(weight=self.weight, base=base, chart_id=UPPER_HALF_PLANE)
