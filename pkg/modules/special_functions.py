"""Jacobi polynomials and bracketed root finding."""

from typing import Callable

import numpy as np
from scipy.optimize import brentq


class SpecialFunctions:
    """Utility class for the special functions the sphere module needs."""

    @staticmethod
    def jacobi(n: int, a: float, b: float, x: np.ndarray | float) -> np.ndarray | float:
        """Evaluate the Jacobi polynomial P_n^(a, b)(x) by forward recurrence.

        :param n: Degree, n >= 0.
        :type n: int
        :param a: First parameter, a > -1.
        :type a: float
        :param b: Second parameter, b > -1.
        :type b: float
        :param x: Evaluation points in [-1, 1].
        :type x: np.ndarray | float
        :return: P_n^(a, b)(x) with the shape of ``x``.
        :rtype: np.ndarray | float
        """
        if n < 0:
            raise ValueError(f"Jacobi degree must be nonnegative, got {n}.")
        if a <= -1 or b <= -1:
            raise ValueError(f"Jacobi parameters must exceed -1, got a={a}, b={b}.")

        scalar = np.ndim(x) == 0
        x = np.asarray(x, dtype=float)
        p_prev = np.ones_like(x)
        if n == 0:
            return float(p_prev) if scalar else p_prev

        p_curr = (a + 1) + (a + b + 2) * (x - 1) / 2
        for k in range(2, n + 1):
            s = 2 * k + a + b
            lead = 2 * k * (k + a + b) * (s - 2)
            middle = (s - 1) * (s * (s - 2) * x + a * a - b * b)
            trail = 2 * (k + a - 1) * (k + b - 1) * s
            p_prev, p_curr = p_curr, (middle * p_curr - trail * p_prev) / lead

        return float(p_curr) if scalar else p_curr

    @staticmethod
    def bracketed_zeros(
        func: Callable[[np.ndarray], np.ndarray],
        lower: float,
        upper: float,
        n_mesh: int = 4096,
        xtol: float = 1e-14,
    ) -> list[float]:
        """Find the zeros of a scalar function by sign changes on a mesh.

        Each bracketing mesh interval is refined with Brent's method. A mesh
        node that is an exact zero is reported as-is.

        :param func: Vectorized real function.
        :type func: Callable[[np.ndarray], np.ndarray]
        :param lower: Left end of the open search interval.
        :type lower: float
        :param upper: Right end of the open search interval.
        :type upper: float
        :param n_mesh: Number of mesh intervals.
        :type n_mesh: int
        :param xtol: Absolute tolerance passed to brentq.
        :type xtol: float
        :return: Sorted zeros in (lower, upper).
        :rtype: list[float]
        """
        # The end points are excluded: zeros at the boundary belong to other factors
        mesh = np.linspace(lower, upper, n_mesh + 1)[1:-1]
        values = np.asarray(func(mesh), dtype=float)
        signs = np.sign(values)

        zeros = [float(t) for t in mesh[signs == 0]]
        brackets = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        for i in brackets:
            zeros.append(
                brentq(lambda t: float(func(np.asarray(t))), mesh[i], mesh[i + 1], xtol=xtol)
            )
        return sorted(zeros)
