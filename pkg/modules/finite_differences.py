"""Fourth-order central difference stencils on uniform grids."""

import warnings

import numpy as np

from modules.errors import AccuracyWarning

# Grid points lost on each side of every axis by one stencil application
STENCIL_MARGIN = 2

# Above this step the fourth-order stencils no longer resolve q-expansion
# oscillations to the tolerances the checks advertise
MAX_ACCURATE_STEP = 0.05

FIRST_WEIGHTS = {-2: 1.0, -1: -8.0, 1: 8.0, 2: -1.0}
SECOND_WEIGHTS = {-2: -1.0, -1: 16.0, 0: -30.0, 1: 16.0, 2: -1.0}


class FiniteDifferences:
    """Utility class applying central stencils to sampled arrays.

    Every derivative is returned on the interior of the input, i.e. with
    ``STENCIL_MARGIN`` points removed from both ends of every axis, so
    derivatives along different axes can be combined directly.
    """

    @staticmethod
    def check_step(h: float) -> None:
        """Warn when a step is too coarse for the advertised accuracy.

        :param h: Grid step.
        :type h: float
        """
        if h > MAX_ACCURATE_STEP:
            warnings.warn(
                f"Step h={h} exceeds {MAX_ACCURATE_STEP}; residuals are not reliable.",
                AccuracyWarning,
                stacklevel=3,
            )

    @staticmethod
    def _shifted(u: np.ndarray, axis: int, offset: int) -> np.ndarray:
        index = []
        for ax, size in enumerate(u.shape):
            if ax == axis:
                index.append(slice(STENCIL_MARGIN + offset, size - STENCIL_MARGIN + offset))
            else:
                index.append(slice(STENCIL_MARGIN, size - STENCIL_MARGIN))
        return u[tuple(index)]

    @staticmethod
    def interior(u: np.ndarray) -> np.ndarray:
        """Trim an array to the points where stencils are defined.

        :param u: Sampled array.
        :type u: np.ndarray
        :return: The interior view.
        :rtype: np.ndarray
        """
        return u[tuple(slice(STENCIL_MARGIN, size - STENCIL_MARGIN) for size in u.shape)]

    @classmethod
    def first(cls, u: np.ndarray, h: float, axis: int) -> np.ndarray:
        """First derivative along ``axis``.

        :param u: Sampled array.
        :type u: np.ndarray
        :param h: Grid step along ``axis``.
        :type h: float
        :param axis: Differentiation axis.
        :type axis: int
        :return: Derivative on the interior.
        :rtype: np.ndarray
        """
        total = sum(w * cls._shifted(u, axis, k) for k, w in FIRST_WEIGHTS.items())
        return total / (12.0 * h)

    @classmethod
    def second(cls, u: np.ndarray, h: float, axis: int) -> np.ndarray:
        """Second derivative along ``axis``.

        :param u: Sampled array.
        :type u: np.ndarray
        :param h: Grid step along ``axis``.
        :type h: float
        :param axis: Differentiation axis.
        :type axis: int
        :return: Second derivative on the interior.
        :rtype: np.ndarray
        """
        total = sum(w * cls._shifted(u, axis, k) for k, w in SECOND_WEIGHTS.items())
        return total / (12.0 * h * h)
