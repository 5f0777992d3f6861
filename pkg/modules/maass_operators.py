"""Weight-w hyperbolic Laplacians and their raising/lowering factorization on sampled patches."""

from typing import Callable, Iterable

import numpy as np
from pydantic import BaseModel

from modules.finite_differences import STENCIL_MARGIN, FiniteDifferences

ComplexSampler = Callable[[np.ndarray, np.ndarray], np.ndarray]

# Arrays are indexed [i_y, i_x]
Y_AXIS = 0
X_AXIS = 1


class HyperbolicPatch(BaseModel):
    """A square patch of the upper half-plane sampled with step h.

    :ivar center: Patch center, Im > 0.
    :ivar h: Grid step in x and y.
    :ivar n: Points per axis.
    """

    center: complex
    h: float
    n: int = 25

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Broadcastable x and y arrays of the patch.

        :return: (x of shape (1, n), y of shape (n, 1)).
        :rtype: tuple[np.ndarray, np.ndarray]
        """
        offsets = (np.arange(self.n) - (self.n - 1) / 2.0) * self.h
        return self.center.real + offsets[None, :], self.center.imag + offsets[:, None]

    def sample(self, sampler: ComplexSampler) -> tuple[np.ndarray, np.ndarray]:
        """Sample a function on the patch.

        :param sampler: Vectorized complex function of (x, y).
        :type sampler: ComplexSampler
        :return: (values, y) both of shape (n, n).
        :rtype: tuple[np.ndarray, np.ndarray]
        """
        x, y = self.coordinates()
        x, y = np.broadcast_arrays(x, y)
        return np.asarray(sampler(x, y), dtype=complex), np.array(y)


class MaassFit(BaseModel):
    """Best eigenvalue fit D_w u = c u for one weight.

    :ivar weight: The weight w.
    :ivar eigenvalue: Least-squares c.
    :ivar residual: max |D_w u - c u| / max |u| on the interior.
    """

    weight: int
    eigenvalue: complex
    residual: float


class MaassOperators:
    """Utility class applying D_w, K_k and L_k by central differences.

    Every operator returns values on the stencil interior of its input and
    takes the matching interior of ``y`` itself.
    """

    @staticmethod
    def maass_apply(weight: int, u: np.ndarray, y: np.ndarray, h: float) -> np.ndarray:
        """D_w u = y^2 (u_xx + u_yy) - 2 i w y u_x.

        :param weight: The weight w.
        :type weight: int
        :param u: Samples indexed [i_y, i_x].
        :type u: np.ndarray
        :param y: Heights of the samples.
        :type y: np.ndarray
        :param h: Grid step.
        :type h: float
        :return: D_w u on the interior.
        :rtype: np.ndarray
        """
        FiniteDifferences.check_step(h)
        y_in = FiniteDifferences.interior(y)
        laplacian = FiniteDifferences.second(u, h, X_AXIS) + FiniteDifferences.second(u, h, Y_AXIS)
        return y_in**2 * laplacian - 2j * weight * y_in * FiniteDifferences.first(u, h, X_AXIS)

    @staticmethod
    def raise_weight(k: int, u: np.ndarray, y: np.ndarray, h: float) -> np.ndarray:
        """K_k u = (z - zbar) d/dz u + k u = i y u_x + y u_y + k u.

        :param k: Weight of u.
        :type k: int
        :param u: Samples indexed [i_y, i_x].
        :type u: np.ndarray
        :param y: Heights of the samples.
        :type y: np.ndarray
        :param h: Grid step.
        :type h: float
        :return: K_k u on the interior.
        :rtype: np.ndarray
        """
        y_in = FiniteDifferences.interior(y)
        return (
            1j * y_in * FiniteDifferences.first(u, h, X_AXIS)
            + y_in * FiniteDifferences.first(u, h, Y_AXIS)
            + k * FiniteDifferences.interior(u)
        )

    @staticmethod
    def lower_weight(k: int, u: np.ndarray, y: np.ndarray, h: float) -> np.ndarray:
        """L_k u = (zbar - z) d/dzbar u - k u = -i y u_x + y u_y - k u.

        :param k: Weight of u.
        :type k: int
        :param u: Samples indexed [i_y, i_x].
        :type u: np.ndarray
        :param y: Heights of the samples.
        :type y: np.ndarray
        :param h: Grid step.
        :type h: float
        :return: L_k u on the interior.
        :rtype: np.ndarray
        """
        y_in = FiniteDifferences.interior(y)
        return (
            -1j * y_in * FiniteDifferences.first(u, h, X_AXIS)
            + y_in * FiniteDifferences.first(u, h, Y_AXIS)
            - k * FiniteDifferences.interior(u)
        )

    @classmethod
    def fit_eigenvalue(cls, weight: int, u: np.ndarray, y: np.ndarray, h: float) -> MaassFit:
        """Least-squares c with D_w u ~ c u, and the resulting residual.

        :param weight: The weight w.
        :type weight: int
        :param u: Samples indexed [i_y, i_x].
        :type u: np.ndarray
        :param y: Heights of the samples.
        :type y: np.ndarray
        :param h: Grid step.
        :type h: float
        :return: The fit.
        :rtype: MaassFit
        """
        applied = cls.maass_apply(weight, u, y, h)
        u_in = FiniteDifferences.interior(u)
        c = complex(np.vdot(u_in, applied) / np.vdot(u_in, u_in))
        residual = float(np.max(np.abs(applied - c * u_in)) / np.max(np.abs(u_in)))
        return MaassFit(weight=weight, eigenvalue=c, residual=residual)

    @classmethod
    def maass_scan(
        cls, sampler: ComplexSampler, weights: Iterable[int], patch: HyperbolicPatch
    ) -> MaassFit:
        """Scan weights and return the one whose fit has the smallest residual.

        :param sampler: Vectorized complex function of (x, y).
        :type sampler: ComplexSampler
        :param weights: Candidate weights.
        :type weights: Iterable[int]
        :param patch: Sampling patch.
        :type patch: HyperbolicPatch
        :return: The best fit.
        :rtype: MaassFit
        """
        u, y = patch.sample(sampler)
        fits = [cls.fit_eigenvalue(w, u, y, patch.h) for w in weights]
        return min(fits, key=lambda fit: fit.residual)

    @classmethod
    def identity_residual(cls, k: int, sampler: ComplexSampler, patch: HyperbolicPatch) -> float:
        """Residual of D_k = L_(k+1) K_k + k(k+1) on a sampled function.

        :param k: Weight.
        :type k: int
        :param sampler: Vectorized complex function of (x, y).
        :type sampler: ComplexSampler
        :param patch: Sampling patch; needs at least 9 points per axis.
        :type patch: HyperbolicPatch
        :return: max |D_k u - L_(k+1) K_k u - k(k+1) u| / max |u|.
        :rtype: float
        """
        FiniteDifferences.check_step(patch.h)
        u, y = patch.sample(sampler)
        raised = cls.raise_weight(k, u, y, patch.h)
        composed = cls.lower_weight(k + 1, raised, FiniteDifferences.interior(y), patch.h)

        inner = (slice(STENCIL_MARGIN, -STENCIL_MARGIN),) * 2
        direct = cls.maass_apply(k, u, y, patch.h)[inner]
        u_in = FiniteDifferences.interior(FiniteDifferences.interior(u))
        residual = direct - composed - k * (k + 1) * u_in
        return float(np.max(np.abs(residual)) / np.max(np.abs(u_in)))
