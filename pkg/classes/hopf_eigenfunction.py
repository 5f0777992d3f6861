"""Laplace eigenfunctions of the round three-sphere in Hopf coordinates."""

import math

import numpy as np
from pydantic import BaseModel, Field, model_validator

from classes.equivariant_field import EquivariantField
from modules.finite_differences import STENCIL_MARGIN, FiniteDifferences
from modules.special_functions import SpecialFunctions

HOPF_BASE = "hopf_alpha_theta"
MIN_POLE_MARGIN_STEPS = 5
# First theta of the residual lattice; the phi lattice starts at twice this
LATTICE_OFFSET = 0.4


class HopfEigenfunction(BaseModel):
    """T = C (cos a e^{i theta})^A (sin a e^{i phi})^B P_n^{(|B|, |A|)}(cos 2a).

    Here A = m1 + m2, B = m2 - m1 and n = N/2 - max(|m1|, |m2|). A negative
    exponent stands for the conjugate factor raised to |A| (resp. |B|).

    :ivar N: Degree; the eigenvalue is -N(N+2).
    :ivar m1: First weight, |m1| <= N/2 and N/2 - m1 integral.
    :ivar m2: Second weight, same constraints.
    :ivar normalization: Positive constant C.
    """

    N: int = Field(ge=0)
    m1: float
    m2: float
    normalization: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _weights_fit_degree(self) -> "HopfEigenfunction":
        half = self.N / 2.0
        for name, m in (("m1", self.m1), ("m2", self.m2)):
            if abs(m) > half:
                raise ValueError(f"|{name}| must be at most N/2 = {half}, got {m}")
            if not float(half - m).is_integer():
                raise ValueError(f"N/2 - {name} must be an integer, got {half - m}")
        return self

    @property
    def theta_exponent(self) -> int:
        """A = m1 + m2."""
        return int(round(self.m1 + self.m2))

    @property
    def phi_exponent(self) -> int:
        """B = m2 - m1."""
        return int(round(self.m2 - self.m1))

    @property
    def jacobi_degree(self) -> int:
        """n = N/2 - max(|m1|, |m2|)."""
        return int(round(self.N / 2.0 - max(abs(self.m1), abs(self.m2))))

    @property
    def eigenvalue(self) -> int:
        """N(N+2), so that Delta T = -N(N+2) T."""
        return self.N * (self.N + 2)

    def alpha_factor(self, alpha: np.ndarray) -> np.ndarray:
        """The real alpha-dependent factor cos^|A| sin^|B| P_n(cos 2a), times C.

        :param alpha: Angles in [0, pi/2].
        :type alpha: np.ndarray
        :return: Factor values.
        :rtype: np.ndarray
        """
        alpha = np.asarray(alpha, dtype=float)
        a, b = abs(self.theta_exponent), abs(self.phi_exponent)
        jacobi = SpecialFunctions.jacobi(self.jacobi_degree, b, a, np.cos(2.0 * alpha))
        return self.normalization * np.cos(alpha) ** a * np.sin(alpha) ** b * jacobi

    def evaluate(self, alpha: np.ndarray, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
        """Evaluate T on broadcastable Hopf coordinates.

        :param alpha: Angles in [0, pi/2].
        :type alpha: np.ndarray
        :param theta: Angles of z2.
        :type theta: np.ndarray
        :param phi: Angles of z1.
        :type phi: np.ndarray
        :return: Complex values.
        :rtype: np.ndarray
        """
        phase = np.exp(1j * (self.theta_exponent * np.asarray(theta) + self.phi_exponent * np.asarray(phi)))
        return self.alpha_factor(alpha) * phase

    def eval_hopf(self, alpha: float, theta: float, phi: float) -> complex:
        """Evaluate T at one point.

        :param alpha: Angle in [0, pi/2].
        :type alpha: float
        :param theta: Angle of z2.
        :type theta: float
        :param phi: Angle of z1.
        :type phi: float
        :return: T(alpha, theta, phi).
        :rtype: complex
        """
        return complex(self.evaluate(np.asarray(alpha), np.asarray(theta), np.asarray(phi)))

    def laplace_residual(
        self,
        h: float = 1e-3,
        alpha_range: tuple[float, float] = (0.3, 1.2),
        angles: int = 4,
    ) -> float:
        """max |Delta T + N(N+2) T| / max |T| over an (alpha, theta, phi) lattice.

        The Laplace-Beltrami operator of d alpha^2 + cos^2 alpha d theta^2 +
        sin^2 alpha d phi^2 is T_aa + 2 cot(2a) T_a + T_tt / cos^2 a + T_pp / sin^2 a,
        applied with central differences in all three angles. Alpha is
        sampled with step h across ``alpha_range``; theta and phi take
        ``angles`` evenly spaced values each, around the whole circle.

        :param h: Step in every angle.
        :type h: float
        :param alpha_range: Interval sampled in alpha.
        :type alpha_range: tuple[float, float]
        :param angles: Lattice points per circle angle.
        :type angles: int
        :return: The relative residual.
        :rtype: float
        """
        FiniteDifferences.check_step(h)
        lo, hi = alpha_range
        margin = MIN_POLE_MARGIN_STEPS * h
        if lo < margin or hi > math.pi / 2.0 - margin:
            raise ValueError(
                f"alpha range {alpha_range} must stay {margin:.3g} away from 0 and pi/2."
            )
        if angles < 1:
            raise ValueError(f"Need at least one lattice angle, got {angles}.")

        alphas = np.arange(lo - STENCIL_MARGIN * h, hi + (STENCIL_MARGIN + 0.5) * h, h)
        circle = LATTICE_OFFSET + 2.0 * math.pi * np.arange(angles) / angles
        worst, scale = 0.0, 0.0
        for theta in circle:
            for phi in circle + LATTICE_OFFSET:
                error, size = self._line_residual(alphas, float(theta), float(phi), h)
                worst, scale = max(worst, error), max(scale, size)
        if scale == 0.0:
            return 0.0
        return worst / scale

    def _line_residual(
        self, alphas: np.ndarray, theta: float, phi: float, h: float
    ) -> tuple[float, float]:
        stencil = (np.arange(2 * STENCIL_MARGIN + 1) - STENCIL_MARGIN) * h
        t = self.evaluate(
            alphas[:, None, None], theta + stencil[None, :, None], phi + stencil[None, None, :]
        )

        a_in = FiniteDifferences.interior(np.broadcast_to(alphas[:, None, None], t.shape))
        laplacian = (
            FiniteDifferences.second(t, h, 0)
            + 2.0 / np.tan(2.0 * a_in) * FiniteDifferences.first(t, h, 0)
            + FiniteDifferences.second(t, h, 1) / np.cos(a_in) ** 2
            + FiniteDifferences.second(t, h, 2) / np.sin(a_in) ** 2
        )
        t_in = FiniteDifferences.interior(t)
        error = float(np.max(np.abs(laplacian + self.eigenvalue * t_in)))
        return error, float(np.max(np.abs(t_in)))

    def alpha_factor_zeros(self) -> list[float]:
        """Zeros of the alpha factor in (0, pi/2).

        :return: Sorted zeros; there are exactly ``jacobi_degree`` of them.
        :rtype: list[float]
        """
        if self.jacobi_degree == 0:
            return []
        a, b = abs(self.theta_exponent), abs(self.phi_exponent)
        return SpecialFunctions.bracketed_zeros(
            lambda alpha: SpecialFunctions.jacobi(self.jacobi_degree, b, a, np.cos(2.0 * alpha)),
            0.0,
            math.pi / 2.0,
        )

    def as_field(self) -> EquivariantField:
        """T as an equivariant function of phi over the (alpha, theta) base.

        T depends on phi through e^{iB phi}, i.e. weight -B in the
        e^{-im theta} lift convention.

        :return: Field on the Hopf base chart.
        :rtype: EquivariantField
        """

        def base(alpha: np.ndarray, theta: np.ndarray) -> np.ndarray:
            return self.alpha_factor(alpha) * np.exp(1j * self.theta_exponent * np.asarray(theta))

        return EquivariantField(weight=-self.phi_exponent, base=base, chart_id=HOPF_BASE)
