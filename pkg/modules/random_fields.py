"""Seeded random complex fields on a disc: trigonometric polynomials and fields with planted simple zeros."""

import math
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

ComplexSampler = Callable[[np.ndarray, np.ndarray], np.ndarray]

# Planted zeros keep this distance from the unit circle, relative to the radius
INNER_RADIUS = 0.5
OUTER_RADIUS = 1.6
MIN_SEPARATION = 0.3


class TrigPolynomialField(BaseModel):
    """A random f = sum_k a_k exp(i s (k1 x + k2 y)) over integer frequencies.

    :ivar modes: Integer frequencies (k1, k2), shape (n, 2).
    :ivar amplitudes: Complex amplitudes a_k.
    :ivar frequency_scale: The factor s.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    modes: np.ndarray
    amplitudes: np.ndarray
    frequency_scale: float = 1.0

    def series(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Evaluate the trigonometric sum on broadcastable coordinates.

        :param x: Real parts.
        :type x: np.ndarray
        :param y: Imaginary parts.
        :type y: np.ndarray
        :return: Complex values.
        :rtype: np.ndarray
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        total = np.zeros(np.broadcast(x, y).shape, dtype=complex)
        for (k1, k2), amplitude in zip(self.modes.tolist(), self.amplitudes):
            total = total + amplitude * np.exp(1j * self.frequency_scale * (k1 * x + k2 * y))
        return total

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.series(x, y)


class PlantedField(TrigPolynomialField):
    """A random field exp(g) * prod (w - z_j) or conj(w - z_j), g a trigonometric sum.

    :ivar zeros: Planted zeros as (x, y, orientation) with orientation +-1.
    :ivar radius: Disc radius the zeros were placed against.
    """

    zeros: list[tuple[float, float, int]]
    radius: float = 1.0

    def inside_zeros(self) -> int:
        """Number of planted zeros inside the disc."""
        return sum(1 for x, y, _ in self.zeros if math.hypot(x, y) < self.radius)

    def expected_count(self, m: int) -> int:
        """Nodal domains over the disc: 2 with a zero inside, else 2m.

        :param m: Positive weight.
        :type m: int
        :return: The expected count.
        :rtype: int
        """
        return 2 if self.inside_zeros() else 2 * m

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Evaluate on broadcastable coordinates.

        :param x: Real parts.
        :type x: np.ndarray
        :param y: Imaginary parts.
        :type y: np.ndarray
        :return: Complex values.
        :rtype: np.ndarray
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        value = np.exp(self.series(x, y))
        w = x + 1j * y
        for zx, zy, orientation in self.zeros:
            factor = w - complex(zx, zy)
            value = value * (factor if orientation > 0 else np.conj(factor))
        return value


class RandomFieldFactory:
    """Draw reproducible random disc fields.

    :ivar rng: The seeded generator.
    :ivar radius: Disc radius.
    :ivar max_mode: Largest frequency in a trigonometric sum.
    :ivar amplitude: Scale of the amplitudes of g in planted fields.
    """

    def __init__(
        self, seed: int = 0, radius: float = 1.0, max_mode: int = 2, amplitude: float = 0.3
    ) -> None:
        """Initialize the factory.

        :param seed: Seed of the generator.
        :type seed: int
        :param radius: Disc radius.
        :type radius: float
        :param max_mode: Largest frequency in a trigonometric sum.
        :type max_mode: int
        :param amplitude: Scale of the amplitudes of g in planted fields.
        :type amplitude: float
        """
        self.rng = np.random.default_rng(seed)
        self.radius = radius
        self.max_mode = max_mode
        self.amplitude = amplitude

    def _modes(self, low: int, high: int) -> tuple[np.ndarray, np.ndarray]:
        n_modes = int(self.rng.integers(low, high + 1))
        modes = self.rng.integers(-self.max_mode, self.max_mode + 1, size=(n_modes, 2))
        amplitudes = (
            self.rng.normal(size=n_modes) + 1j * self.rng.normal(size=n_modes)
        ) / math.sqrt(2.0 * n_modes)
        return modes, amplitudes

    def draw_trig(self) -> TrigPolynomialField:
        """Draw a trigonometric polynomial with two to five terms.

        Frequencies are scaled by pi / radius, so the disc holds about one
        period of the highest mode per axis and a few zeros.

        :return: The field.
        :rtype: TrigPolynomialField
        """
        modes, amplitudes = self._modes(2, 5)
        return TrigPolynomialField(
            modes=modes, amplitudes=amplitudes, frequency_scale=math.pi / self.radius
        )

    def _zero(self, inside: bool) -> tuple[float, float, int]:
        if inside:
            r = self.radius * INNER_RADIUS * math.sqrt(self.rng.uniform(0.05, 1.0))
        else:
            r = self.radius * self.rng.uniform(OUTER_RADIUS, 2.0 * OUTER_RADIUS)
        angle = self.rng.uniform(0.0, 2.0 * math.pi)
        orientation = 1 if self.rng.uniform() < 0.5 else -1
        return (r * math.cos(angle), r * math.sin(angle), orientation)

    def draw(self) -> PlantedField:
        """Draw one field with zero to two planted zeros.

        :return: The field.
        :rtype: PlantedField
        """
        modes, amplitudes = self._modes(1, 3)
        amplitudes = self.amplitude * amplitudes

        zeros: list[tuple[float, float, int]] = []
        for _ in range(int(self.rng.integers(0, 3))):
            candidate = self._zero(inside=bool(self.rng.uniform() < 0.5))
            while any(
                math.hypot(candidate[0] - zx, candidate[1] - zy) < MIN_SEPARATION * self.radius
                for zx, zy, _ in zeros
            ):
                candidate = self._zero(inside=math.hypot(candidate[0], candidate[1]) < self.radius)
            zeros.append(candidate)
        return PlantedField(zeros=zeros, modes=modes, amplitudes=amplitudes, radius=self.radius)
