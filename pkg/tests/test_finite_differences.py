"""Tests for the fourth-order central stencils."""

import numpy as np
import pytest

from modules.errors import AccuracyWarning
from modules.finite_differences import STENCIL_MARGIN, FiniteDifferences


@pytest.fixture
def quartic():
    h = 0.01
    x = np.arange(-0.2, 0.2 + h / 2, h)
    y = np.arange(0.5, 0.7 + h / 2, h)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    return h, xx, yy, xx**4 + xx * yy**3


class TestFiniteDifferences:
    def test_interior_trims_every_axis(self, quartic):
        _, xx, _, u = quartic
        trimmed = FiniteDifferences.interior(u)
        assert trimmed.shape == tuple(n - 2 * STENCIL_MARGIN for n in u.shape)

    def test_first_derivative_is_exact_on_quartics(self, quartic):
        h, xx, yy, u = quartic
        expected = FiniteDifferences.interior(4 * xx**3 + yy**3)
        assert np.allclose(FiniteDifferences.first(u, h, 0), expected, atol=1e-9)

    def test_second_derivative_is_exact_on_quartics(self, quartic):
        h, xx, yy, u = quartic
        assert np.allclose(
            FiniteDifferences.second(u, h, 0), FiniteDifferences.interior(12 * xx**2), atol=1e-7
        )
        assert np.allclose(
            FiniteDifferences.second(u, h, 1), FiniteDifferences.interior(6 * xx * yy), atol=1e-7
        )

    def test_coarse_step_warns(self):
        with pytest.warns(AccuracyWarning):
            FiniteDifferences.check_step(0.1)
