"""Tests for Jacobi polynomials and bracketed root finding."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_jacobi

from modules.special_functions import SpecialFunctions


class TestJacobi:
    @given(
        n=st.integers(0, 10),
        a=st.floats(-0.9, 5.0),
        b=st.floats(-0.9, 5.0),
        x=st.floats(-1.0, 1.0),
    )
    @settings(deadline=None)
    def test_matches_scipy(self, n, a, b, x):
        expected = eval_jacobi(n, a, b, x)
        assert SpecialFunctions.jacobi(n, a, b, x) == pytest.approx(expected, rel=1e-9, abs=1e-9)

    def test_scalar_in_scalar_out(self):
        assert isinstance(SpecialFunctions.jacobi(3, 1.0, 2.0, 0.25), float)
        assert SpecialFunctions.jacobi(0, 1.0, 2.0, 0.25) == 1.0

    def test_array_shape_is_kept(self):
        x = np.linspace(-1.0, 1.0, 12).reshape(3, 4)
        assert SpecialFunctions.jacobi(4, 0.0, 2.0, x).shape == (3, 4)

    def test_first_degree(self):
        # P_1^(0,2)(x) = 2x - 1
        assert SpecialFunctions.jacobi(1, 0.0, 2.0, 0.3) == pytest.approx(-0.4)

    @pytest.mark.parametrize("n, a, b", [(-1, 0.0, 0.0), (2, -1.0, 0.0), (2, 0.0, -1.5)])
    def test_rejects_invalid_parameters(self, n, a, b):
        with pytest.raises(ValueError):
            SpecialFunctions.jacobi(n, a, b, 0.0)


class TestBracketedZeros:
    def test_cosine_zeros(self):
        zeros = SpecialFunctions.bracketed_zeros(np.cos, 0.0, 2.0 * math.pi)
        assert zeros == pytest.approx([math.pi / 2.0, 3.0 * math.pi / 2.0], abs=1e-12)

    def test_end_points_are_excluded(self):
        zeros = SpecialFunctions.bracketed_zeros(np.sin, 0.0, math.pi)
        assert zeros == []

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_jacobi_has_n_zeros(self, n):
        zeros = SpecialFunctions.bracketed_zeros(
            lambda x: SpecialFunctions.jacobi(n, 1.0, 2.0, x), -1.0, 1.0
        )
        assert len(zeros) == n
        assert all(abs(SpecialFunctions.jacobi(n, 1.0, 2.0, z)) < 1e-10 for z in zeros)
