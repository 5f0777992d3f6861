"""Tests for equivariant fields and their fiber zeros."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from classes.equivariant_field import BasePoint, EquivariantField, FiberZeroSet, normalize_angles
from modules.errors import ChartMismatchError, SingularFiberError

CHART = "plane"


def constant_field(value: complex, weight: int) -> EquivariantField:
    def base(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.full(np.broadcast(np.asarray(a), np.asarray(b)).shape, value, dtype=complex)

    return EquivariantField(weight=weight, base=base, chart_id=CHART)


POINT = BasePoint(chart_id=CHART, coords=(0.3, -0.2))

complex_values = st.builds(
    complex, st.floats(-10.0, 10.0), st.floats(-10.0, 10.0)
)


class TestFiberZeros:
    @given(value=complex_values, m=st.integers(1, 24))
    @settings(deadline=None)
    def test_two_m_zeros_of_the_real_part(self, value, m):
        assume(abs(value) > 1e-3)
        field = constant_field(value, m)

        zeros = field.fiber_zeros(POINT).angles
        assert len(zeros) == 2 * m
        assert zeros == sorted(zeros)
        assert all(0.0 <= t < 2.0 * math.pi for t in zeros)
        for theta in zeros:
            assert abs(field.eval_real_part(POINT, theta)) < 1e-9 * abs(value)

    @given(value=complex_values, m=st.integers(1, 6))
    @settings(deadline=None)
    def test_negative_weight_uses_the_conjugate(self, value, m):
        assume(abs(value) > 1e-3)
        field = constant_field(value, -m)

        zeros = field.fiber_zeros(POINT).angles
        assert len(zeros) == 2 * m
        for theta in zeros:
            assert abs(field.eval_real_part(POINT, theta)) < 1e-9 * abs(value)

    def test_zero_value_is_singular(self):
        with pytest.raises(SingularFiberError):
            FiberZeroSet.from_value(0j, 2)

    def test_weight_must_be_positive(self):
        with pytest.raises(ValueError):
            FiberZeroSet.from_value(1 + 1j, 0)

    def test_first_zero_for_a_real_value(self):
        # Re(e^{-i theta}) = cos(theta) vanishes first at pi/2
        assert FiberZeroSet.from_value(1.0 + 0j, 1).angles == pytest.approx(
            [math.pi / 2.0, 3.0 * math.pi / 2.0]
        )


class TestEquivariantField:
    def test_lift_and_real_part_agree(self):
        field = constant_field(2.0 - 1.0j, 3)
        for theta in (0.0, 0.7, 2.5):
            lift = field.lift(POINT, theta)
            assert lift == pytest.approx((2.0 - 1.0j) * cmath.exp(-3j * theta))
            assert field.eval_real_part(POINT, theta) == pytest.approx(lift.real)

    @pytest.mark.parametrize("sign", [-1, 1])
    def test_real_part_follows_the_lift_sign(self, sign, monkeypatch):
        monkeypatch.setattr("classes.equivariant_field.LIFT_SIGN", sign)
        field = constant_field(0.4 + 1.3j, 2)
        for theta in (0.3, 1.1, 4.0):
            lift = field.lift(POINT, theta)
            assert lift == pytest.approx((0.4 + 1.3j) * cmath.exp(sign * 2j * theta))
            assert field.eval_real_part(POINT, theta) == pytest.approx(lift.real)
            assert field.sample(np.asarray(0.3), np.asarray(-0.2), np.asarray(theta)) == pytest.approx(
                lift.real
            )
        for theta in field.fiber_zeros(POINT).angles:
            assert abs(field.eval_real_part(POINT, theta)) < 1e-9

    def test_sample_broadcasts(self):
        field = constant_field(1.0 + 1.0j, 2)
        theta = np.linspace(0.0, 2.0 * math.pi, 9)
        values = field.sample(np.zeros((4, 1, 1)), np.zeros((1, 5, 1)), theta[None, None, :])
        assert values.shape == (4, 5, 9)
        assert np.allclose(values[0, 0], np.cos(2 * theta) + np.sin(2 * theta))

    def test_chart_mismatch(self):
        field = constant_field(1.0 + 0j, 1)
        with pytest.raises(ChartMismatchError):
            field.base_value(BasePoint(chart_id="sphere", coords=(0.0, 0.0)))

    def test_chart_id_required(self):
        with pytest.raises(ValueError):
            EquivariantField(weight=1, base=lambda a, b: a + 1j * b, chart_id="")


def test_normalize_angles_folds_two_pi():
    angles = normalize_angles(np.array([-0.5, 2.0 * math.pi, 2.0 * math.pi - 1e-12, 7.0]))
    assert angles == pytest.approx([2.0 * math.pi - 0.5, 0.0, 0.0, 7.0 - 2.0 * math.pi])
