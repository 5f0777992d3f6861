"""Tests for truncated q-expansions and the discriminant form."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from classes.q_series import QSeries, truncated_power, truncated_product
from modules.errors import PrecisionError

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


class TestCoefficients:
    def test_tau_values(self):
        assert QSeries.delta(10).coeffs == TAU

    def test_tau_is_multiplicative(self):
        delta = QSeries.delta(60)
        tau = delta.coefficient
        for a, b in [(2, 3), (2, 5), (3, 4), (4, 15), (5, 11)]:
            assert tau(a * b) == tau(a) * tau(b)

    def test_hecke_relation_at_primes(self):
        tau = QSeries.delta(60).coefficient
        for p in (2, 3, 5, 7):
            assert tau(p * p) == tau(p) ** 2 - p**11

    def test_square_leading_coefficients(self):
        square = QSeries.delta(20).power(2)
        assert square.weight == 24
        assert square.n0 == 2
        assert square.coeffs[:3] == [1, -48, 1080]

    def test_coefficient_out_of_range(self):
        delta = QSeries.delta(5)
        assert delta.coefficient(0) == 0
        with pytest.raises(PrecisionError) as excinfo:
            delta.coefficient(6)
        assert excinfo.value.required_n == 6

    def test_power_beyond_truncation(self):
        with pytest.raises(PrecisionError):
            QSeries.delta(5).power(2, 10)

    def test_truncated_helpers(self):
        assert truncated_product([1, 1], [1, -1], 3) == [1, 0, -1]
        assert truncated_power([1, 1], 3, 4) == [1, 3, 3, 1]


class TestValidation:
    def test_weight_must_be_even_and_positive(self):
        with pytest.raises(ValidationError):
            QSeries(weight=3, n0=1, coeffs=[1])
        with pytest.raises(ValidationError):
            QSeries(weight=0, n0=1, coeffs=[1])

    def test_leading_coefficient_nonzero(self):
        with pytest.raises(ValidationError):
            QSeries(weight=12, n0=1, coeffs=[0, 1])


class TestEvaluation:
    def test_modularity(self):
        delta = QSeries.delta()
        for z in (0.3 + 1.2j, -0.45 + 0.95j, 0.1 + 2.0j):
            assert delta.evaluate(-1.0 / z) == pytest.approx(z**12 * delta.evaluate(z), rel=1e-9)

    def test_periodicity(self):
        delta = QSeries.delta()
        z = np.array([0.2 + 1.0j, -0.3 + 1.5j])
        assert np.allclose(delta.evaluate(z + 1), delta.evaluate(z), rtol=1e-12)

    def test_precision_error_names_the_order(self):
        with pytest.raises(PrecisionError) as excinfo:
            QSeries.delta(3).evaluate(0.05j)
        assert excinfo.value.required_n > 3

    def test_required_order_suffices(self):
        delta = QSeries.delta(200)
        order = delta.required_order(0.3)
        assert order <= 200
        assert QSeries.delta(order).tail_bound(0.3) <= 1e-12 * math.exp(-2 * math.pi * 0.3)

    def test_tail_bound_decreases_with_height(self):
        delta = QSeries.delta()
        bounds = [delta.tail_bound(y) for y in (0.5, 0.8, 1.2, 2.0)]
        assert bounds == sorted(bounds, reverse=True)

    def test_eval_form(self):
        value = QSeries.delta().eval_form(1.0j)
        assert value.value.real > 0
        assert abs(value.value.imag) < 1e-15
        assert value.tail_bound < 1e-12 * abs(value.value)

    def test_delta_never_vanishes(self, rng):
        delta = QSeries.delta()
        x = rng.uniform(-0.5, 0.5, size=200)
        y = rng.uniform(0.87, 3.0, size=200)
        assert np.all(np.abs(delta.evaluate(x + 1j * y)) > 0)

    def test_lift(self):
        delta = QSeries.delta()
        z, theta = 0.2 + 1.1j, 0.4
        expected = (1.1**6 * delta.evaluate(z) * np.exp(-12j * theta)).real
        assert delta.eval_lift(z, theta) == pytest.approx(float(expected), rel=1e-12)
        assert delta.as_field().weight == 12
