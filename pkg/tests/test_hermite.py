from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetakernels.hermite import (
    gauss_hermite_rule,
    half_gaussian_hermite_moment,
    half_gaussian_hermite_moments,
    half_gaussian_rule,
    hermite_at_zero,
    hermite_design,
    hermite_value,
)


class TestHermiteValue:
    def test_low_orders(self):
        x = 1.7
        assert hermite_value(0, x) == 1.0
        assert hermite_value(1, x) == x
        assert hermite_value(2, x) == pytest.approx((x * x - 1.0) / math.sqrt(2.0))
        assert hermite_value(3, x) == pytest.approx((x ** 3 - 3.0 * x) / math.sqrt(6.0))

    def test_array_input(self):
        x = np.array([-1.0, 0.0, 2.0])
        out = hermite_value(2, x)
        assert out.shape == (3,)
        assert out[1] == pytest.approx(-1.0 / math.sqrt(2.0))

    @given(k=st.integers(0, 30))
    def test_parity(self, k):
        x = 0.83
        sign = -1.0 if k % 2 else 1.0
        assert hermite_value(k, -x) == pytest.approx(sign * hermite_value(k, x),
                                                     rel=1e-12, abs=1e-12)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            hermite_value(-1, 0.0)
        with pytest.raises(ValueError):
            hermite_value(1.5, 0.0)


class TestDesignMatrix:
    def test_matches_single_evaluations(self):
        x = np.linspace(-2.0, 2.0, 7)
        design = hermite_design(10, x)
        assert design.shape == (11, 7)
        for k in (0, 1, 5, 10):
            assert np.allclose(design[k], hermite_value(k, x), atol=1e-14)

    def test_k_max_zero(self):
        assert hermite_design(0, np.array([3.0])).shape == (1, 1)


class TestGaussHermiteRule:
    def test_orthonormality(self):
        points, weights = gauss_hermite_rule(200)
        design = hermite_design(40, points)
        gram = (design * weights) @ design.T
        assert np.max(np.abs(gram - np.eye(41))) < 1e-10

    def test_gaussian_moments(self):
        points, weights = gauss_hermite_rule(40)
        assert weights.sum() == pytest.approx(1.0, abs=1e-14)
        assert float(weights @ points ** 2) == pytest.approx(1.0, abs=1e-12)
        assert float(weights @ points ** 4) == pytest.approx(3.0, abs=1e-12)
        assert float(weights @ points ** 6) == pytest.approx(15.0, abs=1e-11)

    def test_cached(self):
        left = gauss_hermite_rule(64)
        right = gauss_hermite_rule(64)
        assert left[0] is right[0]

    def test_validation(self):
        with pytest.raises(ValueError):
            gauss_hermite_rule(0)


class TestHalfGaussianRule:
    def test_total_mass(self):
        _, weights = half_gaussian_rule()
        assert weights.sum() == pytest.approx(0.5, abs=1e-13)

    def test_first_moment(self):
        points, weights = half_gaussian_rule()
        assert float(weights @ points) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi),
                                                        abs=1e-13)

    def test_nodes_inside_range(self):
        points, _ = half_gaussian_rule()
        assert points.min() > 0.0
        assert points.max() < 13.0


class TestCentralValues:
    def test_odd_orders_vanish(self):
        assert all(hermite_at_zero(k) == 0.0 for k in range(1, 30, 2))

    @given(k=st.integers(0, 40))
    def test_matches_recursion(self, k):
        assert hermite_at_zero(k) == pytest.approx(hermite_value(k, 0.0),
                                                   rel=1e-13, abs=1e-13)


class TestHalfRangeMoments:
    def test_closed_values(self):
        assert half_gaussian_hermite_moment(0) == pytest.approx(
            1.0 / math.sqrt(2.0 * math.pi), abs=1e-15)
        assert half_gaussian_hermite_moment(1) == 0.5
        assert half_gaussian_hermite_moment(2) == pytest.approx(
            1.0 / (2.0 * math.sqrt(math.pi)), abs=1e-15)
        assert half_gaussian_hermite_moment(4) == pytest.approx(
            -0.08143375198381997, abs=1e-15)

    def test_odd_orders_above_one_vanish(self):
        assert all(half_gaussian_hermite_moment(k) == 0.0 for k in range(3, 31, 2))

    @given(k=st.integers(0, 24))
    def test_against_quadrature(self, k):
        points, weights = half_gaussian_rule()
        numeric = float(weights @ (points * hermite_value(k, points)))
        assert half_gaussian_hermite_moment(k) == pytest.approx(numeric, abs=1e-12)

    def test_vector_form(self):
        vec = half_gaussian_hermite_moments(6)
        assert vec.shape == (7,)
        assert vec[3] == 0.0
        assert vec[1] == 0.5
