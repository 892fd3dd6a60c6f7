"""
Tests for the chordal metric and the disc-compactification metric.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphere_mergelyan.sphere_metrics import (
    INFINITY,
    TWO_PI,
    DirectionalPoint,
    FinitePoint,
    bar_distance,
    bar_embed,
    chordal_distance,
    chordal_distance_array,
    complex_to_extended,
    direction_embed,
)

finite_complex = st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)
extended_points = st.one_of(st.just(INFINITY), finite_complex.map(FinitePoint))
bar_points = st.one_of(
    finite_complex.map(FinitePoint),
    st.floats(min_value=-100, max_value=100).map(DirectionalPoint),
)


class TestPointTypes:
    """Tests for the point representations."""

    def test_finite_point_rejects_infinity(self):
        """A finite point cannot carry a non-finite value."""
        with pytest.raises(ValueError):
            FinitePoint(complex(math.inf, 0))

    def test_directional_point_rejects_nan(self):
        """Directions need a finite angle."""
        with pytest.raises(ValueError):
            DirectionalPoint(math.nan)

    def test_directions_equal_mod_two_pi(self):
        """Angles that differ by 2π name the same direction."""
        assert DirectionalPoint(0.0) == DirectionalPoint(TWO_PI)
        assert DirectionalPoint(1.0) != DirectionalPoint(1.5)

    def test_complex_to_extended(self):
        """Non-finite values become the point at infinity."""
        assert complex_to_extended(complex(np.inf, 0)) is INFINITY
        assert complex_to_extended(2 + 1j) == FinitePoint(2 + 1j)


class TestChordalDistance:
    """Tests for the chordal metric on C ∪ {∞}."""

    def test_finite_pair(self):
        """chi(0, 1) = 1/sqrt(2)."""
        assert chordal_distance(FinitePoint(0), FinitePoint(1)) == pytest.approx(1 / math.sqrt(2), rel=1e-15)

    def test_distance_to_infinity(self):
        """chi(z, ∞) = 1/sqrt(1 + |z|^2)."""
        assert chordal_distance(FinitePoint(3 + 4j), INFINITY) == pytest.approx(1 / math.sqrt(26), rel=1e-15)

    def test_infinity_to_itself(self):
        """chi(∞, ∞) = 0."""
        assert chordal_distance(INFINITY, INFINITY) == 0.0

    def test_huge_values_do_not_overflow(self):
        """Homogeneous coordinates keep chi finite for values near the float limit."""
        assert chordal_distance(FinitePoint(1e300), INFINITY) == pytest.approx(1e-300, rel=1e-12)
        d = chordal_distance(FinitePoint(1e308 + 1e308j), FinitePoint(-1e308))
        assert math.isfinite(d) and 0.0 <= d <= 1.0

    def test_array_form_treats_nonfinite_as_infinity(self):
        """Any non-finite entry is the point ∞ in the array form."""
        out = chordal_distance_array(
            np.array([complex(np.inf, 0), complex(np.nan, np.nan), 0]),
            np.array([complex(0, np.inf), complex(np.inf, 0), 0]),
        )
        np.testing.assert_array_equal(out, [0.0, 0.0, 0.0])

    @given(extended_points, extended_points)
    def test_symmetry(self, a, b):
        """chi(a, b) == chi(b, a) exactly."""
        assert chordal_distance(a, b) == chordal_distance(b, a)

    @given(extended_points, extended_points, extended_points)
    def test_triangle_inequality(self, a, b, c):
        """chi(a, c) <= chi(a, b) + chi(b, c) up to rounding."""
        assert chordal_distance(a, c) <= chordal_distance(a, b) + chordal_distance(b, c) + 1e-12

    @given(finite_complex, finite_complex)
    def test_bounded_by_euclidean(self, a, b):
        """chi(a, b) <= |a - b| for finite points."""
        assert chordal_distance(FinitePoint(a), FinitePoint(b)) <= abs(a - b) * (1 + 1e-15) + 1e-300

    @given(extended_points)
    def test_identity_of_indiscernibles(self, a):
        """chi(a, a) = 0."""
        assert chordal_distance(a, a) == 0.0


class TestBarMetric:
    """Tests for the disc-compactification metric d."""

    def test_embedding_examples(self):
        """Finite points land in the open disc, directions on the circle."""
        assert bar_embed(1.0) == pytest.approx(0.5)
        assert bar_embed(-3j) == pytest.approx(-0.75j)
        np.testing.assert_allclose(direction_embed(math.pi), -1.0, atol=1e-15)

    def test_distance_examples(self):
        """Hand-computed distances."""
        assert bar_distance(FinitePoint(0), DirectionalPoint(0.0)) == pytest.approx(1.0)
        assert bar_distance(DirectionalPoint(0.0), DirectionalPoint(math.pi)) == pytest.approx(2.0)
        assert bar_distance(FinitePoint(1), FinitePoint(-1)) == pytest.approx(1.0)

    def test_embedding_overflow_safe(self):
        """Components near the float limit still embed inside the closed disc."""
        p = bar_embed(1e308 + 1e308j)
        assert math.isfinite(abs(p))
        assert abs(p) <= 1.0 + 1e-15

    def test_embedding_rejects_infinity(self):
        """Only finite points have a finite embedding."""
        with pytest.raises(ValueError):
            bar_embed(complex(np.inf, 0))

    def test_large_finite_values_approach_their_direction(self):
        """Rays go out to the matching direction at infinity."""
        far = FinitePoint(1e12 * np.exp(0.7j))
        assert bar_distance(far, DirectionalPoint(0.7)) < 1e-11

    @given(bar_points, bar_points)
    def test_symmetry(self, a, b):
        """d(a, b) == d(b, a)."""
        assert bar_distance(a, b) == bar_distance(b, a)

    @given(bar_points, bar_points, bar_points)
    def test_triangle_inequality(self, a, b, c):
        """d(a, c) <= d(a, b) + d(b, c) up to rounding."""
        assert bar_distance(a, c) <= bar_distance(a, b) + bar_distance(b, c) + 1e-12

    @given(finite_complex, finite_complex)
    def test_embedding_is_one_lipschitz(self, a, b):
        """|a/(1+|a|) - b/(1+|b|)| <= |a - b|."""
        assert bar_distance(FinitePoint(a), FinitePoint(b)) <= abs(a - b) * (1 + 1e-12) + 1e-15

    @given(bar_points, bar_points)
    def test_values_in_range(self, a, b):
        """d takes values in [0, 2]."""
        assert 0.0 <= bar_distance(a, b) <= 2.0 + 1e-15
