"""
Tests for the Polynomial value type.
"""

import numpy as np
import pytest

from sphere_mergelyan.errors import InvalidParameterError
from sphere_mergelyan.polynomial import Polynomial, complex_to_pairs, pairs_to_complex


class TestConstruction:
    """Tests for building polynomials."""

    def test_trailing_zeros_trimmed(self):
        """Degree counts the last nonzero coefficient."""
        p = Polynomial([1, 2, 0, 0])
        assert p.degree == 1
        np.testing.assert_array_equal(p.coeffs, [1, 2])

    def test_zero_polynomial_keeps_one_coefficient(self):
        """The zero polynomial has degree 0."""
        assert Polynomial([0, 0]).degree == 0

    def test_rejects_empty_and_nonfinite(self):
        """Coefficients must be a non-empty finite list."""
        with pytest.raises(InvalidParameterError):
            Polynomial([])
        with pytest.raises(InvalidParameterError):
            Polynomial([1, np.inf])

    def test_rejects_bad_scale(self):
        """The normalizing scale must be positive."""
        with pytest.raises(InvalidParameterError):
            Polynomial([1], scale=0.0)

    def test_coefficients_read_only(self):
        """Coefficient arrays cannot be modified in place."""
        p = Polynomial([1, 2])
        with pytest.raises(ValueError):
            p.coeffs[0] = 5

    def test_pairs_conversion(self):
        """[[re, im], ...] lists map to complex arrays and back."""
        values = pairs_to_complex([[1, 2], [0, -1]])
        np.testing.assert_array_equal(values, [1 + 2j, -1j])
        assert complex_to_pairs(values) == [[1.0, 2.0], [0.0, -1.0]]


class TestEvaluation:
    """Tests for evaluation and algebra."""

    def test_horner_evaluation(self):
        """p(w) for p = 1 + 2w + 3w^2."""
        p = Polynomial([1, 2, 3])
        assert p(2.0) == pytest.approx(17.0)
        np.testing.assert_allclose(p(np.array([0, 1j])), [1, 1 + 2j - 3])

    def test_normalized_variable(self):
        """Coefficients apply to s = (w - center)/scale."""
        p = Polynomial([0, 1], center=1 + 1j, scale=2.0)
        assert p(3 + 1j) == pytest.approx(1.0)

    def test_derivative_respects_scale(self):
        """d/dw of s^2 with s = (w - c)/h is 2 s / h."""
        p = Polynomial([0, 0, 1], center=1.0, scale=2.0)
        assert p.derivative()(3.0) == pytest.approx(1.0)

    def test_compose(self):
        """(s^2)∘(1 + w) = 1 + 2w + w^2."""
        outer = Polynomial([0, 0, 1])
        inner = Polynomial([1, 1])
        np.testing.assert_allclose(outer.compose(inner).coeffs, [1, 2, 1])
