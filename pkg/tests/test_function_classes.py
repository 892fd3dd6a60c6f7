"""
Tests for the function catalogue, the chordal and disc-compactification
function classes, and the boundary continuity diagnostic.
"""

import math

import numpy as np
import pytest

from sphere_mergelyan.errors import EvaluationOverflow, InvalidParameterError, UnsupportedFunction
from sphere_mergelyan.function_classes import (
    BarFunction,
    BoundaryPoleForm,
    ChordalFunction,
    CompositeExp,
    ExpPoleForm,
    PolynomialForm,
    RationalForm,
    continuity_diagnostic,
    evaluate_bar,
    evaluate_chordal,
)
from sphere_mergelyan.sphere_metrics import INFINITY, TWO_PI, DirectionalPoint, FinitePoint


class TestEvaluators:
    """Tests for the closed-form evaluators."""

    def test_polynomial_is_entire(self):
        """Polynomials are analytic everywhere."""
        f = PolynomialForm([1, 2])
        assert f.radius_of_analyticity == math.inf
        assert f(0.5) == pytest.approx(2.0)

    def test_rational_radius(self):
        """1/(2 - z) is analytic on |z| < 2."""
        f = RationalForm([1], [2, -1])
        assert f.radius_of_analyticity == pytest.approx(2.0)
        assert f.analytic_past_closed_disc

    def test_rational_rejects_pole_in_disc(self):
        """Poles inside the closed disc belong to no supported class."""
        with pytest.raises(InvalidParameterError):
            RationalForm([1], [0.5, -1])

    def test_boundary_pole_is_infinite_at_pole(self):
        """1/(1 - z) takes the value ∞ at z = 1."""
        f = BoundaryPoleForm([1], [1, -1])
        assert f.radius_of_analyticity == 1.0
        values = f(np.array([0.0, 1.0]))
        assert values[0] == 1.0
        assert np.isinf(values[1].real)

    def test_boundary_pole_absorbs_rounding(self):
        """Points a few ulps from a pole are the pole; points 1e-6 away are not."""
        f = BoundaryPoleForm([1], [1, -1])
        values = f(np.array([1 + 3e-16j, 1 - 2e-16, 1 - 1e-6]))
        assert np.isinf(values[0].real) and np.isinf(values[1].real)
        assert values[2] == pytest.approx(1e6, rel=1e-9)

    def test_boundary_pole_needs_pole_on_circle(self):
        """Denominator zeros off the unit circle are rejected."""
        with pytest.raises(InvalidParameterError):
            BoundaryPoleForm([1], [2, -1])

    def test_boundary_pole_rejects_cancellation(self):
        """A numerator that cancels the pole is not a boundary-pole form."""
        with pytest.raises(InvalidParameterError):
            BoundaryPoleForm([1, -1], [1, -1])

    def test_composite_exp_overflow(self):
        """exp(1000) is reported instead of returned as inf."""
        f = CompositeExp(1.0, [0, 1000j])
        with pytest.raises(EvaluationOverflow):
            f(-1.0)

    def test_exp_pole_is_diagnostic_only(self):
        """exp(1/(z - 1)) is flagged unsupported."""
        assert not ExpPoleForm(1.0).supported
        with pytest.raises(InvalidParameterError):
            ExpPoleForm(0.5)


class TestChordalFunction:
    """Tests for members of the chordal class."""

    def test_constant_infinity(self, cardioid_map):
        """The constant ∞ evaluates without inversion."""
        assert evaluate_chordal(ChordalFunction.infinity(cardioid_map), 0.3) is INFINITY

    def test_boundary_pole_value(self, disc_map):
        """f(z) = 1/(1 - z) on the disc is ∞ at w = 1."""
        g = ChordalFunction.finite(BoundaryPoleForm([1], [1, -1]), disc_map)
        assert evaluate_chordal(g, 1.0) is INFINITY
        assert evaluate_chordal(g, -1.0) == FinitePoint(0.5)

    @pytest.mark.parametrize(
        "den, pole",
        [([1, -1], 1.0), ([1, 1], -1.0), ([1, 0, 1], 1j)],
    )
    def test_boundary_pole_on_cardioid(self, cardioid_map, den, pole):
        """A pole mapped to the cardioid boundary evaluates to ∞ through the inverse."""
        g = ChordalFunction.finite(BoundaryPoleForm([1], den), cardioid_map)
        assert evaluate_chordal(g, cardioid_map.evaluate(pole)) is INFINITY

    def test_composition_with_inverse(self, cardioid_map):
        """g(psi(1)) = f(1) for f(z) = z."""
        g = ChordalFunction.finite(PolynomialForm([0, 1]), cardioid_map)
        value = evaluate_chordal(g, 1.25)
        assert abs(value.value - 1.0) <= 1e-12

    def test_definitional_identity(self, cardioid_map):
        """g(phi(z)) = f(z) on interior points."""
        f = RationalForm([1], [2, -1])
        g = ChordalFunction.finite(f, cardioid_map)
        rng = np.random.default_rng(2)
        z = 0.9 * np.sqrt(rng.random(50)) * np.exp(1j * rng.uniform(0, TWO_PI, 50))
        for zi in z:
            value = evaluate_chordal(g, cardioid_map.evaluate(zi))
            assert abs(value.value - f(zi)) <= 1e-10


class TestBarFunction:
    """Tests for members of the disc-compactification class."""

    def test_infinite_type_directions(self, disc_map):
        """h(z) = z gives the direction ∞·e^{i Re z}."""
        g = BarFunction.infinite(PolynomialForm([0, 1]), disc_map)
        assert evaluate_bar(g, 0.0) == DirectionalPoint(0.0)
        assert evaluate_bar(g, 1j) == DirectionalPoint(0.0)
        assert evaluate_bar(g, 1.0) == DirectionalPoint(1.0)

    def test_finite_type_value(self, disc_map):
        """A finite-type member evaluates to a finite point."""
        g = BarFunction.finite(RationalForm([1], [2, -1]), disc_map)
        assert evaluate_bar(g, 0.0) == FinitePoint(0.5)

    def test_boundary_pole_rejected(self, disc_map):
        """A boundary pole has no continuous direction in the disc compactification."""
        with pytest.raises(UnsupportedFunction):
            BarFunction.finite(BoundaryPoleForm([1], [1, -1]), disc_map)

    def test_angle_generator_must_extend_past_disc(self, disc_map):
        """h must be analytic on a neighbourhood of the closed disc."""
        with pytest.raises(UnsupportedFunction):
            BarFunction.infinite(BoundaryPoleForm([1], [1, -1]), disc_map)

    def test_angle_is_harmonic(self, disc_map):
        """Re h has the mean value property on a small circle."""
        g = BarFunction.infinite(CompositeExp(1.0, [0, 1]), disc_map)
        center = 0.3 + 0.2j
        circle = center + 0.05 * np.exp(1j * TWO_PI * np.arange(64) / 64)
        assert np.mean(g.angle(circle)) == pytest.approx(float(g.angle(center)), abs=1e-8)


class TestContinuityDiagnostic:
    """Tests for the boundary modulus-of-continuity diagnostic."""

    def test_constant_has_zero_modulus(self, disc_map):
        """Constants never move."""
        report = continuity_diagnostic(ChordalFunction.finite(PolynomialForm([2]), disc_map), 64)
        assert report.estimates == [0.0, 0.0, 0.0, 0.0]
        assert not report.suspected_discontinuity

    def test_boundary_pole_is_continuous(self, disc_map):
        """1/(1 - z) is chordally continuous up to the boundary."""
        g = ChordalFunction.finite(BoundaryPoleForm([1], [1, -1]), disc_map)
        report = continuity_diagnostic(g, 128)
        assert not report.suspected_discontinuity
        assert max(report.estimates) < 10.0
        assert [level.m for level in report.levels] == [128, 256, 512, 1024]

    def test_exp_pole_is_flagged(self, disc_map):
        """exp(1/(z - 1)) oscillates without limit near z = 1."""
        g = ChordalFunction.finite(ExpPoleForm(1.0), disc_map)
        report = continuity_diagnostic(g, 128)
        assert report.suspected_discontinuity
        assert report.metric == "chi"

    def test_bar_metric_reported(self, cardioid_map):
        """Diagnostics of disc-compactification members report metric d."""
        g = BarFunction.infinite(PolynomialForm([0, 1]), cardioid_map)
        report = continuity_diagnostic(g, 64)
        assert report.metric == "d"
        assert not report.suspected_discontinuity

    def test_needs_enough_samples(self, disc_map):
        """The coarsest level needs at least 64 samples."""
        with pytest.raises(InvalidParameterError):
            continuity_diagnostic(ChordalFunction.infinity(disc_map), 32)
