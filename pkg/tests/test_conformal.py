"""
Tests for the polynomial Riemann map and its Newton inverse.
"""

import numpy as np
import pytest

from sphere_mergelyan.conformal import RiemannMap, boundary_correspondence, evaluate, invert
from sphere_mergelyan.errors import InvalidParameterError, NotInClosure
from sphere_mergelyan.jordan_domain import DomainSpec, contains
from sphere_mergelyan.sphere_metrics import TWO_PI


def _disc_sample(rng, size, radius=1.0):
    r = radius * np.sqrt(rng.random(size))
    return r * np.exp(1j * rng.uniform(0, TWO_PI, size))


class TestForwardMap:
    """Tests for phi on the closed disc."""

    def test_identity_on_unit_disc(self, disc_map):
        """The unit disc map is the identity."""
        assert evaluate(disc_map, 0.3 + 0.4j) == 0.3 + 0.4j

    def test_cardioid_values(self, cardioid_map):
        """psi(1) = 1.25 and psi(i) = -0.25 + i."""
        assert evaluate(cardioid_map, 1.0) == pytest.approx(1.25)
        assert evaluate(cardioid_map, 1j) == pytest.approx(-0.25 + 1j)

    def test_outside_closed_disc_rejected(self, cardioid_map):
        """phi is only defined on the closed disc."""
        with pytest.raises(InvalidParameterError):
            evaluate(cardioid_map, 1.1)

    def test_interior_maps_inside(self, cardioid_map):
        """Points with |z| <= 0.95 land strictly inside the domain."""
        z = _disc_sample(np.random.default_rng(1), 200, radius=0.95)
        w = cardioid_map.evaluate_array(z)
        assert all(contains(cardioid_map.spec, wi, 1024) for wi in w)


class TestInverseMap:
    """Tests for the Newton inverse."""

    def test_known_preimages(self, cardioid_map):
        """phi^{-1}(psi(1)) = 1 and phi^{-1}(0) = 0."""
        assert abs(invert(cardioid_map, 1.25) - 1.0) <= 1e-12
        assert abs(invert(cardioid_map, 0.0)) <= 1e-12

    def test_unit_disc_inverse_is_identity(self, disc_map):
        """No Newton iteration for the disc itself."""
        assert invert(disc_map, 0.6 - 0.2j) == 0.6 - 0.2j

    def test_outside_point_raises(self, cardioid_map, disc_map):
        """Points outside the closed domain have no preimage."""
        with pytest.raises(NotInClosure):
            invert(cardioid_map, 3.0)
        with pytest.raises(NotInClosure):
            invert(disc_map, 2.0)

    def test_round_trip(self, cardioid_map):
        """invert(evaluate(z)) recovers z to 1e-9, boundary included."""
        rng = np.random.default_rng(0)
        z = _disc_sample(rng, 1000)
        z[:100] = np.exp(1j * rng.uniform(0, TWO_PI, 100))
        back = cardioid_map.invert_array(cardioid_map.evaluate_array(z))
        assert np.max(np.abs(back - z)) <= 1e-9

    def test_round_trip_cubic(self):
        """Round trip for psi = z + z^3/10."""
        riemann_map = RiemannMap(DomainSpec.polynomial_image([0, 1, 0, 0.1]))
        z = _disc_sample(np.random.default_rng(5), 500)
        back = riemann_map.invert_array(riemann_map.evaluate_array(z))
        assert np.max(np.abs(back - z)) <= 1e-9

    def test_boundary_preimages_on_circle(self, cardioid_map):
        """Preimages of boundary samples never leave the closed disc."""
        z = np.exp(1j * TWO_PI * np.arange(2048) / 2048)
        back = cardioid_map.invert_array(cardioid_map.evaluate_array(z))
        assert np.all(np.abs(back) <= 1.0 + 1e-15)

    def test_results_independent_of_jobs(self, cardioid_map):
        """The worker count never changes the inverse, bit for bit."""
        z = _disc_sample(np.random.default_rng(3), 3000)
        w = cardioid_map.evaluate_array(z)
        serial = cardioid_map.invert_array(w, jobs=1)
        threaded = cardioid_map.invert_array(w, jobs=4)
        np.testing.assert_array_equal(serial, threaded)


class TestBoundaryCorrespondence:
    """Tests for the boundary correspondence."""

    def test_unit_disc_pairs(self, disc_map):
        """Angles 2πk/m paired with e^{2πik/m}."""
        corr = boundary_correspondence(disc_map, 4)
        assert len(corr) == 4
        angles, points = zip(*corr)
        np.testing.assert_allclose(angles, [0, np.pi / 2, np.pi, 3 * np.pi / 2])
        np.testing.assert_allclose(points, [1, 1j, -1, -1j], atol=1e-15)

    def test_cardioid_is_monotone(self, cardioid_map):
        """The cardioid boundary is traversed once, counterclockwise."""
        assert boundary_correspondence(cardioid_map, 4096).monotone

    def test_double_cover_is_not_monotone(self):
        """psi = z^2 winds twice around its boundary."""
        riemann_map = RiemannMap(DomainSpec.polynomial_image([0, 0, 1]))
        assert not riemann_map.boundary_correspondence(256).monotone
