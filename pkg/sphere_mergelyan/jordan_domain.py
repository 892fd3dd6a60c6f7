"""
Jordan domains given as images of the closed unit disc under an injective
polynomial psi, with the unit disc itself as the special case psi(z) = z.

Boundary samples are psi(e^{2πik/m}); membership is decided against the
m-gon through them by a winding-number test.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from sphere_mergelyan.errors import AmbiguousBoundary, InvalidParameterError
from sphere_mergelyan.models import SelfIntersection, ValidationFailure, ValidationReport
from sphere_mergelyan.polynomial import Polynomial
from sphere_mergelyan.sphere_metrics import TWO_PI

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
CRITICAL_TOL = 1e-12
MIN_VALIDATION_M = 64


class DomainKind(enum.Enum):
    UNIT_DISC = "unit_disc"
    POLYNOMIAL_IMAGE = "polynomial_image"


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """A Jordan domain psi(closed unit disc)."""

    kind: DomainKind
    psi: Polynomial

    @classmethod
    def unit_disc(cls) -> "DomainSpec":
        return cls(DomainKind.UNIT_DISC, Polynomial.identity())

    @classmethod
    def polynomial_image(cls, coeffs) -> "DomainSpec":
        """Domain psi(D) for psi with the given coefficients (constant term first).

        Trailing zeros are dropped; what remains must have degree at least 1.
        Injectivity is not checked here, see ``validate_domain``.
        """
        psi = Polynomial(coeffs)
        if psi.degree < 1:
            raise InvalidParameterError("psi must have degree at least 1")
        return cls(DomainKind.POLYNOMIAL_IMAGE, psi)

    @property
    def degree(self) -> int:
        return self.psi.degree

    @property
    def interior_point(self) -> complex:
        """psi(0), the image of the disc center."""
        return complex(self.psi.coeffs[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, DomainSpec):
            return NotImplemented
        return self.kind == other.kind and self.psi == other.psi

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.kind is DomainKind.UNIT_DISC:
            return "DomainSpec(unit_disc)"
        return f"DomainSpec(polynomial_image, coeffs={self.psi.coeffs.tolist()})"


# ==================== BOUNDARY SAMPLING ====================


def boundary_angles(m: int) -> np.ndarray:
    return TWO_PI * np.arange(m) / m


def boundary_points(spec: DomainSpec, m: int) -> np.ndarray:
    """m boundary samples psi(e^{2πik/m}), k = 0..m-1, in counterclockwise order."""
    if m < 3:
        raise InvalidParameterError(f"boundary sampling needs m >= 3, got {m}")
    z = np.exp(1j * boundary_angles(m))
    if spec.kind is DomainKind.UNIT_DISC:
        return z
    return spec.psi(z)


def polygon_distance(polygon: np.ndarray, w: complex) -> float:
    """Euclidean distance from w to the closed polygon through the given vertices."""
    a = polygon
    b = np.roll(polygon, -1)
    ab = b - a
    length2 = np.abs(ab) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.real((w - a) * np.conj(ab)) / length2
    t = np.where(length2 > 0, np.clip(t, 0.0, 1.0), 0.0)
    return float(np.min(np.abs(a + t * ab - w)))


def winding_number(polygon: np.ndarray, w: complex) -> int:
    """Winding number of the closed polygon about w (w must not lie on it)."""
    a = polygon - w
    b = np.roll(a, -1)
    total = np.sum(np.angle(b / a))
    return int(np.rint(total / TWO_PI))


def contains(spec: DomainSpec, w: complex, m: int) -> bool:
    """Membership of w in the domain, decided against the m-gon approximation.

    Raises AmbiguousBoundary when w lies within 1e-9 of the polygon.
    """
    polygon = boundary_points(spec, m)
    w = complex(w)
    dist = polygon_distance(polygon, w)
    if dist <= BOUNDARY_TOL:
        raise AmbiguousBoundary(w, dist)
    return winding_number(polygon, w) == 1


# ==================== INJECTIVITY CERTIFICATE ====================


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u.real * v.imag - u.imag * v.real


def find_self_intersection(polygon: np.ndarray) -> Optional[Tuple[int, int, complex]]:
    """First pair of non-adjacent edges that properly intersect, or None.

    Edge i joins vertex i to vertex i+1 (mod m). Pairs are scanned in
    lexicographic order so the reported pair is deterministic.
    """
    m = len(polygon)
    a = polygon
    b = np.roll(polygon, -1)
    d = b - a
    for i in range(m - 2):
        j = np.arange(i + 2, m)
        if i == 0:
            j = j[j != m - 1]
        if j.size == 0:
            continue
        p, r = a[i], d[i]
        q, s = a[j], d[j]
        o1 = _cross(r, q - p)
        o2 = _cross(r, q + s - p)
        o3 = _cross(s, p - q)
        o4 = _cross(s, p + r - q)
        hits = np.nonzero((o1 * o2 < 0) & (o3 * o4 < 0))[0]
        if hits.size:
            k = int(j[hits[0]])
            denom = _cross(r, d[k])
            t = _cross(a[k] - p, d[k]) / denom
            return i, k, complex(p + t * r)
    return None


def _derivative_grid_minimum(dpsi: Polynomial, m: int) -> Tuple[float, complex]:
    radii = np.linspace(0.0, 1.0, max(8, m // 8) + 1)
    angles = boundary_angles(m)
    z = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    values = np.abs(dpsi(z))
    k = int(np.argmin(values))
    return float(values[k]), complex(z[k])


def validate_domain(spec: DomainSpec, m: int) -> ValidationReport:
    """Numerically certify that psi is injective on the closed unit disc.

    Three checks, all of which must pass:
      derivative  psi' has no zero with |z| <= 1
      simplicity  the boundary m-gon has no self-intersection
      winding     the m-gon winds once about psi(0)
    """
    if m < MIN_VALIDATION_M:
        raise InvalidParameterError(f"validate_domain needs m >= {MIN_VALIDATION_M}, got {m}")

    failures = []
    dpsi = spec.psi.derivative()

    min_mod, min_loc = _derivative_grid_minimum(dpsi, m)
    critical = np.empty(0, dtype=complex)
    if spec.degree >= 2:
        roots = npoly.polyroots(dpsi.coeffs)
        critical = roots[np.abs(roots) <= 1.0 + CRITICAL_TOL]
        critical = critical[np.argsort(np.abs(critical), kind="stable")]
    for c in critical:
        failures.append(ValidationFailure(
            check="derivative",
            detail=f"critical point z = {c.real:.12g}{c.imag:+.12g}j in the closed disc"
            if c.imag != 0 else f"critical point z = {c.real:.12g} in the closed disc",
            location=(float(c.real), float(c.imag)),
        ))

    polygon = boundary_points(spec, m)
    intersection = None
    steps = np.abs(np.roll(polygon, -1) - polygon)
    repeated = np.nonzero(steps == 0)[0]
    if repeated.size:
        k = int(repeated[0])
        failures.append(ValidationFailure(
            check="simplicity",
            detail=f"boundary samples {k} and {(k + 1) % m} coincide",
            location=(float(polygon[k].real), float(polygon[k].imag)),
        ))
    else:
        found = find_self_intersection(polygon)
        if found is not None:
            i, j, point = found
            intersection = SelfIntersection(
                segment_a=i, segment_b=j, point=(point.real, point.imag)
            )
            failures.append(ValidationFailure(
                check="simplicity",
                detail=f"boundary segments {i} and {j} intersect",
                location=(point.real, point.imag),
            ))

    center = spec.interior_point
    winding: Optional[int] = None
    if polygon_distance(polygon, center) <= BOUNDARY_TOL:
        failures.append(ValidationFailure(
            check="winding",
            detail="psi(0) lies on the boundary polygon",
            location=(center.real, center.imag),
        ))
    else:
        winding = winding_number(polygon, center)
        if winding != 1:
            failures.append(ValidationFailure(
                check="winding",
                detail=f"boundary winds {winding} times about psi(0)",
                location=(center.real, center.imag),
            ))

    report = ValidationReport(
        passed=not failures,
        m=m,
        degree=spec.degree,
        min_derivative_modulus=min_mod,
        min_derivative_location=(min_loc.real, min_loc.imag),
        critical_points_in_closed_disc=[(float(c.real), float(c.imag)) for c in critical],
        self_intersection=intersection,
        winding_number=winding,
        failures=failures,
    )
    if report.passed:
        logger.info(f"Domain validation passed (m={m}, min|psi'|={min_mod:.3e})")
    else:
        logger.warning(f"Domain validation failed (m={m}): {[f.detail for f in failures]}")
    return report
