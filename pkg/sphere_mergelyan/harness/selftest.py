"""
Built-in self-test suites: metric axioms, the chordal bound, embedding
isometry, domain validation fixtures and inversion round trips.

Suites count individual checks and failures; a failing suite never raises.
"""

import logging
from typing import Callable, List, Optional

import numpy as np

from sphere_mergelyan.conformal import RiemannMap
from sphere_mergelyan.harness.logging_setup import BANNER
from sphere_mergelyan.jordan_domain import DomainSpec, validate_domain
from sphere_mergelyan.models import SelftestSummary, SuiteResult
from sphere_mergelyan.sphere_metrics import (
    TWO_PI,
    bar_distance_embedded,
    bar_embed,
    chordal_distance_array,
    direction_embed,
)

logger = logging.getLogger(__name__)

ChordalFn = Callable[[np.ndarray, np.ndarray], np.ndarray]

SAMPLES = 10_000
ROUND_TRIP_SAMPLES = 1_000
TRIANGLE_SLACK = 1e-12
ISOMETRY_TOL = 1e-15
ROUND_TRIP_TOL = 1e-9

POSITIVE_DOMAINS = {
    "unit disc": [0, 1],
    "z + z^2/4": [0, 1, 0.25],
    "z + z^3/10": [0, 1, 0, 0.1],
}
NEGATIVE_DOMAINS = {
    "z + z^2": [0, 1, 1],
    "z^2 + z^3/10": [0, 0, 1, 0.1],
}


def _extended_sample(rng: np.random.Generator, size: int) -> np.ndarray:
    """Finite points over many scales, with about 5% at ∞."""
    mags = 10.0 ** rng.uniform(-6, 6, size)
    z = mags * np.exp(1j * rng.uniform(0, TWO_PI, size))
    z[rng.random(size) < 0.05] = complex(np.inf, 0.0)
    return z


def _bar_sample(rng: np.random.Generator, size: int) -> np.ndarray:
    """Embedded points: about a third are directions on the unit circle."""
    finite = bar_embed(10.0 ** rng.uniform(-6, 6, size) * np.exp(1j * rng.uniform(0, TWO_PI, size)))
    directions = direction_embed(rng.uniform(-50, 50, size))
    return np.where(rng.random(size) < 1 / 3, directions, finite)


def _axioms(name: str, dist: Callable, a, b, c) -> SuiteResult:
    ab, ba = dist(a, b), dist(b, a)
    bc, ac = dist(b, c), dist(a, c)
    checks = [
        ab == ba,
        dist(a, a) == 0,
        ac <= ab + bc + TRIANGLE_SLACK,
        ab >= 0,
    ]
    failures = int(sum(np.count_nonzero(~ok) for ok in checks))
    return SuiteResult(name=name, checks=4 * len(a), failures=failures)


def metric_axioms(rng: np.random.Generator, chordal: ChordalFn) -> List[SuiteResult]:
    chi = _axioms(
        "chi metric axioms", chordal, *(_extended_sample(rng, SAMPLES) for _ in range(3))
    )
    d = _axioms(
        "d metric axioms", bar_distance_embedded, *(_bar_sample(rng, SAMPLES) for _ in range(3))
    )
    return [chi, d]


def chordal_bound(rng: np.random.Generator, chordal: ChordalFn) -> SuiteResult:
    """chi(a, b) <= |a - b| for finite a, b."""
    a = _extended_sample(rng, SAMPLES)
    b = _extended_sample(rng, SAMPLES)
    finite = np.isfinite(a) & np.isfinite(b)
    a, b = a[finite], b[finite]
    ok = chordal(a, b) <= np.abs(a - b)
    failures = int(np.count_nonzero(~ok))
    detail = None if not failures else f"{failures} pairs with chi(a, b) > |a - b|"
    return SuiteResult(name="chi <= |a - b|", checks=len(a), failures=failures, detail=detail)


def embedding_isometry(rng: np.random.Generator) -> SuiteResult:
    """d equals the Euclidean distance of z/(1+|z|) and e^{iθ} images."""
    size = SAMPLES
    z = 10.0 ** rng.uniform(-3, 3, (2, size)) * np.exp(1j * rng.uniform(0, TWO_PI, (2, size)))
    theta = rng.uniform(0, TWO_PI, (2, size))
    is_dir = rng.random((2, size)) < 0.5

    embedded = np.where(is_dir, direction_embed(theta), bar_embed(z.ravel()).reshape(z.shape))
    reference = np.where(is_dir, np.cos(theta) + 1j * np.sin(theta), z / (1.0 + np.abs(z)))
    d = bar_distance_embedded(embedded[0], embedded[1])
    ref = np.abs(reference[0] - reference[1])
    failures = int(np.count_nonzero(np.abs(d - ref) > ISOMETRY_TOL))
    return SuiteResult(name="embedding isometry", checks=size, failures=failures)


def domain_fixtures() -> SuiteResult:
    """Positive fixtures must validate; negative fixtures must be rejected."""
    checks, failures, notes = 0, 0, []
    for label, coeffs in POSITIVE_DOMAINS.items():
        spec = DomainSpec.unit_disc() if label == "unit disc" else DomainSpec.polynomial_image(coeffs)
        checks += 1
        if not validate_domain(spec, 256).passed:
            failures += 1
            notes.append(f"{label} rejected")
    for label, coeffs in NEGATIVE_DOMAINS.items():
        report = validate_domain(DomainSpec.polynomial_image(coeffs), 256)
        checks += 1
        if report.passed:
            failures += 1
            notes.append(f"{label} accepted")
        else:
            logger.info(f"  expected rejection of {label}: {report.failures[0].detail}")
    return SuiteResult(
        name="domain validation", checks=checks, failures=failures, detail="; ".join(notes) or None
    )


def round_trip(rng: np.random.Generator) -> SuiteResult:
    """|invert(evaluate(z)) - z| <= 1e-9 on random points of the closed disc."""
    checks, failures = 0, 0
    for coeffs in POSITIVE_DOMAINS.values():
        riemann_map = RiemannMap(DomainSpec.polynomial_image(coeffs))
        radius = np.sqrt(rng.random(ROUND_TRIP_SAMPLES))
        radius[: ROUND_TRIP_SAMPLES // 10] = 1.0
        z = radius * np.exp(1j * rng.uniform(0, TWO_PI, ROUND_TRIP_SAMPLES))
        back = riemann_map.invert_array(riemann_map.evaluate_array(z))
        checks += len(z)
        failures += int(np.count_nonzero(np.abs(back - z) > ROUND_TRIP_TOL))
    return SuiteResult(name="inversion round trip", checks=checks, failures=failures)


def run_selftest(seed: int = 0, chordal: Optional[ChordalFn] = None) -> SelftestSummary:
    """Run every suite; ``chordal`` replaces the chordal metric (debug hook)."""
    chordal = chordal or chordal_distance_array
    rng = np.random.default_rng(seed)

    suites = metric_axioms(rng, chordal)
    suites.append(chordal_bound(rng, chordal))
    suites.append(embedding_isometry(rng))
    suites.append(domain_fixtures())
    suites.append(round_trip(rng))
    summary = SelftestSummary(seed=seed, suites=suites)

    logger.info(BANNER)
    logger.info("SELFTEST RESULTS")
    logger.info(BANNER)
    for suite in suites:
        status = "PASS" if suite.passed else "FAIL"
        line = f"  [{status}] {suite.name}: {suite.checks - suite.failures}/{suite.checks}"
        if suite.detail:
            line += f" ({suite.detail})"
        logger.info(line)
    logger.info(f"  Seed: {seed}; overall: {'PASS' if summary.passed else 'FAIL'}")
    return summary
