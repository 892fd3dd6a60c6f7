"""
Polynomial approximation in the chordal and disc-compactification metrics.

Construction of Q_n for a target g = f∘phi^{-1} on a domain:

    1. disc stage       P = Taylor truncation of the dilation z -> f(rz)
    2. push forward     F = P∘phi^{-1}, holomorphic on the domain
    3. fitting stage    Q = least-squares fit of F on boundary samples in an
                        orthonormalized polynomial basis (Vandermonde with
                        Arnoldi)

Since chi(a, b) <= |a - b| and the disc embedding is 1-Lipschitz, the total
error at every verification point is bounded by the disc-stage error plus the
fitting-stage error at the same point. Both stages are measured on the same
points as the total so the reported numbers obey that bound exactly.
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np

from config import settings
from sphere_mergelyan.conformal import RiemannMap
from sphere_mergelyan.errors import (
    IllConditioned,
    InsufficientSamples,
    InvalidParameterError,
    QuadratureUnstable,
    TruncationDominates,
    UnsupportedFunction,
)
from sphere_mergelyan.function_classes import AnalyticEvaluator, BarFunction, ChordalFunction
from sphere_mergelyan.jordan_domain import DomainSpec, boundary_points
from sphere_mergelyan.models import ApproximationReport, GridSizes, StageErrors
from sphere_mergelyan.parallel import chunked_max
from sphere_mergelyan.polynomial import Polynomial
from sphere_mergelyan.sphere_metrics import TWO_PI, bar_embed, chordal_distance_array

logger = logging.getLogger(__name__)

__all__ = [
    "ApproximationReport",
    "InfiniteDiscStage",
    "PipelineControls",
    "Polynomial",
    "VerificationGrid",
    "bar_infinite_disc_approx",
    "bar_pipeline",
    "choose_dilation",
    "chordal_pipeline",
    "disc_chordal_approx",
    "measure_sup",
    "mergelyan_step",
    "pull_back",
    "pullback_error",
    "taylor_truncate",
]

_EPS = np.finfo(float).eps
ALIAS_EXPONENT = 37.0  # e^{-37} < 1e-16
ORTHONORMALITY_TOL = 1e-8
SAMPLES_PER_DEGREE = 10
MIN_BOUNDARY_M = 1024
DEFAULT_SCHEDULE = "conservative"
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

Target = Union[ChordalFunction, BarFunction]


# ==================== VERIFICATION GRIDS ====================


@dataclass(frozen=True)
class VerificationGrid:
    """Disc-side verification points; their images are the domain grid.

    Boundary: e^{2πik/B}. Interior: a sunflower lattice of I points in the
    open disc.
    """

    boundary: np.ndarray
    interior: np.ndarray

    @classmethod
    def build(cls, boundary: Optional[int] = None, interior: Optional[int] = None) -> "VerificationGrid":
        b = boundary or settings.verification.boundary
        i = interior or settings.verification.interior
        if b < 3 or i < 1:
            raise InvalidParameterError(f"verification grid needs boundary >= 3 and interior >= 1, got {b}, {i}")
        j = np.arange(i)
        interior_pts = np.sqrt((j + 0.5) / i) * np.exp(1j * GOLDEN_ANGLE * j)
        return cls(boundary=np.exp(1j * TWO_PI * np.arange(b) / b), interior=interior_pts)

    @property
    def points(self) -> np.ndarray:
        return np.concatenate([self.boundary, self.interior])

    @property
    def sizes(self) -> Tuple[int, int]:
        return len(self.boundary), len(self.interior)


# ==================== DISC STAGE ====================


def _required_nodes(radius: float, rho: float, n: int) -> int:
    """Smallest power of two covering the degree and the aliasing error."""
    q = settings.quadrature
    need = max(q.min_nodes, q.nodes_per_degree * n)
    if math.isfinite(radius):
        need = max(need, math.ceil(ALIAS_EXPONENT / math.log(radius / rho)))
    return 1 << max(0, (need - 1).bit_length())


def _node_count(radius: float, rho: float, n: int) -> int:
    nodes = _required_nodes(radius, rho, n)
    if nodes > settings.quadrature.max_nodes:
        raise QuadratureUnstable(
            f"{nodes} quadrature nodes needed (radius of analyticity {radius:.6g}, "
            f"contour radius {rho:.6g}); budget is {settings.quadrature.max_nodes}"
        )
    return nodes


def _contour_coefficients(f: AnalyticEvaluator, rho: float, nodes: int, n: int) -> Tuple[np.ndarray, float]:
    """a_k rho^k for k <= n by the trapezoid rule on |z| = rho (one FFT)."""
    samples = f(rho * np.exp(1j * TWO_PI * np.arange(nodes) / nodes))
    return np.fft.fft(samples)[: n + 1] / nodes, float(np.max(np.abs(samples)))


def taylor_truncate(f: AnalyticEvaluator, r: float, n: int) -> Polynomial:
    """Degree-n Taylor truncation of z -> f(rz).

    Coefficients come from Cauchy integrals on the circle rho = (1 + r)/2,
    which must lie inside the disc of analyticity of f; r = 1 is allowed when
    f is analytic past the closed disc. The node count is the smallest power
    of two covering both the degree and the aliasing error, and the result is
    checked once against twice as many nodes.

    Raises:
        QuadratureUnstable: node budget exceeded or the doubling check failed
    """
    if n < 0:
        raise InvalidParameterError(f"degree must be nonnegative, got {n}")
    if not f.supported:
        raise UnsupportedFunction(f"{f!r} has no Taylor expansion usable on the closed disc")
    radius = f.radius_of_analyticity
    if not (0.0 < r <= 1.0) or r >= radius:
        raise InvalidParameterError(f"dilation r = {r} must satisfy 0 < r <= 1 and r < {radius}")

    rho = (1.0 + r) / 2.0
    nodes = _node_count(radius, rho, n)
    ratio = (r / rho) ** np.arange(n + 1)

    coarse, size = _contour_coefficients(f, rho, nodes, n)
    fine, _ = _contour_coefficients(f, rho, 2 * nodes, n)
    coarse, fine = coarse * ratio, fine * ratio

    tol = settings.quadrature.consistency_tol * max(1.0, size)
    drift = float(np.max(np.abs(coarse - fine)))
    if drift >= tol:
        raise QuadratureUnstable(
            f"doubling {nodes} nodes moved a coefficient by {drift:.3e} (tolerance {tol:.3e})"
        )

    fine = np.where(np.abs(fine) <= 8.0 * _EPS * size, 0.0, fine)
    logger.debug(f"taylor_truncate: n={n}, r={r:.6g}, nodes={2 * nodes}, drift={drift:.2e}")
    return Polynomial(fine)


def _conservative_dilation(n: int) -> float:
    return max(0.99, 1.0 - 1.0 / n) if n > 0 else 0.99


def choose_dilation(
    f: Optional[AnalyticEvaluator],
    n: int,
    schedule: str = DEFAULT_SCHEDULE,
    r: Optional[float] = None,
) -> float:
    """Dilation radius for degree n.

    conservative  max(0.99, 1 - 1/n) (the default)
    auto          1 when f is analytic past the closed disc, else
                  1 - ln(n+2)/(n+2); a pole so close to the circle that
                  r = 1 would exceed the quadrature node budget falls back
                  to conservative
    An explicit r wins over both.
    """
    if r is not None:
        return float(r)
    if schedule == "conservative":
        return _conservative_dilation(n)
    if schedule != "auto":
        raise InvalidParameterError(f"unknown dilation schedule {schedule!r}")
    if f is None:
        return 1.0
    if not f.analytic_past_closed_disc:
        return 1.0 - math.log(n + 2) / (n + 2)
    if _required_nodes(f.radius_of_analyticity, 1.0, n) > settings.quadrature.max_nodes:
        fallback = _conservative_dilation(n)
        logger.debug(f"r = 1 exceeds the quadrature node budget for {f!r}; using r = {fallback:.6g}")
        return fallback
    return 1.0


def _gap(g: Target, values: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Pointwise metric distance between ``values`` and g at disc points z."""
    if isinstance(g, BarFunction):
        return np.abs(bar_embed(values) - g.disc_embedded(z))
    return chordal_distance_array(values, g.disc_values(z))


def _disc_stage_max(g: Target, P: Polynomial, z: np.ndarray, jobs: int) -> float:
    return chunked_max(lambda zc: _gap(g, P(zc), zc), z, jobs=jobs)


def disc_chordal_approx(
    f: ChordalFunction,
    n: int,
    r: Optional[float] = None,
    grid: Optional[VerificationGrid] = None,
    jobs: int = 1,
) -> Tuple[Polynomial, float]:
    """Disc-side polynomial P and sup over the disc of chi(P, f).

    The constant ∞ is approximated by the constant n with the exact error
    1/sqrt(1 + n^2).
    """
    if f.is_infinity:
        return Polynomial.constant(float(n)), 1.0 / math.hypot(1.0, n)
    if not f.evaluator.supported:
        raise UnsupportedFunction(f"{f.evaluator!r} is a diagnostic-only function")
    grid = grid or VerificationGrid.build()
    P = taylor_truncate(f.evaluator, choose_dilation(f.evaluator, n, r=r), n)
    return P, _disc_stage_max(f, P, grid.points, jobs)


class _MagnifiedExp(AnalyticEvaluator):
    """z -> R * exp(i h(z)): modulus R e^{-Im h}, argument Re h."""

    def __init__(self, h: AnalyticEvaluator, magnitude: float):
        self.h = h
        self.magnitude = float(magnitude)

    @property
    def radius_of_analyticity(self) -> float:
        return self.h.radius_of_analyticity

    def _raw(self, z):
        return self.magnitude * np.exp(1j * self.h(z))

    def __repr__(self) -> str:
        return f"_MagnifiedExp({self.h!r}, R={self.magnitude:g})"


@dataclass(frozen=True)
class InfiniteDiscStage:
    """Disc-stage record for an infinite-type target ∞·e^{i Re h}.

    error            sup d(P(z), ∞·e^{iθ(z)}) on the grid
    analytic_bound   1 / (1 + R e^{-max Im h}), the magnitude term
    truncation_term  sup d(P(z), R e^{i h(rz)})
    dilation_term    sup d(R e^{i h(rz)}, R e^{i h(z)})
    taylor_tail      sup |P(z) / R - e^{i h(rz)}|
    """

    error: float
    analytic_bound: float
    truncation_term: float
    dilation_term: float
    taylor_tail: float

    @property
    def truncation_dominates(self) -> bool:
        return self.taylor_tail > self.analytic_bound


def bar_infinite_disc_approx(
    h: AnalyticEvaluator,
    magnitude: float,
    n: int,
    r: float = 1.0,
    grid: Optional[VerificationGrid] = None,
) -> Tuple[Polynomial, InfiniteDiscStage]:
    """Disc-side P for ∞·e^{i Re h}: Taylor truncation of z -> R e^{i h(rz)}.

    Warns with TruncationDominates when the Taylor tail is larger than the
    magnitude bound, in which case n should grow.
    """
    if magnitude < 1.0:
        raise InvalidParameterError(f"magnitude R must be >= 1, got {magnitude}")
    if not h.analytic_past_closed_disc:
        raise UnsupportedFunction("the angle generator h must be analytic past the closed disc")
    grid = grid or VerificationGrid.build()
    A = _MagnifiedExp(h, magnitude)
    P = taylor_truncate(A, r, n)

    z = grid.points
    direction = np.exp(1j * np.mod(np.real(h(z)), TWO_PI))
    p_values = P(z)
    a_dilated = A(r * z)
    a_values = A(z) if r != 1.0 else a_dilated

    max_im = float(np.max(np.imag(h(grid.boundary))))
    stage = InfiniteDiscStage(
        error=float(np.max(np.abs(bar_embed(p_values) - direction))),
        analytic_bound=1.0 / (1.0 + magnitude * math.exp(-max_im)),
        truncation_term=float(np.max(np.abs(bar_embed(p_values) - bar_embed(a_dilated)))),
        dilation_term=float(np.max(np.abs(bar_embed(a_dilated) - bar_embed(a_values)))),
        taylor_tail=float(np.max(np.abs(p_values / magnitude - a_dilated / magnitude))),
    )
    if stage.truncation_dominates:
        warnings.warn(
            f"Taylor tail {stage.taylor_tail:.3e} exceeds the magnitude bound "
            f"{stage.analytic_bound:.3e} at degree {n}; increase the degree",
            TruncationDominates,
            stacklevel=2,
        )
    return P, stage


# ==================== FITTING STAGE ====================


def mergelyan_step(
    F: Callable[[np.ndarray], np.ndarray],
    spec: DomainSpec,
    n: int,
    m: int,
) -> Tuple[Polynomial, float]:
    """Least-squares degree-n fit of F on m boundary samples.

    The basis is built by Arnoldi iteration on s = (w - c)/scale (c the
    sample centroid, scale the largest |w - c|) with two Gram-Schmidt passes
    per step, normalized so that Q^H Q / m = I. The fit is converted to
    monomial coefficients in s through the Hessenberg recurrence. The error
    is max |F - Q| over 4m boundary samples.

    Raises:
        InsufficientSamples: m < 10 (n + 1)
        IllConditioned: the basis is further than 1e-8 from orthonormal
    """
    if n < 0:
        raise InvalidParameterError(f"degree must be nonnegative, got {n}")
    if m < SAMPLES_PER_DEGREE * (n + 1):
        raise InsufficientSamples(f"degree {n} needs at least {SAMPLES_PER_DEGREE * (n + 1)} samples, got {m}")

    w = boundary_points(spec, m)
    values = np.asarray(F(w), dtype=complex)
    if np.all(values == values[0]):
        Q = Polynomial.constant(values[0])
        check = boundary_points(spec, 4 * m)
        return Q, float(np.max(np.abs(np.asarray(F(check), dtype=complex) - Q(check))))

    center = complex(np.mean(w))
    scale = float(np.max(np.abs(w - center)))
    s = (w - center) / scale

    basis = np.zeros((m, n + 1), dtype=complex)
    hess = np.zeros((n + 1, n), dtype=complex)
    basis[:, 0] = 1.0
    for k in range(n):
        q = s * basis[:, k]
        for _ in range(2):
            h = basis[:, : k + 1].conj().T @ q / m
            q = q - basis[:, : k + 1] @ h
            hess[: k + 1, k] += h
        norm = np.linalg.norm(q) / math.sqrt(m)
        if norm == 0.0:
            raise IllConditioned(f"Arnoldi breakdown at step {k + 1}")
        hess[k + 1, k] = norm
        basis[:, k + 1] = q / norm

    drift = float(np.max(np.abs(basis.conj().T @ basis / m - np.eye(n + 1))))
    if drift > ORTHONORMALITY_TOL:
        raise IllConditioned(f"basis orthonormality drift {drift:.3e} at degree {n}")

    d = np.linalg.lstsq(basis, values, rcond=None)[0]
    scale_f = float(np.max(np.abs(values))) if values.size else 0.0
    d = np.where(np.abs(d) <= (n + 1) * _EPS * scale_f, 0.0, d)

    # Monomial coefficients (in s) of each basis polynomial, column by column
    mono = np.zeros((n + 1, n + 1), dtype=complex)
    mono[0, 0] = 1.0
    for k in range(n):
        shifted = np.concatenate([[0.0], mono[:n, k]])
        mono[:, k + 1] = (shifted - mono[:, : k + 1] @ hess[: k + 1, k]) / hess[k + 1, k]
    Q = Polynomial(mono @ d, center=center, scale=scale)

    check = boundary_points(spec, 4 * m)
    error = float(np.max(np.abs(np.asarray(F(check), dtype=complex) - Q(check))))
    logger.debug(f"mergelyan_step: n={n}, m={m}, drift={drift:.2e}, error={error:.3e}")
    return Q, error


# ==================== MEASUREMENT ====================


def _domain_samples(riemann_map: RiemannMap, grid: VerificationGrid, jobs: int):
    """Domain grid w = psi(z_v) and the preimages recovered by inversion."""
    w = riemann_map.evaluate_array(grid.points)
    return w, riemann_map.invert_array(w, jobs=jobs)


def _total_sup(g: Target, Q: Polynomial, w: np.ndarray, z: np.ndarray, jobs: int) -> float:
    idx = np.arange(len(w))
    return chunked_max(lambda i: _gap(g, Q(w[i]), z[i]), idx, jobs=jobs)


def measure_sup(
    g: Target,
    Q: Polynomial,
    riemann_map: RiemannMap,
    grid: VerificationGrid,
    jobs: int = 1,
) -> float:
    """max over the domain verification grid of the metric between Q(w) and g(w).

    g(w) is evaluated as f(phi^{-1}(w)) with the numerical inverse.
    """
    w, z = _domain_samples(riemann_map, grid, jobs)
    return _total_sup(g, Q, w, z, jobs)


def pull_back(Q: Polynomial, riemann_map: RiemannMap) -> Polynomial:
    """The disc polynomial Q∘psi."""
    return Q.compose(riemann_map.forward)


def pullback_error(
    g: Target,
    Q: Polynomial,
    riemann_map: RiemannMap,
    grid: VerificationGrid,
    jobs: int = 1,
) -> float:
    """max over the disc verification grid of the metric between (Q∘psi)(z) and f(z)."""
    pulled = pull_back(Q, riemann_map)
    return _disc_stage_max(g, pulled, grid.points, jobs)


# ==================== PIPELINES ====================


@dataclass(frozen=True)
class PipelineControls:
    """Per-run knobs; None falls back to schedules and settings.

    r_schedule None means conservative for f and auto for the angle generator
    of an infinite-type target, which is analytic past the closed disc.
    """

    r: Optional[float] = None
    r_schedule: Optional[str] = None
    magnitude: float = 1000.0
    boundary_m: Optional[int] = None
    verification_boundary: Optional[int] = None
    verification_interior: Optional[int] = None
    jobs: int = 1
    notes: Tuple[str, ...] = field(default=())

    def boundary_samples(self, n: int) -> int:
        return self.boundary_m or max(MIN_BOUNDARY_M, SAMPLES_PER_DEGREE * (n + 1))

    def grid(self) -> VerificationGrid:
        return VerificationGrid.build(self.verification_boundary, self.verification_interior)


def _resolve_map(g: Target, spec: DomainSpec) -> RiemannMap:
    if g.riemann_map is not None:
        if g.riemann_map.spec != spec:
            raise InvalidParameterError("function and pipeline disagree on the domain")
        return g.riemann_map
    return RiemannMap(spec)


def _run_pipeline(
    g: Target,
    spec: DomainSpec,
    n: int,
    P: Polynomial,
    disc_error: float,
    controls: PipelineControls,
    grid: VerificationGrid,
    riemann_map: RiemannMap,
) -> Tuple[Polynomial, StageErrors, int]:
    jobs = controls.jobs
    m = controls.boundary_samples(n)

    def pushed_forward(w):
        return P(riemann_map.invert_array(w, jobs=jobs))

    Q, fit_error = mergelyan_step(pushed_forward, spec, n, m)

    w, z = _domain_samples(riemann_map, grid, jobs)
    idx = np.arange(len(w))
    disc_stage = max(disc_error, _disc_stage_max(g, P, z, jobs))
    fit_stage = max(fit_error, chunked_max(lambda i: np.abs(Q(w[i]) - P(z[i])), idx, jobs=jobs))
    total = _total_sup(g, Q, w, z, jobs)
    return Q, StageErrors(disc_stage=disc_stage, mergelyan_stage=fit_stage, total=total), m


def chordal_pipeline(
    g: ChordalFunction,
    spec: DomainSpec,
    n: int,
    controls: Optional[PipelineControls] = None,
) -> Tuple[Polynomial, ApproximationReport]:
    """Q_n approximating g uniformly in the chordal metric on the closed domain."""
    controls = controls or PipelineControls()
    riemann_map = _resolve_map(g, spec)
    grid = controls.grid()

    r = None
    if g.is_infinity:
        P, disc_error = disc_chordal_approx(g, n)
    else:
        if not g.evaluator.supported:
            raise UnsupportedFunction(f"{g.evaluator!r} is a diagnostic-only function")
        r = choose_dilation(g.evaluator, n, controls.r_schedule or DEFAULT_SCHEDULE, controls.r)
        P, disc_error = disc_chordal_approx(g, n, r=r, grid=grid, jobs=controls.jobs)

    Q, stages, m = _run_pipeline(g, spec, n, P, disc_error, controls, grid, riemann_map)
    report = ApproximationReport(
        degree=n,
        metric="chi",
        stage_errors=stages,
        grids=GridSizes(boundary_m=m, verification_boundary=grid.sizes[0], verification_interior=grid.sizes[1]),
        dilation_r=r,
        magnitude_R=float(n) if g.is_infinity else None,
        pullback_error=pullback_error(g, Q, riemann_map, grid, controls.jobs),
        notes=list(controls.notes),
    )
    logger.info(
        f"chi pipeline n={n}: disc={stages.disc_stage:.3e} "
        f"fit={stages.mergelyan_stage:.3e} total={stages.total:.3e}"
    )
    return Q, report


def bar_pipeline(
    g: BarFunction,
    spec: DomainSpec,
    n: int,
    controls: Optional[PipelineControls] = None,
) -> Tuple[Polynomial, ApproximationReport]:
    """Q_n approximating g uniformly in the metric d on the closed domain."""
    controls = controls or PipelineControls()
    riemann_map = _resolve_map(g, spec)
    grid = controls.grid()
    notes = list(controls.notes)

    if not g.evaluator.supported:
        raise UnsupportedFunction(f"{g.evaluator!r} is a diagnostic-only function")
    default = "auto" if g.infinite_type else DEFAULT_SCHEDULE
    r = choose_dilation(g.evaluator, n, controls.r_schedule or default, controls.r)

    stage: Optional[InfiniteDiscStage] = None
    if g.infinite_type:
        P, stage = bar_infinite_disc_approx(g.evaluator, controls.magnitude, n, r=r, grid=grid)
        disc_error = stage.error
        if stage.truncation_dominates:
            notes.append("truncation dominates the magnitude bound; increase the degree")
    else:
        P = taylor_truncate(g.evaluator, r, n)
        disc_error = _disc_stage_max(g, P, grid.points, controls.jobs)
        notes.append("fitting-stage errors are Euclidean; d(a, b) <= |a - b| for finite a, b")

    Q, stages, m = _run_pipeline(g, spec, n, P, disc_error, controls, grid, riemann_map)
    report = ApproximationReport(
        degree=n,
        metric="d",
        stage_errors=stages,
        grids=GridSizes(boundary_m=m, verification_boundary=grid.sizes[0], verification_interior=grid.sizes[1]),
        dilation_r=r,
        magnitude_R=controls.magnitude if g.infinite_type else None,
        analytic_bound=stage.analytic_bound if stage else None,
        truncation_term=stage.truncation_term if stage else None,
        dilation_term=stage.dilation_term if stage else None,
        taylor_tail=stage.taylor_tail if stage else None,
        truncation_dominates=bool(stage and stage.truncation_dominates),
        pullback_error=pullback_error(g, Q, riemann_map, grid, controls.jobs),
        notes=notes,
    )
    logger.info(
        f"d pipeline n={n}: disc={stages.disc_stage:.3e} "
        f"fit={stages.mergelyan_stage:.3e} total={stages.total:.3e}"
    )
    return Q, report
