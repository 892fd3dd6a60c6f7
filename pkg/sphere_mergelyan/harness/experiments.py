"""
Experiment files: loading, building the numerical objects they describe, and
running convergence studies, single approximations and diagnostics.
"""

import json
import logging
import time
from pathlib import Path
from typing import Optional, Tuple, Union

from pydantic import ValidationError

from config import settings
from sphere_mergelyan.approx import (
    PipelineControls,
    VerificationGrid,
    bar_pipeline,
    chordal_pipeline,
    measure_sup,
)
from sphere_mergelyan.conformal import RiemannMap
from sphere_mergelyan.errors import (
    ConfigError,
    DomainRejected,
    InvalidParameterError,
    SphereMergelyanError,
    UnsupportedFunction,
)
from sphere_mergelyan.function_classes import (
    AnalyticEvaluator,
    BarFunction,
    BoundaryPoleForm,
    ChordalFunction,
    CompositeExp,
    ExpPoleForm,
    PolynomialForm,
    RationalForm,
    continuity_diagnostic,
)
from sphere_mergelyan.harness.logging_setup import RunStats, banner
from sphere_mergelyan.jordan_domain import DomainSpec, validate_domain
from sphere_mergelyan.models import (
    ApproximationResult,
    BoundaryPoleFunctionConfig,
    CompositeExpFunctionConfig,
    ContinuityReport,
    ConvergenceRow,
    ConvergenceTable,
    ExperimentConfig,
    ExpPoleFunctionConfig,
    InfiniteTypeConfig,
    InfinityConstantConfig,
    Metric,
    PolynomialFunctionConfig,
    PolynomialImageConfig,
    RationalFunctionConfig,
    ValidationReport,
)
from sphere_mergelyan.polynomial import Polynomial, pairs_to_complex

logger = logging.getLogger(__name__)

Target = Union[ChordalFunction, BarFunction]

VALIDATION_M = 1024
CONTINUITY_M = 256


# ==================== LOADING ====================


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Parse and validate an experiment file.

    Raises:
        ConfigError: unreadable file, malformed JSON (with line and column)
            or schema violations (with dotted key paths)
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}", [str(e)]) from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"malformed JSON in {path}", [f"line {e.lineno}, column {e.colno}: {e.msg}"]
        ) from e

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        diagnostics = [
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in e.errors()
        ]
        raise ConfigError(f"invalid config {path}", diagnostics) from e


def default_output(config_path: Union[str, Path], suffix: str = ".csv") -> Path:
    return Path(settings.results_dir) / (Path(config_path).stem + suffix)


# ==================== BUILDERS ====================


def build_domain(config: ExperimentConfig) -> DomainSpec:
    domain = config.domain
    if isinstance(domain, PolynomialImageConfig):
        try:
            return DomainSpec.polynomial_image(pairs_to_complex(domain.coeffs))
        except InvalidParameterError as e:
            raise ConfigError("invalid domain", [f"domain.coeffs: {e}"]) from e
    return DomainSpec.unit_disc()


def build_map(config: ExperimentConfig, spec: DomainSpec) -> RiemannMap:
    inv = config.inverse
    return RiemannMap(spec, newton_tol=inv.tol, max_iter=inv.max_iter, grid=inv.grid)


def build_evaluator(desc, key: str = "function") -> AnalyticEvaluator:
    """Catalogue evaluator for a function descriptor."""
    try:
        if isinstance(desc, PolynomialFunctionConfig):
            return PolynomialForm(pairs_to_complex(desc.coeffs))
        if isinstance(desc, RationalFunctionConfig):
            return RationalForm(pairs_to_complex(desc.num), pairs_to_complex(desc.den))
        if isinstance(desc, BoundaryPoleFunctionConfig):
            return BoundaryPoleForm(pairs_to_complex(desc.num), pairs_to_complex(desc.den))
        if isinstance(desc, CompositeExpFunctionConfig):
            return CompositeExp(complex(*desc.c), pairs_to_complex(desc.p))
        if isinstance(desc, ExpPoleFunctionConfig):
            return ExpPoleForm(complex(*desc.pole))
    except InvalidParameterError as e:
        raise ConfigError("invalid function", [f"{key}: {e}"]) from e
    raise ConfigError("invalid function", [f"{key}.kind: {desc.kind!r} is not an analytic evaluator"])


def build_function(
    config: ExperimentConfig,
    riemann_map: RiemannMap,
    allow_diagnostic: bool = False,
) -> Target:
    """The approximation target described by ``config.function``."""
    desc = config.function
    if isinstance(desc, ExpPoleFunctionConfig) and not allow_diagnostic:
        raise ConfigError(
            "invalid function", ["function.kind: 'exp_pole' is accepted by the continuity command only"]
        )
    try:
        if isinstance(desc, InfinityConstantConfig):
            return ChordalFunction.infinity(riemann_map)
        if isinstance(desc, InfiniteTypeConfig):
            if isinstance(desc.h, list):
                h = PolynomialForm(pairs_to_complex(desc.h))
            else:
                h = build_evaluator(desc.h, key="function.h")
            return BarFunction.infinite(h, riemann_map)
        f = build_evaluator(desc)
        if config.metric == "d":
            return BarFunction.finite(f, riemann_map)
        return ChordalFunction.finite(f, riemann_map)
    except UnsupportedFunction as e:
        raise ConfigError("unsupported function", [f"function: {e}"]) from e


def build_controls(config: ExperimentConfig, jobs: int = 1) -> PipelineControls:
    c = config.controls
    return PipelineControls(
        r=c.r,
        r_schedule=c.r_schedule,
        magnitude=c.magnitude,
        boundary_m=c.boundary_m,
        verification_boundary=c.verification.boundary,
        verification_interior=c.verification.interior,
        jobs=jobs,
    )


def prepare(config: ExperimentConfig) -> Tuple[DomainSpec, RiemannMap, Target]:
    """Domain (validated), Riemann map and target for a pipeline run."""
    spec = build_domain(config)
    report = validate_domain(spec, VALIDATION_M)
    if not report.passed:
        raise DomainRejected(report)
    riemann_map = build_map(config, spec)
    return spec, riemann_map, build_function(config, riemann_map)


# ==================== OPERATIONS ====================


def sup_error(
    g: Target,
    Q: Polynomial,
    spec: DomainSpec,
    metric: Metric,
    grid: Optional[VerificationGrid] = None,
    jobs: int = 1,
) -> float:
    """max over the verification grids of chi or d between Q(w) and g(w)."""
    expected = "d" if isinstance(g, BarFunction) else "chi"
    if metric != expected:
        raise InvalidParameterError(f"{type(g).__name__} is measured in {expected!r}, not {metric!r}")
    riemann_map = g.riemann_map if g.riemann_map is not None else RiemannMap(spec)
    return measure_sup(g, Q, riemann_map, grid or VerificationGrid.build(), jobs=jobs)


def run_pipeline(g: Target, spec: DomainSpec, n: int, controls: PipelineControls):
    if isinstance(g, BarFunction):
        return bar_pipeline(g, spec, n, controls)
    return chordal_pipeline(g, spec, n, controls)


def run_convergence(
    config: ExperimentConfig,
    jobs: int = 1,
    output: Optional[Union[str, Path]] = None,
    timings: Optional[bool] = None,
) -> ConvergenceTable:
    """One pipeline run per configured degree, in degree order.

    Stage errors are recorded per row and do not stop the study. The CSV is
    written when an output path is given.
    """
    banner("CONVERGENCE STUDY")
    spec, riemann_map, g = prepare(config)
    controls = build_controls(config, jobs)
    with_timings = config.timings if timings is None else timings
    stats = RunStats("convergence")

    logger.info(f"Domain: {spec!r}; metric: {config.metric}; degrees: {config.degrees}")
    rows = []
    for n in config.degrees:
        start = time.perf_counter()
        try:
            _, report = run_pipeline(g, spec, n, controls)
        except SphereMergelyanError as e:
            logger.error(f"Degree {n} failed: {type(e).__name__}: {e}")
            rows.append(ConvergenceRow(degree=n, error=f"{type(e).__name__}: {e}"))
            stats.record(None)
            continue
        seconds = time.perf_counter() - start
        stages = report.stage_errors
        logger.info(f"  n={n:4d}  total={stages.total:.3e}  ({seconds:.2f}s)")
        rows.append(ConvergenceRow(
            degree=n,
            disc_stage=stages.disc_stage,
            mergelyan_stage=stages.mergelyan_stage,
            total=stages.total,
            seconds=seconds if with_timings else None,
        ))
        stats.record(stages.total)

    table = ConvergenceTable(metric=config.metric, rows=rows)
    if output is not None:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(path)
        logger.info(f"Wrote {path}")
    stats.print_summary()
    return table


def run_approx(
    config: ExperimentConfig,
    degree: Optional[int] = None,
    jobs: int = 1,
    output: Optional[Union[str, Path]] = None,
) -> ApproximationResult:
    """Single pipeline run; defaults to the largest configured degree."""
    banner("APPROXIMATION")
    spec, _, g = prepare(config)
    n = config.degrees[-1] if degree is None else degree
    if n < 0:
        raise ConfigError("invalid degree", [f"--degree: must be nonnegative, got {n}"])
    Q, report = run_pipeline(g, spec, n, build_controls(config, jobs))
    result = ApproximationResult(
        report=report,
        coeffs=[tuple(p) for p in Q.to_pairs()],
        center=(Q.center.real, Q.center.imag),
        scale=Q.scale,
    )
    if output is not None:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(result.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"Wrote {path}")
    return result


def run_validate(config: ExperimentConfig, m: int = VALIDATION_M) -> ValidationReport:
    banner("DOMAIN VALIDATION")
    return validate_domain(build_domain(config), m)


def run_continuity(config: ExperimentConfig, m: Optional[int] = None) -> ContinuityReport:
    """Boundary continuity diagnostic; exp_pole functions are allowed here."""
    banner("CONTINUITY DIAGNOSTIC")
    spec = build_domain(config)
    g = build_function(config, build_map(config, spec), allow_diagnostic=True)
    report = continuity_diagnostic(g, m or config.controls.boundary_m or CONTINUITY_M)
    for level in report.levels:
        logger.info(f"  m={level.m:6d}  estimate={level.estimate:.4e}")
    if report.suspected_discontinuity:
        logger.warning("Estimates keep growing under refinement: boundary discontinuity suspected")
    return report
