"""
Pydantic models for reports and experiment configuration.

These models define the structure of everything the laboratory reads from
experiment files or writes to report files, separate from the numerical
objects (DomainSpec, RiemannMap, Polynomial, ...) they describe. Complex
numbers travel as ``[re, im]`` pairs.
"""

from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ComplexPair = Tuple[float, float]
Metric = Literal["chi", "d"]

CSV_COLUMNS = ["degree", "disc_stage", "mergelyan_stage", "total", "seconds"]


# ==================== DOMAIN VALIDATION ====================

class ValidationFailure(BaseModel):
    """One failed check of the injectivity certificate."""
    check: Literal["derivative", "simplicity", "winding"]
    detail: str
    location: Optional[ComplexPair] = None


class SelfIntersection(BaseModel):
    """First properly intersecting pair of boundary segments."""
    segment_a: int
    segment_b: int
    point: ComplexPair


class ValidationReport(BaseModel):
    """Numerical certificate that psi is injective on the closed disc."""
    passed: bool
    m: int
    degree: int
    min_derivative_modulus: float
    min_derivative_location: ComplexPair
    critical_points_in_closed_disc: List[ComplexPair] = []
    self_intersection: Optional[SelfIntersection] = None
    winding_number: Optional[int] = None
    failures: List[ValidationFailure] = []

    def failed_checks(self) -> List[str]:
        return [f.check for f in self.failures]


# ==================== CONTINUITY DIAGNOSTIC ====================

class ContinuityLevel(BaseModel):
    """Modulus-of-continuity estimate at one boundary resolution."""
    m: int
    estimate: float


class ContinuityReport(BaseModel):
    """Empirical boundary continuity check under m-refinement."""
    metric: Metric
    levels: List[ContinuityLevel]
    suspected_discontinuity: bool

    @property
    def estimates(self) -> List[float]:
        return [level.estimate for level in self.levels]


# ==================== APPROXIMATION REPORTS ====================

class StageErrors(BaseModel):
    """Sup-errors of the two construction stages and of the final polynomial."""
    disc_stage: float
    mergelyan_stage: float
    total: float

    @property
    def triangle_slack(self) -> float:
        """total - (disc_stage + mergelyan_stage); nonpositive when bookkeeping holds."""
        return self.total - (self.disc_stage + self.mergelyan_stage)


class GridSizes(BaseModel):
    """Grids used by a pipeline run."""
    boundary_m: int
    verification_boundary: int
    verification_interior: int


class ApproximationReport(BaseModel):
    """Per-stage and total sup-error record of one pipeline run."""
    degree: int
    metric: Metric
    stage_errors: StageErrors
    grids: GridSizes
    dilation_r: Optional[float] = None
    magnitude_R: Optional[float] = None

    # Infinite-type bookkeeping: analytic magnitude bound and measured terms
    analytic_bound: Optional[float] = None
    truncation_term: Optional[float] = None
    taylor_tail: Optional[float] = None
    dilation_term: Optional[float] = None
    truncation_dominates: bool = False

    # Converse direction: sup over the disc of the metric between Q∘phi and g∘phi
    pullback_error: Optional[float] = None
    notes: List[str] = []

    def bookkeeping_holds(self, slack: float = 1e-10) -> bool:
        return self.stage_errors.triangle_slack <= slack


class ApproximationResult(BaseModel):
    """Report plus the coefficients of Q_n, as written by ``approx``."""
    report: ApproximationReport
    coeffs: List[ComplexPair]
    center: ComplexPair
    scale: float


# ==================== CONVERGENCE TABLE ====================

class ConvergenceRow(BaseModel):
    """One row per configured degree."""
    degree: int
    disc_stage: Optional[float] = None
    mergelyan_stage: Optional[float] = None
    total: Optional[float] = Field(default=None, ge=0.0)
    seconds: Optional[float] = None
    error: Optional[str] = None


class ConvergenceTable(BaseModel):
    """Rows of (degree, disc_stage, mergelyan_stage, total, wall time)."""
    metric: Metric
    rows: List[ConvergenceRow]

    @property
    def failed(self) -> Dict[int, str]:
        return {row.degree: row.error for row in self.rows if row.error}

    @property
    def totals(self) -> List[Optional[float]]:
        return [row.total for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            [row.model_dump(include=set(CSV_COLUMNS)) for row in self.rows],
            columns=CSV_COLUMNS,
        )
        frame["degree"] = frame["degree"].astype(int)
        return frame

    def to_csv(self, path) -> None:
        self.to_frame().to_csv(path, index=False, float_format="%.17g", lineterminator="\n")


# ==================== SELFTEST ====================

class SuiteResult(BaseModel):
    """Counts for one selftest suite."""
    name: str
    checks: int
    failures: int
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


class SelftestSummary(BaseModel):
    seed: int
    suites: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)


# ==================== EXPERIMENT CONFIGURATION ====================

class UnitDiscConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: Literal["unit_disc"]


class PolynomialImageConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: Literal["polynomial_image"]
    coeffs: List[ComplexPair] = Field(min_length=2)


DomainConfig = Annotated[Union[UnitDiscConfig, PolynomialImageConfig], Field(discriminator="kind")]


class PolynomialFunctionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: Literal["polynomial"]
    coeffs: List[ComplexPair] = Field(min_length=1)


class RationalFunctionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: Literal["rational"]
    num: List[ComplexPair] = Field(min_length=1)
    den: List[ComplexPair] = Field(min_length=1)


class BoundaryPoleFunctionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: Literal["boundary_pole"]
    num: List[ComplexPair] = Field(min_length=1)
    den: List[ComplexPair] = Field(min_length=2)


class CompositeExpFunctionConfig(BaseModel):
    """c * exp(i * p(z))."""
    model_config = ConfigDict(extra="forbid")
    kind: Literal["composite_exp"]
    c: ComplexPair = (1.0, 0.0)
    p: List[ComplexPair] = Field(min_length=1)


class ExpPoleFunctionConfig(BaseModel):
    """exp(1 / (z - pole)); accepted by the continuity diagnostic only."""
    model_config = ConfigDict(extra="forbid")
    kind: Literal["exp_pole"]
    pole: ComplexPair = (1.0, 0.0)


EvaluatorConfig = Annotated[
    Union[
        PolynomialFunctionConfig,
        RationalFunctionConfig,
        BoundaryPoleFunctionConfig,
        CompositeExpFunctionConfig,
        ExpPoleFunctionConfig,
    ],
    Field(discriminator="kind"),
]


class InfinityConstantConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: Literal["inf_const"]


class InfiniteTypeConfig(BaseModel):
    """∞·e^{iθ} with θ = Re h; ``h`` is a coefficient list or an evaluator object."""
    model_config = ConfigDict(extra="forbid")
    kind: Literal["inf_type"]
    h: Union[List[ComplexPair], EvaluatorConfig]


FunctionConfig = Annotated[
    Union[
        PolynomialFunctionConfig,
        RationalFunctionConfig,
        BoundaryPoleFunctionConfig,
        CompositeExpFunctionConfig,
        ExpPoleFunctionConfig,
        InfinityConstantConfig,
        InfiniteTypeConfig,
    ],
    Field(discriminator="kind"),
]


class VerificationConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    boundary: Optional[int] = Field(default=None, ge=3)
    interior: Optional[int] = Field(default=None, ge=1)


class ControlsConfig(BaseModel):
    """Pipeline controls; unset values fall back to settings and schedules."""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    r: Optional[float] = Field(default=None, gt=0.0, le=1.0)
    r_schedule: Optional[Literal["auto", "conservative"]] = None
    magnitude: float = Field(default=1000.0, ge=1.0, alias="R")
    boundary_m: Optional[int] = Field(default=None, ge=3)
    verification: VerificationConfig = VerificationConfig()


class InverseConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    tol: Optional[float] = Field(default=None, gt=0.0)
    grid: Optional[int] = Field(default=None, ge=8)
    max_iter: Optional[int] = Field(default=None, ge=1)


class ExperimentConfig(BaseModel):
    """One experiment file: domain, function, metric, degrees and controls."""
    model_config = ConfigDict(extra="forbid")

    domain: DomainConfig
    function: FunctionConfig
    metric: Metric = "chi"
    degrees: List[int] = Field(min_length=1)
    controls: ControlsConfig = ControlsConfig()
    inverse: InverseConfig = InverseConfig()
    output: Optional[str] = None
    svg: bool = False
    timings: bool = False

    @field_validator("degrees")
    @classmethod
    def validate_degrees(cls, v: List[int]) -> List[int]:
        """Degrees must be nonnegative and strictly increasing."""
        if any(d < 0 for d in v):
            raise ValueError("degrees must be nonnegative")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("degrees must be strictly increasing")
        return v

    @model_validator(mode="after")
    def validate_metric_for_function(self) -> "ExperimentConfig":
        """Infinite-type functions live in the d world, the constant ∞ in the chi world."""
        kind = self.function.kind
        if kind == "inf_type" and self.metric != "d":
            raise ValueError("function kind 'inf_type' requires metric 'd'")
        if kind == "inf_const" and self.metric != "chi":
            raise ValueError("function kind 'inf_const' requires metric 'chi'")
        if kind == "boundary_pole" and self.metric == "d":
            raise ValueError("boundary poles have no continuous direction at infinity; use metric 'chi'")
        return self
