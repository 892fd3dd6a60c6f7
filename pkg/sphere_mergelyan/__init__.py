"""
sphere-mergelyan: polynomial approximation on Jordan domains in the chordal
metric of the Riemann sphere and in the disc-compactification metric.
"""

from sphere_mergelyan.approx import (
    PipelineControls,
    VerificationGrid,
    bar_infinite_disc_approx,
    bar_pipeline,
    chordal_pipeline,
    disc_chordal_approx,
    mergelyan_step,
    pull_back,
    pullback_error,
    taylor_truncate,
)
from sphere_mergelyan.conformal import RiemannMap
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
from sphere_mergelyan.jordan_domain import DomainSpec, boundary_points, contains, validate_domain
from sphere_mergelyan.polynomial import Polynomial
from sphere_mergelyan.sphere_metrics import (
    INFINITY,
    DirectionalPoint,
    FinitePoint,
    bar_distance,
    bar_embed,
    chordal_distance,
)

__version__ = "1.0.0"
