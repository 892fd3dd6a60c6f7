"""
Exception hierarchy for sphere-mergelyan.

Every failure the numerical modules can signal is a subclass of
``SphereMergelyanError`` so the CLI can map it to an exit status.
"""

from typing import Optional


class SphereMergelyanError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(SphereMergelyanError, ValueError):
    """A precondition on a numeric argument is violated."""


class ConfigError(SphereMergelyanError):
    """An experiment configuration file could not be parsed or validated."""

    def __init__(self, msg: str, diagnostics: Optional[list] = None):
        super().__init__(msg)
        self.diagnostics = list(diagnostics or [])

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        return base + "\n" + "\n".join(f"  - {d}" for d in self.diagnostics)


class AmbiguousBoundary(SphereMergelyanError):
    """The query point lies within tolerance of the sampled boundary polygon."""

    def __init__(self, point: complex, distance: float):
        super().__init__(
            f"point {point} is {distance:.3e} from the boundary polygon; "
            "refine m or accept a boundary classification"
        )
        self.point = point
        self.distance = distance


class NotInClosure(SphereMergelyanError):
    """The query point is not in the closed domain."""


class NoConvergence(SphereMergelyanError):
    """Newton inversion failed from every seed (a bug signal for validated domains)."""


class EvaluationOverflow(SphereMergelyanError):
    """A catalogue evaluator produced a non-finite value away from its boundary pole."""


class UnsupportedFunction(SphereMergelyanError):
    """The function is outside the catalogue supported by the requested operation."""


class QuadratureUnstable(SphereMergelyanError):
    """Trapezoid-rule Taylor coefficients failed the node-doubling self-consistency check."""


class IllConditioned(SphereMergelyanError):
    """The orthonormalized boundary basis drifted away from orthonormality."""


class InsufficientSamples(SphereMergelyanError):
    """Too few boundary samples for a least-squares fit of the requested degree."""


class TruncationDominates(UserWarning):
    """The Taylor tail exceeds the analytic magnitude bound; increase the degree."""


class DomainRejected(SphereMergelyanError):
    """The domain failed the injectivity certificate; carries the ValidationReport."""

    def __init__(self, report):
        details = "; ".join(f.detail for f in report.failures)
        super().__init__(f"domain rejected: {details}")
        self.report = report
