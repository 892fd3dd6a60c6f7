"""
Approximation targets: closed-form analytic evaluators on the disc and the
function classes built from them.

Every domain-side function is stored disc-side, as an evaluator f (or an
angle generator h) together with the Riemann map, and evaluated as
f(phi^{-1}(w)).
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from sphere_mergelyan.conformal import RiemannMap
from sphere_mergelyan.errors import EvaluationOverflow, InvalidParameterError, UnsupportedFunction
from sphere_mergelyan.models import ContinuityLevel, ContinuityReport
from sphere_mergelyan.polynomial import Polynomial
from sphere_mergelyan.sphere_metrics import (
    INFINITY,
    TWO_PI,
    BarComplex,
    DirectionalPoint,
    ExtendedComplex,
    FinitePoint,
    bar_distance_embedded,
    bar_embed,
    chordal_distance_array,
    complex_to_extended,
    direction_embed,
)

logger = logging.getLogger(__name__)

ROOT_TOL = 1e-12
POLE_SNAP = 1e-12
MIN_CONTINUITY_M = 64
CONTINUITY_REFINEMENTS = 4
GROWTH_FACTOR = 1.5


# ==================== ANALYTIC EVALUATORS ====================


class AnalyticEvaluator(ABC):
    """A closed-form function analytic on the open unit disc."""

    #: False for diagnostic-only members that no pipeline accepts
    supported: bool = True

    @property
    @abstractmethod
    def radius_of_analyticity(self) -> float:
        """Radius of the largest disc about 0 on which the function is analytic."""

    @abstractmethod
    def _raw(self, z: np.ndarray) -> np.ndarray:
        ...

    def _pole_mask(self, z: np.ndarray) -> np.ndarray:
        return np.zeros(z.shape, dtype=bool)

    def __call__(self, z):
        """Evaluate on an array (or scalar) of points in the closed disc.

        Raises:
            EvaluationOverflow: a value is non-finite away from a boundary pole
        """
        arr = np.asarray(z, dtype=complex)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            values = np.asarray(self._raw(arr), dtype=complex)
        poles = self._pole_mask(arr)
        values = np.where(poles, complex(np.inf, 0.0), values)
        bad = ~np.isfinite(values) & ~poles
        if np.any(bad):
            where = complex(np.atleast_1d(arr)[np.atleast_1d(bad)][0])
            raise EvaluationOverflow(f"{self!r} is not finite at z = {where}")
        if np.ndim(z) == 0:
            return complex(values)
        return values

    @property
    def analytic_past_closed_disc(self) -> bool:
        return self.radius_of_analyticity > 1.0


class PolynomialForm(AnalyticEvaluator):
    """An entire polynomial f(z) = sum c_k z^k."""

    def __init__(self, coeffs):
        self.poly = Polynomial(coeffs)

    @property
    def radius_of_analyticity(self) -> float:
        return math.inf

    def _raw(self, z):
        return self.poly(z)

    def __repr__(self) -> str:
        return f"PolynomialForm({self.poly.coeffs.tolist()})"


class _RatioForm(AnalyticEvaluator):
    def __init__(self, num, den):
        self.num = Polynomial(num)
        self.den = Polynomial(den)
        if self.den.degree == 0 and self.den.coeffs[0] == 0:
            raise InvalidParameterError("denominator must not be the zero polynomial")
        self.poles = npoly.polyroots(self.den.coeffs) if self.den.degree else np.empty(0, complex)

    def _raw(self, z):
        return self.num(z) / self.den(z)


class RationalForm(_RatioForm):
    """num/den with every zero of den outside the closed unit disc."""

    def __init__(self, num, den):
        super().__init__(num, den)
        if np.any(np.abs(self.poles) <= 1.0 + ROOT_TOL):
            raise InvalidParameterError(
                f"denominator has zeros in the closed unit disc: {self.poles.tolist()}"
            )

    @property
    def radius_of_analyticity(self) -> float:
        return float(np.min(np.abs(self.poles))) if self.poles.size else math.inf

    def __repr__(self) -> str:
        return f"RationalForm(num={self.num.coeffs.tolist()}, den={self.den.coeffs.tolist()})"


class BoundaryPoleForm(_RatioForm):
    """num/den with den vanishing only on the unit circle, e.g. 1/(1 - z).

    The value at a pole is the point ∞ (the chordal boundary limit). Points
    within 1e-12 of a pole also evaluate to ∞, so numerical preimages of a
    mapped pole land on it.
    """

    def __init__(self, num, den):
        super().__init__(num, den)
        if self.den.degree < 1:
            raise InvalidParameterError("a boundary-pole form needs a nonconstant denominator")
        if np.any(np.abs(np.abs(self.poles) - 1.0) > ROOT_TOL):
            raise InvalidParameterError(
                f"denominator zeros must lie on the unit circle: {self.poles.tolist()}"
            )
        if np.any(np.abs(self.num(self.poles)) <= ROOT_TOL):
            raise InvalidParameterError("numerator cancels a boundary pole")

    @property
    def radius_of_analyticity(self) -> float:
        return 1.0

    def _pole_mask(self, z):
        z = np.asarray(z, dtype=complex)
        near = np.abs(z[..., None] - self.poles) <= POLE_SNAP
        return np.any(near, axis=-1) | (self.den(z) == 0)

    def __repr__(self) -> str:
        return f"BoundaryPoleForm(num={self.num.coeffs.tolist()}, den={self.den.coeffs.tolist()})"


class CompositeExp(AnalyticEvaluator):
    """c * exp(i * p(z)) for a polynomial p."""

    def __init__(self, c: complex, p):
        self.c = complex(c)
        self.p = Polynomial(p)

    @property
    def radius_of_analyticity(self) -> float:
        return math.inf

    def _raw(self, z):
        return self.c * np.exp(1j * self.p(z))

    def __repr__(self) -> str:
        return f"CompositeExp(c={self.c}, p={self.p.coeffs.tolist()})"


class ExpPoleForm(AnalyticEvaluator):
    """exp(1 / (z - pole)) with |pole| = 1: no boundary limit at the pole.

    Only the continuity diagnostic accepts it.
    """

    supported = False

    def __init__(self, pole: complex = 1.0):
        self.pole = complex(pole)
        if abs(abs(self.pole) - 1.0) > ROOT_TOL:
            raise InvalidParameterError(f"pole must lie on the unit circle, got {pole}")

    @property
    def radius_of_analyticity(self) -> float:
        return 1.0

    def _raw(self, z):
        return np.exp(1.0 / (z - self.pole))

    def __repr__(self) -> str:
        return f"ExpPoleForm(pole={self.pole})"


# ==================== FUNCTION CLASSES ====================


@dataclass(frozen=True)
class ChordalFunction:
    """A member of the chordal class on the domain: f∘phi^{-1} or the constant ∞."""

    evaluator: Optional[AnalyticEvaluator]
    riemann_map: Optional[RiemannMap]

    @classmethod
    def finite(cls, f: AnalyticEvaluator, riemann_map: RiemannMap) -> "ChordalFunction":
        return cls(f, riemann_map)

    @classmethod
    def infinity(cls, riemann_map: Optional[RiemannMap] = None) -> "ChordalFunction":
        return cls(None, riemann_map)

    @property
    def is_infinity(self) -> bool:
        return self.evaluator is None

    def disc_values(self, z) -> np.ndarray:
        """Values on the disc side; ∞ is a non-finite entry."""
        z = np.asarray(z, dtype=complex)
        if self.is_infinity:
            return np.full(z.shape, complex(np.inf, 0.0))
        return self.evaluator(z)


@dataclass(frozen=True)
class BarFunction:
    """A member of the disc-compactification class: finite type or ∞·e^{i Re h}."""

    evaluator: AnalyticEvaluator
    riemann_map: RiemannMap
    infinite_type: bool = False

    @classmethod
    def finite(cls, f: AnalyticEvaluator, riemann_map: RiemannMap) -> "BarFunction":
        if isinstance(f, BoundaryPoleForm):
            raise UnsupportedFunction(
                "boundary poles have no continuous direction at infinity in the disc compactification"
            )
        return cls(f, riemann_map, False)

    @classmethod
    def infinite(cls, h: AnalyticEvaluator, riemann_map: RiemannMap) -> "BarFunction":
        if not h.analytic_past_closed_disc:
            raise UnsupportedFunction("the angle generator h must be analytic past the closed disc")
        return cls(h, riemann_map, True)

    def angle(self, z) -> np.ndarray:
        """theta = Re h on the disc side (infinite type only)."""
        return np.real(self.evaluator(np.asarray(z, dtype=complex)))

    def disc_embedded(self, z) -> np.ndarray:
        """Values on the disc side as embedded points of the closed unit disc."""
        z = np.asarray(z, dtype=complex)
        if self.infinite_type:
            return direction_embed(self.angle(z))
        return bar_embed(self.evaluator(z))


AnyFunction = Union[ChordalFunction, BarFunction]


def evaluate_chordal(g: ChordalFunction, w: complex) -> ExtendedComplex:
    """g(w) = f(phi^{-1}(w)); the constant ∞ needs no inversion."""
    if g.is_infinity:
        return INFINITY
    z = g.riemann_map.invert(w)
    return complex_to_extended(g.evaluator(z))


def evaluate_bar(g: BarFunction, w: complex) -> BarComplex:
    z = g.riemann_map.invert(w)
    if g.infinite_type:
        return DirectionalPoint(float(np.real(g.evaluator(z))))
    return FinitePoint(g.evaluator(z))


# ==================== CONTINUITY DIAGNOSTIC ====================


def _metric_of(g: AnyFunction) -> str:
    return "d" if isinstance(g, BarFunction) else "chi"


def _boundary_modulus(g: AnyFunction, m: int) -> float:
    theta = TWO_PI * (np.arange(m) + 0.5) / m
    z = np.exp(1j * theta)
    riemann_map = g.riemann_map
    w = riemann_map.evaluate_array(z) if riemann_map is not None else z
    gap = np.abs(np.roll(w, -1) - w)
    if isinstance(g, BarFunction):
        p = g.disc_embedded(z)
        dist = bar_distance_embedded(np.roll(p, -1), p)
    else:
        v = g.disc_values(z)
        dist = chordal_distance_array(np.roll(v, -1), v)
    return float(np.max(dist / gap))


def continuity_diagnostic(g: AnyFunction, m: int) -> ContinuityReport:
    """Estimate the boundary modulus of continuity at m, 2m, 4m, 8m samples.

    The estimate is the largest ratio of the metric distance between values
    at adjacent boundary samples to the Euclidean gap between the samples.
    A discontinuity is suspected when the last refinement still grows it by
    more than 1.5x.
    """
    if m < MIN_CONTINUITY_M:
        raise InvalidParameterError(f"continuity diagnostic needs m >= {MIN_CONTINUITY_M}, got {m}")
    levels = []
    for k in range(CONTINUITY_REFINEMENTS):
        mk = m * 2**k
        levels.append(ContinuityLevel(m=mk, estimate=_boundary_modulus(g, mk)))
    last, previous = levels[-1].estimate, levels[-2].estimate
    suspected = bool(last > 1e-12 and last > GROWTH_FACTOR * previous)
    if suspected:
        logger.warning(f"Suspected boundary discontinuity: estimates {[lv.estimate for lv in levels]}")
    return ContinuityReport(metric=_metric_of(g), levels=levels, suspected_discontinuity=suspected)
