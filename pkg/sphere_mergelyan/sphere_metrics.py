"""
Metrics on the two compactifications of the complex plane.

Chordal metric (one-point compactification C ∪ {∞})
    chi(z, w)  = |z - w| / (sqrt(1 + |z|^2) * sqrt(1 + |w|^2))
    chi(z, ∞)  = 1 / sqrt(1 + |z|^2)
    chi(∞, ∞)  = 0

    This is the conventional normalization (sphere of diameter 1, values in
    [0, 1]). It satisfies chi(a, b) <= |a - b| for finite a, b, which is the
    only quantitative property the approximation pipelines rely on. With a
    diameter-2 normalization every threshold in this package would double.

Disc compactification C ∪ C^∞
    Finite z is embedded as z / (1 + |z|) in the open unit disc and the
    direction ∞·e^{iθ} as e^{iθ} on the unit circle; d is the Euclidean
    distance of the embedded points.

Array conventions: an extended-complex array marks ∞ by any non-finite
entry; a bar-complex array travels as its embedded points.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-12


# ==================== POINT TYPES ====================


@dataclass(frozen=True)
class FinitePoint:
    """A point of C, shared by both compactifications."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"FinitePoint needs finite real and imaginary parts, got {self.value!r}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class InfinityPoint:
    """The single point at infinity of C ∪ {∞}."""

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = InfinityPoint()


@dataclass(frozen=True, eq=False)
class DirectionalPoint:
    """The point ∞·e^{iθ} of C^∞; the angle is stored as given."""

    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError(f"DirectionalPoint needs a finite angle, got {self.theta!r}")
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def direction(self) -> complex:
        return complex(np.exp(1j * math.fmod(self.theta, TWO_PI)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectionalPoint):
            return NotImplemented
        return abs(self.direction - other.direction) <= ANGLE_TOL

    __hash__ = None  # type: ignore[assignment]


ExtendedComplex = Union[FinitePoint, InfinityPoint]
BarComplex = Union[FinitePoint, DirectionalPoint]


def extended_to_complex(point: ExtendedComplex) -> complex:
    """Array convention for extended points: ∞ becomes complex(inf, 0)."""
    if isinstance(point, InfinityPoint):
        return complex(math.inf, 0.0)
    return point.value


def complex_to_extended(value: complex) -> ExtendedComplex:
    value = complex(value)
    if math.isfinite(value.real) and math.isfinite(value.imag):
        return FinitePoint(value)
    return INFINITY


# ==================== CHORDAL METRIC ====================


def _homogeneous(z: np.ndarray):
    """Write z = u / t with |u| <= sqrt(2) and t in [0, 1]; ∞ is u = 1, t = 0."""
    finite = np.isfinite(z)
    with np.errstate(over="ignore", invalid="ignore"):
        mod = np.where(finite, np.abs(z), 0.0)
        # |z| can overflow for huge components; fall back to the max-norm
        big = finite & ~np.isfinite(mod)
        if np.any(big):
            mx = np.maximum(np.abs(z.real), np.abs(z.imag))
            mod = np.where(big, mx, mod)
        t = np.where(finite, 1.0 / np.maximum(mod, 1.0), 0.0)
        u = np.where(finite, z * t, 1.0 + 0j)
    return u, t


def chordal_distance_array(z, w) -> np.ndarray:
    """Vectorized chordal metric; non-finite entries are the point ∞."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    uz, tz = _homogeneous(z)
    uw, tw = _homogeneous(w)
    num = np.abs(uz * tw - uw * tz)
    den = np.hypot(tz, np.abs(uz)) * np.hypot(tw, np.abs(uw))
    return num / den


def chordal_distance(a: ExtendedComplex, b: ExtendedComplex) -> float:
    """Chordal distance between two points of C ∪ {∞}, a value in [0, 1]."""
    za = np.array([extended_to_complex(a)])
    zb = np.array([extended_to_complex(b)])
    return float(chordal_distance_array(za, zb)[0])


# ==================== DISC COMPACTIFICATION ====================


def bar_embed(z):
    """z -> z / (1 + |z|), evaluated without intermediate overflow.

    Accepts a scalar or an array of finite complex numbers.
    """
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("bar_embed is defined for finite points only")
    scale = np.maximum(np.maximum(np.abs(arr.real), np.abs(arr.imag)), 1.0)
    q = arr / scale
    out = q / (1.0 / scale + np.abs(q))
    if np.ndim(z) == 0:
        return complex(out)
    return out


def direction_embed(theta):
    """∞·e^{iθ} -> e^{iθ} on the unit circle (angles reduced mod 2π first)."""
    return np.exp(1j * np.mod(np.asarray(theta, dtype=float), TWO_PI))


def embed_point(point: BarComplex) -> complex:
    if isinstance(point, DirectionalPoint):
        return complex(direction_embed(point.theta))
    return bar_embed(point.value)


def bar_distance_embedded(p, q) -> np.ndarray:
    """Metric d between points already embedded in the closed unit disc."""
    return np.abs(np.asarray(p, dtype=complex) - np.asarray(q, dtype=complex))


def bar_distance(a: BarComplex, b: BarComplex) -> float:
    """Metric d on C ∪ C^∞, a value in [0, 2].

    Finite pairs:      |z/(1+|z|) - w/(1+|w|)|
    Finite/direction:  |z/(1+|z|) - e^{iθ}|
    Direction pairs:   |e^{iθ} - e^{iφ}|
    """
    return float(abs(embed_point(a) - embed_point(b)))
