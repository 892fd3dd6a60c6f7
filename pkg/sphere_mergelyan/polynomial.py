"""
Complex-coefficient polynomials.

A ``Polynomial`` stores coefficients constant-term first in a normalized
variable ``s = (w - center) / scale``; disc-side polynomials use the plain
variable (center 0, scale 1). Horner evaluation (``numpy.polynomial``'s
``polyval``) is the canonical semantics.
"""

from typing import Iterable, List, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from sphere_mergelyan.errors import InvalidParameterError

ArrayLike = Union[complex, float, np.ndarray, Sequence[complex]]


def pairs_to_complex(pairs: Iterable[Sequence[float]]) -> np.ndarray:
    """Convert ``[[re, im], ...]`` into a complex array."""
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


def complex_to_pairs(values: Iterable[complex]) -> List[List[float]]:
    """Convert complex numbers into ``[[re, im], ...]`` for reports."""
    return [[float(np.real(v)), float(np.imag(v))] for v in values]


class Polynomial:
    """Immutable polynomial with trailing zero coefficients trimmed."""

    __slots__ = ("_coeffs", "_center", "_scale")

    def __init__(self, coeffs: ArrayLike, center: complex = 0j, scale: float = 1.0):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise InvalidParameterError("polynomial needs a non-empty 1-d coefficient list")
        if not np.all(np.isfinite(c)):
            raise InvalidParameterError("polynomial coefficients must be finite")
        if not (np.isfinite(scale) and scale > 0):
            raise InvalidParameterError(f"scale must be positive and finite, got {scale}")
        c = npoly.polytrim(c, tol=0).astype(complex)
        c.setflags(write=False)
        self._coeffs = c
        self._center = complex(center)
        self._scale = float(scale)

    # ==================== CONSTRUCTORS ====================

    @classmethod
    def constant(cls, value: complex) -> "Polynomial":
        return cls([value])

    @classmethod
    def identity(cls) -> "Polynomial":
        return cls([0.0, 1.0])

    # ==================== PROPERTIES ====================

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficients in the normalized variable, constant term first (read-only)."""
        return self._coeffs

    @property
    def center(self) -> complex:
        return self._center

    @property
    def scale(self) -> float:
        return self._scale

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_plain(self) -> bool:
        """True when the variable is not shifted or scaled."""
        return self._center == 0 and self._scale == 1.0

    # ==================== EVALUATION ====================

    def _normalize(self, w):
        if self.is_plain:
            return w
        return (w - self._center) / self._scale

    def __call__(self, w: ArrayLike):
        w = np.asarray(w, dtype=complex)
        return npoly.polyval(self._normalize(w), self._coeffs)

    def abs_bound(self, w: ArrayLike):
        """Horner evaluation of sum |c_k| |s|^k, the rounding scale of ``self(w)``."""
        s = np.abs(self._normalize(np.asarray(w, dtype=complex)))
        return npoly.polyval(s, np.abs(self._coeffs))

    def derivative(self) -> "Polynomial":
        """Derivative with respect to the original variable w."""
        if self.degree == 0:
            return Polynomial([0.0], self._center, self._scale)
        return Polynomial(npoly.polyder(self._coeffs) / self._scale, self._center, self._scale)

    # ==================== ALGEBRA ====================

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Return ``self(inner(x))`` as a polynomial in inner's variable.

        Horner's scheme on coefficient arrays: the normalization of ``self``
        is folded into ``inner`` first so the result needs no extra mapping.
        """
        s = inner.coeffs.copy()
        s[0] -= self._center
        s = s / self._scale
        acc = np.array([self._coeffs[-1]], dtype=complex)
        for c in self._coeffs[-2::-1]:
            acc = npoly.polyadd(npoly.polymul(acc, s), [c])
        return Polynomial(acc, inner.center, inner.scale)

    # ==================== SERIALIZATION ====================

    def to_pairs(self) -> List[List[float]]:
        return complex_to_pairs(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self._center == other._center
            and self._scale == other._scale
            and np.array_equal(self._coeffs, other._coeffs)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_plain:
            return f"Polynomial(degree={self.degree}, coeffs={self._coeffs.tolist()})"
        return (
            f"Polynomial(degree={self.degree}, center={self._center}, "
            f"scale={self._scale:.6g})"
        )
