"""
The Riemann map phi = psi of a polynomial-image domain, its boundary
extension, and its numerical inverse.

The inverse is Newton's method on psi(z) - w = 0, seeded from the nearest
point of a precomputed image grid {(z_i, psi(z_i))} (KD-tree lookup). Points
whose Newton run fails are retried from the eight neighbouring seeds and then
from every seed in order of image distance.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

from config import settings
from sphere_mergelyan.errors import (
    AmbiguousBoundary,
    InvalidParameterError,
    NoConvergence,
    NotInClosure,
)
from sphere_mergelyan.jordan_domain import (
    DomainKind,
    DomainSpec,
    boundary_angles,
    boundary_points,
    contains,
    find_self_intersection,
    polygon_distance,
    winding_number,
)
from sphere_mergelyan.parallel import chunked_map
from sphere_mergelyan.polynomial import Polynomial

logger = logging.getLogger(__name__)

EVALUATE_TOL = 1e-12
CLAMP_TOL = 1e-9
DIVERGENCE_RADIUS = 2.0
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class BoundaryCorrespondence:
    """Pairs (t_k, psi(e^{i t_k})) plus the homeomorphism check on their order."""

    angles: np.ndarray
    points: np.ndarray
    monotone: bool

    def __iter__(self) -> Iterator[Tuple[float, complex]]:
        return iter(zip(self.angles.tolist(), self.points.tolist()))

    def __len__(self) -> int:
        return len(self.angles)


class RiemannMap:
    """phi: closed disc -> closed domain, with a seeded Newton inverse.

    Immutable after construction; all queries are pure.
    """

    def __init__(
        self,
        spec: DomainSpec,
        newton_tol: Optional[float] = None,
        max_iter: Optional[int] = None,
        grid: Optional[int] = None,
    ):
        self._spec = spec
        self._psi = spec.psi
        self._dpsi = spec.psi.derivative()
        self.newton_tol = float(newton_tol or settings.inverse.tol)
        self.max_iter = int(max_iter or settings.inverse.max_iter)
        self.grid = int(grid or settings.inverse.grid)
        if self.grid < 2:
            raise InvalidParameterError(f"seed grid needs at least 2 nodes per side, got {self.grid}")

        axis = np.linspace(-1.0, 1.0, self.grid)
        seeds = (axis[None, :] + 1j * axis[:, None]).ravel()
        mod = np.abs(seeds)
        outside = mod > 1.0
        seeds[outside] = seeds[outside] / mod[outside]
        self._seeds = seeds
        self._images = self._psi(seeds)
        self._tree = cKDTree(np.column_stack([self._images.real, self._images.imag]))
        logger.debug(f"RiemannMap seed grid built: {self.grid}x{self.grid} nodes for {spec!r}")

    # ==================== PROPERTIES ====================

    @property
    def spec(self) -> DomainSpec:
        return self._spec

    @property
    def forward(self) -> Polynomial:
        return self._psi

    @property
    def is_identity(self) -> bool:
        return self._spec.kind is DomainKind.UNIT_DISC

    # ==================== FORWARD MAP ====================

    def evaluate_array(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > 1.0 + EVALUATE_TOL):
            raise InvalidParameterError("the Riemann map is evaluated on the closed unit disc only")
        if self.is_identity:
            return z.copy()
        return self._psi(z)

    def evaluate(self, z: complex) -> complex:
        """psi(z) for |z| <= 1; boundary points go to the boundary of the domain."""
        return complex(self.evaluate_array(np.array([z]))[0])

    # ==================== INVERSE MAP ====================

    def _newton(self, z0: np.ndarray, w: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Vectorized Newton; converged points are frozen. Returns (z, ok)."""
        z = z0.astype(complex, copy=True)
        active = np.ones(z.shape, dtype=bool)
        converged = np.zeros(z.shape, dtype=bool)
        for it in range(self.max_iter + 1):
            idx = np.nonzero(active)[0]
            if idx.size == 0:
                break
            za = z[idx]
            residual = self._psi(za) - w[idx]
            tol = np.maximum(self.newton_tol, 4.0 * _EPS * self._psi.abs_bound(za))
            done = np.abs(residual) <= tol
            converged[idx[done]] = True
            active[idx[done]] = False
            if it == self.max_iter:
                break
            step_idx = idx[~done]
            deriv = self._dpsi(z[step_idx])
            stuck = deriv == 0
            with np.errstate(divide="ignore", invalid="ignore"):
                z[step_idx] = z[step_idx] - residual[~done] / deriv
            diverged = stuck | ~np.isfinite(z[step_idx]) | (np.abs(z[step_idx]) > DIVERGENCE_RADIUS)
            active[step_idx[diverged]] = False

        mod = np.abs(z)
        ok = converged & (mod <= 1.0 + CLAMP_TOL)
        clamp = ok & (mod > 1.0)
        z[clamp] = z[clamp] / mod[clamp]
        return z, ok

    def _neighbour_seeds(self, k: int) -> np.ndarray:
        g = self.grid
        row, col = divmod(k, g)
        out = [k]
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                r, c = row + dr, col + dc
                if (dr or dc) and 0 <= r < g and 0 <= c < g:
                    out.append(r * g + c)
        return np.array(out)

    def _invert_unit_disc(self, w: np.ndarray) -> np.ndarray:
        mod = np.abs(w)
        bad = np.nonzero(~(mod <= 1.0 + CLAMP_TOL))[0]
        if bad.size:
            raise NotInClosure(f"{complex(w[bad[0]])} is outside the closed unit disc")
        z = w.copy()
        clamp = mod > 1.0
        z[clamp] = z[clamp] / mod[clamp]
        return z

    def invert(self, w: complex) -> complex:
        """phi^{-1}(w) for w in the closed domain.

        Raises:
            NotInClosure: w fails the containment test
            NoConvergence: Newton failed from every seed
        """
        w = complex(w)
        if self.is_identity:
            return complex(self._invert_unit_disc(np.array([w]))[0])

        _, nearest = self._tree.query([w.real, w.imag])
        candidates = self._neighbour_seeds(int(nearest))
        z, ok = self._newton(self._seeds[candidates], np.full(len(candidates), w))
        hits = np.nonzero(ok)[0]
        if hits.size:
            return complex(z[hits[0]])

        try:
            inside = contains(self._spec, w, settings.inverse.containment_m)
        except AmbiguousBoundary:
            inside = True
        if not inside:
            raise NotInClosure(f"{w} is outside the closed domain")

        order = np.argsort(np.abs(self._images - w), kind="stable")
        z, ok = self._newton(self._seeds[order], np.full(len(order), w))
        hits = np.nonzero(ok)[0]
        if hits.size:
            logger.debug(f"Inverse of {w} needed a full seed sweep")
            return complex(z[hits[0]])
        raise NoConvergence(f"Newton inversion of {w} failed from every seed")

    def _invert_chunk(self, w: np.ndarray) -> np.ndarray:
        if self.is_identity:
            return self._invert_unit_disc(w)
        _, nearest = self._tree.query(np.column_stack([w.real, w.imag]))
        z, ok = self._newton(self._seeds[nearest], w)
        for i in np.nonzero(~ok)[0]:
            z[i] = self.invert(w[i])
        return z

    def invert_array(self, w, jobs: int = 1) -> np.ndarray:
        """Vectorized inverse; results do not depend on ``jobs``."""
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        return chunked_map(self._invert_chunk, w, jobs=jobs)

    # ==================== BOUNDARY ====================

    def boundary_correspondence(self, m: int) -> BoundaryCorrespondence:
        """(2πk/m, psi(e^{2πik/m})) with a cyclic-monotonicity flag.

        The induced order on the boundary is strictly monotone exactly when
        consecutive samples are distinct, the polygon through them is simple,
        and it winds once, counterclockwise, about psi(0).
        """
        points = boundary_points(self._spec, m)
        angles = boundary_angles(m)
        distinct = bool(np.all(np.roll(points, -1) != points))
        monotone = distinct and find_self_intersection(points) is None
        if monotone:
            center = self._spec.interior_point
            monotone = (
                polygon_distance(points, center) > CLAMP_TOL
                and winding_number(points, center) == 1
            )
        return BoundaryCorrespondence(angles=angles, points=points, monotone=monotone)

    def __repr__(self) -> str:
        return f"RiemannMap({self._spec!r}, newton_tol={self.newton_tol:g}, grid={self.grid})"


def evaluate(riemann_map: RiemannMap, z: complex) -> complex:
    return riemann_map.evaluate(z)


def invert(riemann_map: RiemannMap, w: complex) -> complex:
    return riemann_map.invert(w)


def boundary_correspondence(riemann_map: RiemannMap, m: int) -> BoundaryCorrespondence:
    return riemann_map.boundary_correspondence(m)
