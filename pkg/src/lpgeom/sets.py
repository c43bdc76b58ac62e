"""Closed convex point sets with exact support functions.

Seven set types cover the geometry the projection and face machinery
needs: segments, rays, lines, finitely generated cones, polytopes,
norm balls centered at the origin, and linear subspaces.  Membership is
decided by closed-form or least-squares coefficient fits measured in
the Euclidean coefficient sense; support functions are closed form;
every bounded-parameter type can describe itself as an affine
parameterization over a standard coefficient domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import nnls

from .spaces import DualVec, LpSpace, PrimalVec, pair

__all__ = [
    "ConvexSet",
    "Segment",
    "Ray",
    "Line",
    "FinitelyGeneratedCone",
    "Polytope",
    "Ball",
    "Subspace",
    "Parameterization",
    "NONNEGATIVE",
    "UNIT_INTERVAL",
    "SIMPLEX",
    "UNRESTRICTED",
]

NONNEGATIVE = "nonnegative-orthant"
UNIT_INTERVAL = "unit-interval"
SIMPLEX = "simplex"
UNRESTRICTED = "unrestricted"


@dataclass(frozen=True)
class Parameterization:
    """Affine chart u(t) = base + sum_i t_i d_i over a coefficient domain."""

    base: PrimalVec
    directions: tuple[PrimalVec, ...]
    feasible: str

    def direction_matrix(self) -> np.ndarray:
        return np.stack([d.coords for d in self.directions], axis=1)


def _as_points(points, what: str) -> tuple[PrimalVec, ...]:
    pts = tuple(points)
    if not pts:
        raise ValueError(f"{what} must be nonempty")
    space = pts[0].space
    for p in pts:
        if not isinstance(p, PrimalVec):
            raise TypeError(f"{what} must be PrimalVec instances")
        if p.space != space:
            raise ValueError(f"{what} must share one space")
    return pts


class ConvexSet:
    """Base class; subclasses fix the geometry."""

    space: LpSpace

    def contains(self, x: PrimalVec, tol: float = 1e-9) -> bool:
        """True when x is within ``tol`` (scaled by magnitude) of the set."""
        self._check_point(x)
        scale = 1.0 + float(np.linalg.norm(x.coords)) + self._scale()
        return self.distance(x) <= tol * scale

    def distance(self, x: PrimalVec) -> float:
        """Distance from x to the set in the Euclidean coefficient sense.

        Exact for segment, ray, line, subspace (closed-form fits) and for
        the ball (norm residual, in norm units); for cones and polytopes
        it is the residual of a nonnegative least-squares coefficient fit,
        which vanishes exactly on members.
        """
        raise NotImplementedError

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        """sup_{x in C} <psi, x>; +inf when the functional is unbounded above.

        ``tol`` treats pairings within tol of zero as zero when deciding
        boundedness, so downstream face logic can share one tolerance.
        """
        raise NotImplementedError

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        """Deterministic members; unbounded coefficients are log-uniform in [1e-2, 1e2]."""
        raise NotImplementedError

    def parameterize(self) -> Parameterization:
        raise NotImplementedError

    def _scale(self) -> float:
        raise NotImplementedError

    def _check_point(self, x: PrimalVec):
        if not isinstance(x, PrimalVec):
            raise TypeError("expected a PrimalVec")
        if x.space != self.space:
            raise ValueError("point lives in a different space")

    def _check_functional(self, psi: DualVec):
        if not isinstance(psi, DualVec):
            raise TypeError("expected a DualVec")
        if not psi.space.is_dual_of(self.space):
            raise ValueError("functional does not pair with this set's space")


class Segment(ConvexSet):
    """The segment [a, b] between two distinct points."""

    def __init__(self, a: PrimalVec, b: PrimalVec):
        a, b = _as_points([a, b], "segment endpoints")
        if np.array_equal(a.coords, b.coords):
            raise ValueError("segment endpoints must be distinct")
        self.space = a.space
        self.a = a
        self.b = b
        self._d = b.coords - a.coords

    def distance(self, x: PrimalVec) -> float:
        self._check_point(x)
        t = np.clip(np.dot(x.coords - self.a.coords, self._d) / np.dot(self._d, self._d), 0.0, 1.0)
        return float(np.linalg.norm(x.coords - self.a.coords - t * self._d))

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        self._check_functional(psi)
        return max(pair(psi, self.a), pair(psi, self.b))

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        rng = np.random.default_rng(seed)
        return [self.space.point(self.a.coords + t * self._d) for t in rng.random(count)]

    def parameterize(self) -> Parameterization:
        return Parameterization(self.a, (self.space.point(self._d),), UNIT_INTERVAL)

    def _scale(self) -> float:
        return float(max(np.linalg.norm(self.a.coords), np.linalg.norm(self.b.coords)))

    def __repr__(self):
        return f"Segment({self.a!r}, {self.b!r})"


class Ray(ConvexSet):
    """The half line {vertex + t * direction : t >= 0}."""

    def __init__(self, vertex: PrimalVec, direction: PrimalVec):
        vertex, direction = _as_points([vertex, direction], "ray data")
        if np.all(direction.coords == 0.0):
            raise ValueError("ray direction must be nonzero")
        self.space = vertex.space
        self.vertex = vertex
        self.direction = direction

    def distance(self, x: PrimalVec) -> float:
        self._check_point(x)
        d = self.direction.coords
        t = max(0.0, np.dot(x.coords - self.vertex.coords, d) / np.dot(d, d))
        return float(np.linalg.norm(x.coords - self.vertex.coords - t * d))

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        self._check_functional(psi)
        if pair(psi, self.direction) > tol:
            return math.inf
        return pair(psi, self.vertex)

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        rng = np.random.default_rng(seed)
        ts = 10.0 ** rng.uniform(-2.0, 2.0, count)
        return [self.space.point(self.vertex.coords + t * self.direction.coords) for t in ts]

    def parameterize(self) -> Parameterization:
        return Parameterization(self.vertex, (self.direction,), NONNEGATIVE)

    def is_pointed(self) -> bool:
        return True

    def _scale(self) -> float:
        return float(np.linalg.norm(self.vertex.coords) + np.linalg.norm(self.direction.coords))

    def __repr__(self):
        return f"Ray({self.vertex!r}, {self.direction!r})"


class Line(ConvexSet):
    """The full line {point + t * direction : t real}."""

    def __init__(self, point: PrimalVec, direction: PrimalVec):
        point, direction = _as_points([point, direction], "line data")
        if np.all(direction.coords == 0.0):
            raise ValueError("line direction must be nonzero")
        self.space = point.space
        self.point = point
        self.direction = direction

    def distance(self, x: PrimalVec) -> float:
        self._check_point(x)
        d = self.direction.coords
        t = np.dot(x.coords - self.point.coords, d) / np.dot(d, d)
        return float(np.linalg.norm(x.coords - self.point.coords - t * d))

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        self._check_functional(psi)
        if abs(pair(psi, self.direction)) > tol:
            return math.inf
        return pair(psi, self.point)

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        rng = np.random.default_rng(seed)
        ts = 10.0 ** rng.uniform(-2.0, 2.0, count) * rng.choice([-1.0, 1.0], count)
        return [self.space.point(self.point.coords + t * self.direction.coords) for t in ts]

    def parameterize(self) -> Parameterization:
        return Parameterization(self.point, (self.direction,), UNRESTRICTED)

    def _scale(self) -> float:
        return float(np.linalg.norm(self.point.coords) + np.linalg.norm(self.direction.coords))

    def __repr__(self):
        return f"Line({self.point!r}, {self.direction!r})"


class FinitelyGeneratedCone(ConvexSet):
    """{vertex + sum_i t_i g_i : t_i >= 0} for nonzero generators g_i."""

    def __init__(self, vertex: PrimalVec, generators: Sequence[PrimalVec]):
        generators = _as_points(generators, "generators")
        vertex, = _as_points([vertex], "vertex")
        if vertex.space != generators[0].space:
            raise ValueError("vertex and generators must share one space")
        for g in generators:
            if np.all(g.coords == 0.0):
                raise ValueError("generators must be nonzero")
        self.space = vertex.space
        self.vertex = vertex
        self.generators = generators
        self._G = np.stack([g.coords for g in generators], axis=1)

    def distance(self, x: PrimalVec) -> float:
        self._check_point(x)
        _, resid = nnls(self._G, x.coords - self.vertex.coords)
        return float(resid)

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        self._check_functional(psi)
        if any(pair(psi, g) > tol for g in self.generators):
            return math.inf
        return pair(psi, self.vertex)

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        rng = np.random.default_rng(seed)
        coeffs = 10.0 ** rng.uniform(-2.0, 2.0, (count, self._G.shape[1]))
        return [self.space.point(self.vertex.coords + self._G @ c) for c in coeffs]

    def parameterize(self) -> Parameterization:
        return Parameterization(self.vertex, self.generators, NONNEGATIVE)

    def is_pointed(self, tol: float = 1e-9) -> bool:
        """True when the cone contains no full line through its vertex.

        A nontrivial nonnegative combination sum t_i g_i = 0 exists iff
        -g_j lies in the cone of directions for some j (move the j-th term
        across the equation), so checking each negated generator decides
        pointedness exactly.
        """
        for g in self.generators:
            _, resid = nnls(self._G, -g.coords)
            if resid <= tol * (1.0 + float(np.linalg.norm(g.coords))):
                return False
        return True

    def _scale(self) -> float:
        return float(np.linalg.norm(self.vertex.coords) + np.max(np.linalg.norm(self._G, axis=0)))

    def __repr__(self):
        return f"FinitelyGeneratedCone({self.vertex!r}, {len(self.generators)} generators)"


class Polytope(ConvexSet):
    """Convex hull of finitely many vertices."""

    def __init__(self, vertices: Sequence[PrimalVec]):
        self.vertices = _as_points(vertices, "vertices")
        self.space = self.vertices[0].space
        self._V = np.stack([v.coords for v in self.vertices], axis=1)

    def distance(self, x: PrimalVec) -> float:
        self._check_point(x)
        # Convex-combination fit: stack the affine constraint sum(c) = 1 as an
        # extra row so one nonnegative least-squares solve handles both.  The
        # blended residual vanishes exactly on members.
        rho = max(1.0, float(np.linalg.norm(x.coords)), self._scale())
        A = np.vstack([self._V, rho * np.ones(self._V.shape[1])])
        b = np.concatenate([x.coords, [rho]])
        _, resid = nnls(A, b)
        return float(resid)

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        self._check_functional(psi)
        return max(pair(psi, v) for v in self.vertices)

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        rng = np.random.default_rng(seed)
        lam = rng.dirichlet(np.ones(self._V.shape[1]), size=count)
        return [self.space.point(self._V @ l) for l in lam]

    def parameterize(self) -> Parameterization:
        return Parameterization(self.space.zero(), self.vertices, SIMPLEX)

    def _scale(self) -> float:
        return float(np.max(np.linalg.norm(self._V, axis=0)))

    def __repr__(self):
        return f"Polytope({len(self.vertices)} vertices)"


class Ball(ConvexSet):
    """The closed norm ball {x : ||x|| <= r} centered at the origin."""

    def __init__(self, space: LpSpace, radius: float):
        radius = float(radius)
        if not (radius > 0.0 and math.isfinite(radius)):
            raise ValueError("radius must be positive and finite")
        self.space = space
        self.radius = radius

    def distance(self, x: PrimalVec) -> float:
        self._check_point(x)
        return max(0.0, self.space.norm_of(x.coords) - self.radius)

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        self._check_functional(psi)
        return self.radius * psi.space.norm_of(psi.coords)

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        rng = np.random.default_rng(seed)
        pts = []
        for _ in range(count):
            g = rng.standard_normal(self.space.n)
            nrm = self.space.norm_of(g)
            if nrm == 0.0:
                pts.append(self.space.zero())
                continue
            pts.append(self.space.point(self.radius * rng.random() * g / nrm))
        return pts

    def parameterize(self) -> Parameterization:
        raise TypeError("a ball has no affine parameterization; projection onto it is closed form")

    def _scale(self) -> float:
        return self.radius

    def __repr__(self):
        return f"Ball({self.space!r}, r={self.radius:g})"


class Subspace(ConvexSet):
    """Linear span of an independent basis (possibly empty: the origin)."""

    def __init__(self, space: LpSpace, basis: Sequence[PrimalVec] = ()):
        basis = tuple(basis)
        if basis:
            basis = _as_points(basis, "basis")
            if basis[0].space != space:
                raise ValueError("basis must live in the given space")
            B = np.stack([b.coords for b in basis], axis=1)
            if np.linalg.matrix_rank(B) < len(basis):
                raise ValueError("basis vectors must be linearly independent")
        else:
            B = np.zeros((space.n, 0))
        self.space = space
        self.basis = basis
        self._B = B

    def dim(self) -> int:
        return len(self.basis)

    def distance(self, x: PrimalVec) -> float:
        self._check_point(x)
        if not self.basis:
            return float(np.linalg.norm(x.coords))
        coef, *_ = np.linalg.lstsq(self._B, x.coords, rcond=None)
        return float(np.linalg.norm(x.coords - self._B @ coef))

    def support(self, psi: DualVec, tol: float = 0.0) -> float:
        self._check_functional(psi)
        if any(abs(pair(psi, b)) > tol for b in self.basis):
            return math.inf
        return 0.0

    def sample(self, count: int, seed: int = 0) -> list[PrimalVec]:
        rng = np.random.default_rng(seed)
        if not self.basis:
            return [self.space.zero() for _ in range(count)]
        coeffs = 10.0 ** rng.uniform(-2.0, 2.0, (count, len(self.basis)))
        coeffs *= rng.choice([-1.0, 1.0], coeffs.shape)
        return [self.space.point(self._B @ c) for c in coeffs]

    def parameterize(self) -> Parameterization:
        return Parameterization(self.space.zero(), self.basis, UNRESTRICTED)

    def _scale(self) -> float:
        if not self.basis:
            return 0.0
        return float(np.max(np.linalg.norm(self._B, axis=0)))

    def __repr__(self):
        return f"Subspace(dim={self.dim()}, n={self.space.n})"
