"""Bounded convex bodies and their lift to order-unit cones.

A body ``Omega`` in ``R^d`` containing the origin in its interior lifts to
the cone ``{lam * (y, 1) : lam >= 0, y in closure(Omega)}`` in ``R^(d+1)``
with order unit ``(0, 1)`` and state ``phi(y, s) = s``.  The cross section
``phi = 1`` is an affine copy of ``Omega``, and the Hilbert geometry of the
body agrees with the Birkhoff metric of the cone.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from . import polyhedra
from .cones import Lorentz, OrderUnitSpace, PolyhedralFacets, _frozen, log_cross_ratio
from .errors import InvalidBody, MalformedInput, NotInterior, OriginNotInterior

MAX_DD_DIM = 6
INTERIOR_TOL = 1e-12


def _origin_weight(V):
    """max t such that 0 = sum_j lam_j v_j, sum lam_j = 1, lam_j >= t."""
    k, d = V.shape
    c = np.r_[np.zeros(k), -1.0]
    A_eq = np.vstack([np.hstack([V.T, np.zeros((d, 1))]), np.r_[np.ones(k), 0.0]])
    b_eq = np.r_[np.zeros(d), 1.0]
    A_ub = np.hstack([-np.eye(k), np.ones((k, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(k), A_eq=A_eq, b_eq=b_eq,
                  bounds=[(0, None)] * k + [(None, 1)], method="highs")
    return -res.fun if res.status == 0 else -np.inf


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex hull of ``vertices``; the origin must be interior.

    Facets are enumerated by double description for ``dim <= 6``; above
    that they must be supplied as rows ``a`` with body ``{y : a @ y <= 1}``.
    """

    vertices: np.ndarray
    facets: np.ndarray = None

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if not np.all(np.isfinite(V)):
            raise InvalidBody("vertices must be finite")
        d = V.shape[1]
        if np.linalg.matrix_rank(V) < d or _origin_weight(V) <= INTERIOR_TOL:
            raise OriginNotInterior("origin is not interior to the convex hull")
        if self.facets is None:
            if d > MAX_DD_DIM:
                raise InvalidBody(f"facets must be supplied for dimension {d} > {MAX_DD_DIM}")
            F = polyhedra.hull_facets(V)
        else:
            F = np.atleast_2d(np.asarray(self.facets, dtype=float))
            if F.shape[1] != d or np.any(V @ F.T > 1 + 1e-9):
                raise InvalidBody("supplied facets do not bound the vertices")
        object.__setattr__(self, "vertices", _frozen(V))
        object.__setattr__(self, "facets", _frozen(F))

    @property
    def dim(self):
        return self.vertices.shape[1]

    def gauge(self, y):
        """Minkowski functional of the body itself."""
        return max(float(np.max(self.facets @ y)), 0.0)

    def exit_parameter(self, p, d):
        """Largest ``s`` with ``p + s d`` in the closed body."""
        ad = self.facets @ d
        slack = 1.0 - self.facets @ p
        hit = ad > 0
        return float(np.min(slack[hit] / ad[hit]))

    def to_dict(self):
        return {"polytope": {"vertices": self.vertices.tolist()}}


@dataclass(frozen=True, eq=False)
class Ball:
    """Euclidean ball of ``radius`` centred at the origin of ``R^dim``."""

    radius: float
    dim: int = 2

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise InvalidBody("radius must be positive and finite")
        if int(self.dim) < 1:
            raise InvalidBody("dimension must be positive")

    def gauge(self, y):
        return float(np.linalg.norm(y) / self.radius)

    def exit_parameter(self, p, d):
        a = d @ d
        b = p @ d
        c = p @ p - self.radius**2
        return float((-b + np.sqrt(b * b - a * c)) / a)

    def to_dict(self):
        return {"ball": {"radius": float(self.radius), "dim": int(self.dim)}}


def body_from_dict(d):
    try:
        if "polytope" in d:
            spec = d["polytope"]
            return Polytope(np.asarray(spec["vertices"], dtype=float), spec.get("facets"))
        if "ball" in d:
            spec = d["ball"]
            return Ball(float(spec["radius"]), int(spec.get("dim", 2)))
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"bad body description: {exc}") from None
    raise MalformedInput("body must have a 'polytope' or 'ball' key")


def embed(y):
    """``y -> (y, 1)``, the affine isomorphism onto the cross section."""
    return np.r_[np.asarray(y, dtype=float), 1.0]


def lift(body):
    """Order-unit space of the cone over ``body``.

    Polytopes become facet cones with functionals ``(-a, 1)``; balls become
    Lorentz cones whose axis is the last coordinate.
    """
    d = body.dim
    e = np.zeros(d + 1)
    e[d] = 1.0
    if isinstance(body, Ball):
        cone = Lorentz(d + 1, axis=d, radius=float(body.radius))
    else:
        cone = PolyhedralFacets(np.hstack([-body.facets, np.ones((len(body.facets), 1))]))
    return OrderUnitSpace(cone, e, e)


def minkowski_norm(body, y):
    """Minkowski functional of ``closure(Omega) & -closure(Omega)``."""
    y = np.asarray(y, dtype=float)
    return max(body.gauge(y), body.gauge(-y))


def body_dist(body, p, q):
    """Hilbert distance on the body via the cross-ratio of its chord."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    for z in (p, q):
        if body.gauge(z) >= 1.0 - INTERIOR_TOL:
            raise NotInterior(f"point {z.tolist()} is not interior to the body")
    d = q - p
    if np.linalg.norm(d) <= 1e-15 * max(np.linalg.norm(p), np.linalg.norm(q), 1.0):
        return 0.0
    yp = q + body.exit_parameter(q, d) * d
    xp = p - body.exit_parameter(p, -d) * d
    return max(log_cross_ratio(xp, p, q, yp), 0.0)
