"""Order-unit cones, Birkhoff gauges and the Hilbert / Thompson metrics.

Three cone families are supported:

* :class:`Orthant` -- ``{x : x_i >= 0}``;
* :class:`Lorentz` -- ``{x : x[axis] >= |x[rest]| / radius}`` (the ice-cream
  cone; ``axis=0, radius=1`` is the textbook form);
* :class:`PolyhedralFacets` -- ``{x : a_i . x >= 0 for all i}``.

An :class:`OrderUnitSpace` adds an interior order unit ``u`` and a strictly
positive state ``phi`` with ``phi(u) = 1``.  Points of the cross section
``{x interior : phi(x) = 1}`` are plain float arrays, produced by
:func:`projective_point`.

All functions are pure; stored arrays are made read-only.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from . import polyhedra
from .errors import (
    CoincidentPoints,
    DimensionMismatch,
    InvalidCone,
    InvalidSpace,
    MalformedInput,
    NotBiPositive,
    NotInterior,
    NotPositive,
    NumericalDegeneracy,
)

INTERIOR_TOL = 1e-12
COINCIDENT_TOL = 1e-12
MEMBERSHIP_TOL = 1e-9


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def _vec(x, dim=None):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise MalformedInput(f"expected a vector, got shape {x.shape}")
    if dim is not None and x.shape[0] != dim:
        raise DimensionMismatch(f"expected length {dim}, got {x.shape[0]}")
    return x


class _Polyhedral:
    """Shared behaviour of cones given by finitely many facet functionals."""

    @property
    def facet_matrix(self):
        raise NotImplementedError

    def slack(self, x):
        A = self.facet_matrix
        return float(np.min(A @ x / np.linalg.norm(A, axis=1)))

    def upper_gauge(self, x, y):
        A = self.facet_matrix
        return float(np.max((A @ x) / (A @ y)))

    def extreme_rays(self):
        return polyhedra.extreme_rays(self.facet_matrix)

    def boundary_samples(self, rng, size):
        """Extreme rays followed by random points inside facets."""
        rays = self.extreme_rays()
        A = self.facet_matrix
        active = np.abs(rays @ A.T) <= 1e-9 * np.linalg.norm(A, axis=1)
        out = list(rays)
        faces = [np.flatnonzero(active[:, i]) for i in range(A.shape[0])]
        faces = [f for f in faces if len(f) >= 2]
        while faces and len(out) < size:
            f = faces[rng.integers(len(faces))]
            out.append(rng.dirichlet(np.ones(len(f))) @ rays[f])
        return np.array(out)

    def dual_interior(self, phi):
        rays = self.extreme_rays()
        vals = rays @ phi
        return bool(np.all(vals > INTERIOR_TOL * np.linalg.norm(phi)))


@dataclass(frozen=True, eq=False)
class Orthant(_Polyhedral):
    dim: int

    def __post_init__(self):
        if int(self.dim) < 1:
            raise InvalidCone("orthant dimension must be positive")

    @property
    def facet_matrix(self):
        return np.eye(self.dim)

    def slack(self, x):
        return float(np.min(x))

    def upper_gauge(self, x, y):
        return float(np.max(x / y))

    def extreme_rays(self):
        return np.eye(self.dim)

    def to_dict(self):
        return {"type": "orthant", "dim": int(self.dim)}


@dataclass(frozen=True, eq=False)
class PolyhedralFacets(_Polyhedral):
    """Cone ``{x : facets @ x >= 0}``.

    Construction checks that no facet functional vanishes, that the facets
    span the dual space (pointedness) and that the interior is nonempty via
    a small linear program.
    """

    facets: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.facets, dtype=float))
        if A.size == 0:
            raise InvalidCone("at least one facet is required")
        if np.any(np.linalg.norm(A, axis=1) == 0):
            raise InvalidCone("zero facet functional")
        if np.linalg.matrix_rank(A) < A.shape[1]:
            raise InvalidCone("facets do not span; cone is not pointed")
        if _interior_margin_lp(A) <= INTERIOR_TOL:
            raise InvalidCone("cone has empty interior")
        object.__setattr__(self, "facets", _frozen(A))

    @property
    def dim(self):
        return self.facets.shape[1]

    @property
    def facet_matrix(self):
        return self.facets

    def to_dict(self):
        return {"type": "facets", "facets": self.facets.tolist()}


def _interior_margin_lp(A):
    """max t subject to a_i . x >= t |a_i|, |x_j| <= 1."""
    m, n = A.shape
    norms = np.linalg.norm(A, axis=1)
    c = np.r_[np.zeros(n), -1.0]
    A_ub = np.hstack([-A, norms[:, None]])
    bounds = [(-1, 1)] * n + [(None, 1)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(m), bounds=bounds, method="highs")
    if res.status != 0:
        return 0.0
    return -res.fun


def interior_point(A):
    """A strictly interior point of ``{x : A x >= 0}`` (Chebyshev-style LP)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    m, n = A.shape
    norms = np.linalg.norm(A, axis=1)
    res = linprog(
        np.r_[np.zeros(n), -1.0],
        A_ub=np.hstack([-A, norms[:, None]]),
        b_ub=np.zeros(m),
        bounds=[(-1, 1)] * n + [(None, 1)],
        method="highs",
    )
    return res.x[:n]


@dataclass(frozen=True, eq=False)
class Lorentz:
    """Ice-cream cone ``{x : x[axis] >= |x without axis| / radius}``."""

    dim: int
    axis: int = 0
    radius: float = 1.0

    def __post_init__(self):
        if int(self.dim) < 2:
            raise InvalidCone("Lorentz cone needs dimension >= 2")
        if not 0 <= self.axis < self.dim:
            raise InvalidCone("axis out of range")
        if not self.radius > 0:
            raise InvalidCone("radius must be positive")

    def _split(self, x):
        rest = np.delete(x, self.axis, axis=-1) / self.radius
        return x[..., self.axis], rest

    def slack(self, x):
        t, r = self._split(x)
        return float((t - np.linalg.norm(r)) / np.sqrt(1.0 + 1.0 / self.radius**2))

    def minkowski_form(self, x, y):
        tx, rx = self._split(x)
        ty, ry = self._split(y)
        return tx * ty - rx @ ry

    def _self_form(self, x):
        t, r = self._split(x)
        nr = np.linalg.norm(r)
        return (t - nr) * (t + nr)

    def discriminant(self, x, y):
        """``J(x,y)^2 - J(x,x) J(y,y)`` as a difference of sums of squares.

        Expanding the Lorentz form gives ``|x_t y_r - y_t x_r|^2`` minus the
        squared norm of the wedge ``x_r ^ y_r``; both are computed from
        first-order differences, so the result stays accurate when ``x`` and
        ``y`` are nearly proportional.
        """
        tx, rx = self._split(x)
        ty, ry = self._split(y)
        d = tx * ry - ty * rx
        W = np.outer(rx, ry) - np.outer(ry, rx)
        return float(d @ d - 0.5 * np.sum(W * W))

    def upper_gauge(self, x, y):
        # beta*y - x on the cone boundary solves
        #   J(y,y) beta^2 - 2 J(x,y) beta + J(x,x) = 0;
        # the future-pointing branch is the larger root.
        Jyy = self._self_form(y)
        Jxy = self.minkowski_form(x, y)
        D = self.discriminant(x, y)
        scale = max(Jxy * Jxy, abs(Jyy * self._self_form(x)), 1e-300)
        if D < -1e-9 * scale:
            raise NumericalDegeneracy(f"negative gauge discriminant {D:.3e}")
        return float((Jxy + np.sqrt(max(D, 0.0))) / Jyy)

    def dual_interior(self, phi):
        t, r = self._split(phi)
        # dual of {x_t >= |x_r|/R} is {p_t >= R |p_r|} in unscaled coordinates
        rr = np.linalg.norm(r) * self.radius**2
        return bool(t > rr + INTERIOR_TOL * np.linalg.norm(phi))

    def boundary_samples(self, rng, size):
        z = rng.standard_normal((size, self.dim - 1))
        z /= np.linalg.norm(z, axis=1)[:, None]
        out = np.insert(z * self.radius, self.axis, 1.0, axis=1)
        return out

    def to_dict(self):
        d = {"type": "lorentz", "dim": int(self.dim)}
        if self.axis != 0:
            d["axis"] = int(self.axis)
        if self.radius != 1.0:
            d["radius"] = float(self.radius)
        return d


def cone_from_dict(d):
    try:
        kind = d["type"]
        if kind == "orthant":
            return Orthant(int(d["dim"]))
        if kind == "lorentz":
            return Lorentz(int(d["dim"]), int(d.get("axis", 0)), float(d.get("radius", 1.0)))
        if kind == "facets":
            return PolyhedralFacets(np.asarray(d["facets"], dtype=float))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad cone description: {exc}") from None
    raise MalformedInput(f"unknown cone type {kind!r}")


def is_in_cone(cone, x, tol=MEMBERSHIP_TOL):
    x = np.asarray(x, dtype=float)
    return cone.slack(x) >= -tol * max(np.linalg.norm(x), 1.0)


def is_interior(cone, x, tol=INTERIOR_TOL):
    x = np.asarray(x, dtype=float)
    n = np.linalg.norm(x)
    return n > 0 and cone.slack(x) > tol * n


def is_boundary(cone, x, tol=MEMBERSHIP_TOL):
    x = np.asarray(x, dtype=float)
    n = np.linalg.norm(x)
    return n > 0 and abs(cone.slack(x)) <= tol * n


@dataclass(frozen=True, eq=False)
class OrderUnitSpace:
    """A cone with an interior order unit ``u`` and strictly positive state ``phi``."""

    cone: object
    u: np.ndarray
    phi: np.ndarray = field(default=None)

    def __post_init__(self):
        n = self.cone.dim
        u = _vec(self.u, n)
        phi = _vec(self.phi, n)
        if not is_interior(self.cone, u):
            raise InvalidSpace("order unit is not interior to the cone")
        if abs(phi @ u - 1.0) > 1e-9:
            raise InvalidSpace(f"state does not satisfy phi(u) = 1 (got {phi @ u!r})")
        if not self.cone.dual_interior(phi):
            raise InvalidSpace("state is not strictly positive on the cone")
        object.__setattr__(self, "u", _frozen(u))
        object.__setattr__(self, "phi", _frozen(phi))

    @property
    def dim(self):
        return self.cone.dim

    def state(self, x):
        return float(self.phi @ x)

    def to_dict(self):
        return {"cone": self.cone.to_dict(), "u": self.u.tolist(), "phi": self.phi.tolist()}

    @classmethod
    def from_dict(cls, d):
        try:
            cone = cone_from_dict(d["cone"])
            u = d.get("u")
            phi = d.get("phi")
        except (KeyError, TypeError, AttributeError) as exc:
            raise MalformedInput(f"bad space description: {exc}") from None
        return standard_space(cone, u=u, phi=phi)


def standard_space(cone, u=None, phi=None):
    """Build an :class:`OrderUnitSpace` filling in conventional defaults.

    Orthant: ``u = 1``, ``phi = mean``.  Lorentz: ``u = phi = e_axis``.
    Polyhedral: ``u`` an LP-centred interior point, ``phi`` proportional to
    the sum of unit facet normals.  When only one of ``u``/``phi`` is given,
    the other default is rescaled so that ``phi(u) = 1``.
    """
    n = cone.dim
    if isinstance(cone, Orthant):
        du, dphi = np.ones(n), np.ones(n) / n
    elif isinstance(cone, Lorentz):
        du = np.zeros(n)
        du[cone.axis] = 1.0
        dphi = du.copy()
    else:
        A = cone.facets
        du = interior_point(A)
        dphi = (A / np.linalg.norm(A, axis=1)[:, None]).sum(axis=0)
    if u is None and phi is None:
        u, phi = du, dphi / (dphi @ du)
    elif u is None:
        phi = _vec(phi, n)
        u = du / (phi @ du)
    elif phi is None:
        u = _vec(u, n)
        phi = dphi / (dphi @ u)
    return OrderUnitSpace(cone, u, phi)


def orthant_space(n, u=None, phi=None):
    return standard_space(Orthant(n), u=u, phi=phi)


def lorentz_space(n, axis=0, radius=1.0):
    return standard_space(Lorentz(n, axis, radius))


def facet_space(facets, u=None, phi=None):
    return standard_space(PolyhedralFacets(np.asarray(facets, dtype=float)), u=u, phi=phi)


@dataclass(frozen=True, eq=False)
class Chord:
    """End points of the chord through two points of the cross section.

    ``x = t * x_prime + (1 - t) * y_prime``.
    """

    x_prime: np.ndarray
    y_prime: np.ndarray
    t: float


def _require_interior(space, *xs):
    out = []
    for x in xs:
        x = _vec(x, space.dim)
        if not is_interior(space.cone, x):
            raise NotInterior(f"point {x.tolist()} is not interior to the cone")
        out.append(x)
    return out


def projective_point(space, x):
    """Return ``[x] = x / phi(x)``, the representative on the cross section."""
    (x,) = _require_interior(space, x)
    return x / space.state(x)


def gauge_M(space, x, y):
    """``M(x/y)``: the least ``beta`` with ``x <= beta * y`` in the cone order."""
    x, y = _require_interior(space, x, y)
    return space.cone.upper_gauge(x, y)


def hilbert_dist(space, x, y):
    """Birkhoff's version of Hilbert's metric, ``log(M(x/y) M(y/x))``."""
    x, y = _require_interior(space, x, y)
    if np.array_equal(x, y):
        return 0.0
    c = space.cone
    d = np.log(c.upper_gauge(x, y)) + np.log(c.upper_gauge(y, x))
    return max(float(d), 0.0)


def thompson_dist(space, x, y):
    """Thompson's metric, ``log max(M(x/y), M(y/x))``."""
    x, y = _require_interior(space, x, y)
    if np.array_equal(x, y):
        return 0.0
    c = space.cone
    return max(float(np.log(max(c.upper_gauge(x, y), c.upper_gauge(y, x)))), 0.0)


def chord_endpoints(space, x, y):
    """Boundary end points ``x'``, ``y'`` of the chord through ``[x]`` and ``[y]``.

    Uses ``w_x = x - y / M(y/x)`` and ``w_y = y - x / M(x/y)``, both of
    which lie on the cone boundary, normalised by the state.
    """
    x = projective_point(space, x)
    y = projective_point(space, y)
    c = space.cone
    m_xy = c.upper_gauge(x, y)
    m_yx = c.upper_gauge(y, x)
    if np.log(m_xy) + np.log(m_yx) < COINCIDENT_TOL:
        raise CoincidentPoints("points coincide projectively")
    wx = x - y / m_yx
    wy = y - x / m_xy
    xp = wx / space.state(wx)
    yp = wy / space.state(wy)
    d = xp - yp
    t = float((x - yp) @ d / (d @ d))
    return Chord(_frozen(xp), _frozen(yp), t)


def cross_ratio(xp, x, y, yp):
    """``[x', x, y, y'] = |x'-y| |y'-x| / (|x'-x| |y'-y|)``."""
    nrm = np.linalg.norm
    return (nrm(xp - y) / nrm(xp - x)) * (nrm(yp - x) / nrm(yp - y))


def log_cross_ratio(xp, x, y, yp):
    nrm = np.linalg.norm
    return float(
        np.log(nrm(xp - y)) - np.log(nrm(xp - x)) + np.log(nrm(yp - x)) - np.log(nrm(yp - y))
    )


def cross_ratio_dist(space, x, y):
    """Hilbert's metric as the log cross-ratio along the chord through x, y."""
    x = projective_point(space, x)
    y = projective_point(space, y)
    try:
        ch = chord_endpoints(space, x, y)
    except CoincidentPoints:
        return 0.0
    return max(log_cross_ratio(ch.x_prime, x, y, ch.y_prime), 0.0)


def order_unit_norm(space, x):
    """``inf{lam > 0 : -lam u <= x <= lam u}``."""
    x = _vec(x, space.dim)
    c = space.cone
    u = np.asarray(space.u)
    return max(c.upper_gauge(x, u), c.upper_gauge(-x, u), 0.0)


def is_order_unit(space, x):
    """Order units are exactly the interior points of the cone."""
    x = _vec(x, space.dim)
    return is_interior(space.cone, x)


def boundary_samples(space, rng=None, size=64):
    """Nonzero boundary vectors of the cone, normalised by the state."""
    rng = np.random.default_rng(0) if rng is None else rng
    B = space.cone.boundary_samples(rng, size)
    return B / (B @ space.phi)[:, None]


def random_interior(space, rng, size):
    """Random points on the cross section, bounded away from its boundary."""
    c = space.cone
    n = space.dim
    if isinstance(c, Orthant):
        X = np.exp(rng.normal(0.0, 1.0, (size, n)))
    elif isinstance(c, Lorentz):
        z = rng.standard_normal((size, n - 1))
        z /= np.linalg.norm(z, axis=1)[:, None]
        rad = 0.95 * rng.uniform(0.0, 1.0, (size, 1)) ** (1.0 / (n - 1))
        X = np.insert(z * rad * c.radius, c.axis, 1.0, axis=1)
    else:
        rays = c.extreme_rays()
        rays = rays / (rays @ space.phi)[:, None]
        w = rng.dirichlet(np.ones(len(rays)), size)
        X = 0.9 * w @ rays + 0.1 * np.asarray(space.u)
    return X / (X @ space.phi)[:, None]


def check_bipositive(T, space1, space2, rng=None, n_samples=64, tol=MEMBERSHIP_TOL):
    """Sampled bi-positivity check of a matrix ``T``.

    Raises :class:`NotBiPositive` if a sampled boundary vector of cone 1 is
    not mapped onto the boundary of cone 2, or the order unit is not mapped
    into the interior.
    """
    T = np.asarray(T, dtype=float)
    if T.shape != (space2.dim, space1.dim):
        raise DimensionMismatch(f"matrix shape {T.shape} does not map {space1.dim} -> {space2.dim}")
    if not is_interior(space2.cone, T @ space1.u):
        raise NotBiPositive("order unit is not mapped into the interior")
    for b in boundary_samples(space1, rng, n_samples):
        if not is_boundary(space2.cone, T @ b, tol):
            raise NotBiPositive(f"boundary vector {b.tolist()} not mapped to the boundary")


def induced_isometry_apply(T, space1, space2, x, check=True):
    """Apply the projective map ``[T]``: ``x -> T x / phi_2(T x)``."""
    T = np.asarray(T, dtype=float)
    if check:
        check_bipositive(T, space1, space2)
    x = projective_point(space1, x)
    y = T @ x
    if not is_interior(space2.cone, y):
        raise NotBiPositive("image of an interior point is not interior")
    return y / space2.state(y)


def positive_operator_norm(space1, space2, T, rng=None):
    """Operator norm of a positive map, ``|T u_1|_{u_2}``."""
    T = np.asarray(T, dtype=float)
    if T.shape != (space2.dim, space1.dim):
        raise DimensionMismatch(f"matrix shape {T.shape} does not map {space1.dim} -> {space2.dim}")
    probes = np.vstack([boundary_samples(space1, rng), np.asarray(space1.u)[None, :]])
    for b in probes:
        if not is_in_cone(space2.cone, T @ b):
            raise NotPositive(f"vector {b.tolist()} is mapped outside the cone")
    return order_unit_norm(space2, T @ space1.u)
