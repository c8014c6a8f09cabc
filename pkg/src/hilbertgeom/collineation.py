"""Reconstruction of the linear map behind a Hilbert-metric isometry.

An isometry between strictly convex cross sections maps segments to
segments, and is then induced by a bi-positive linear map ``T``.  The
construction here is finite: start from the anchor ``xi = [u]`` with
``T xi = f(xi)``, and add one direction at a time using the 2-dimensional
base change on the chord through ``xi`` and the new point.
"""

from dataclasses import dataclass

import numpy as np

from .cones import (
    chord_endpoints,
    hilbert_dist,
    is_boundary,
    is_interior,
    projective_point,
    random_interior,
)
from .errors import (
    ChordDegenerate,
    DependentDirection,
    DimensionMismatch,
    NotBiPositive,
    NotInterior,
    NotIsometry,
    NotSegmentPreserving,
    OracleInconsistent,
    RescaleDegenerate,
    StateVanishes,
)

ORACLE_TOL = 1e-9
SEGMENT_TOL = 1e-6
BASE_CHANGE_TOL = 1e-6
PARTIAL_TOL = 1e-7
DEPENDENCE_TOL = 1e-8
RESCALE_TOL = 1e-7
RADIAL_TS = (0.9, 0.99, 0.999)


class IsometryOracle:
    """Black-box map between the cross sections of two order-unit spaces.

    Inputs are normalised onto the first cross section before ``func`` is
    called and outputs are normalised onto the second.
    """

    def __init__(self, func, space1, space2=None):
        self.func = func
        self.space1 = space1
        self.space2 = space1 if space2 is None else space2

    def __call__(self, x):
        x = projective_point(self.space1, x)
        return projective_point(self.space2, self.func(x))

    @classmethod
    def from_matrix(cls, T, space1, space2=None):
        T = np.array(T, dtype=float)
        T.flags.writeable = False
        oracle = cls(lambda x: T @ x, space1, space2)
        oracle.matrix = T
        return oracle

    def isometry_defect(self, rng, n_pairs=16):
        X = random_interior(self.space1, rng, n_pairs)
        Y = random_interior(self.space1, rng, n_pairs)
        worst = 0.0
        for x, y in zip(X, Y):
            d = hilbert_dist(self.space1, x, y)
            e = hilbert_dist(self.space2, self(x), self(y))
            worst = max(worst, abs(d - e) / max(1.0, d))
        return worst

    def segment_defect(self, rng, n_chords=16):
        """Largest relative distance of ``f(z)`` from the line ``f(x) f(y)``."""
        X = random_interior(self.space1, rng, n_chords)
        Y = random_interior(self.space1, rng, n_chords)
        worst = 0.0
        for x, y in zip(X, Y):
            w = rng.uniform(0.2, 0.8)
            fx, fy, fz = self(x), self(y), self(w * x + (1 - w) * y)
            d = fy - fx
            nd = np.linalg.norm(d)
            if nd == 0:
                continue
            v = fz - fx
            off = v - (v @ d) / (nd * nd) * d
            worst = max(worst, np.linalg.norm(off) / nd)
        return worst

    def validate(self, rng=None, n_pairs=16, tol=ORACLE_TOL):
        rng = np.random.default_rng(0) if rng is None else rng
        defect = self.isometry_defect(rng, n_pairs)
        if defect > tol:
            raise NotIsometry(f"distance defect {defect:.3e} exceeds {tol:.1e}")
        defect = self.segment_defect(rng)
        if defect > SEGMENT_TOL:
            raise NotSegmentPreserving(f"collinearity defect {defect:.3e}")


def _as_oracle(f, space1=None, space2=None):
    if isinstance(f, IsometryOracle):
        return f
    return IsometryOracle(f, space1, space2)


def lorentz_rotation(n, angle, plane=(1, 2)):
    """Rotation by ``angle`` in a spatial coordinate plane of ``R^n``."""
    i, j = plane
    L = np.eye(n)
    c, s = np.cos(angle), np.sin(angle)
    L[i, i], L[i, j], L[j, i], L[j, j] = c, -s, s, c
    return L


def lorentz_boost(n, rapidity, axis=1):
    """Boost mixing the time coordinate 0 with spatial coordinate ``axis``."""
    L = np.eye(n)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    L[0, 0], L[0, axis], L[axis, 0], L[axis, axis] = ch, sh, sh, ch
    return L


def _random_rotation(m, rng):
    Q, R = np.linalg.qr(rng.standard_normal((m, m)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_lorentz(n, rng, max_rapidity=1.0):
    """Random element of the orthochronous Lorentz group acting on ``R^n``."""
    R1 = np.eye(n)
    R2 = np.eye(n)
    R1[1:, 1:] = _random_rotation(n - 1, rng)
    R2[1:, 1:] = _random_rotation(n - 1, rng)
    return R1 @ lorentz_boost(n, rng.uniform(0.0, max_rapidity)) @ R2


@dataclass(frozen=True, eq=False)
class BaseChange:
    """Linear map ``S`` on ``Span{x', y'}`` matching ``f`` along the chord.

    ``domain`` rows are ``x'`` and ``y'``; ``image`` rows are ``S x'`` and
    ``S y'``.
    """

    domain: np.ndarray
    image: np.ndarray
    t: float
    s: float

    def coefficients(self, z):
        c, *_ = np.linalg.lstsq(self.domain.T, z, rcond=None)
        res = np.linalg.norm(self.domain.T @ c - z)
        if res > 1e-8 * max(np.linalg.norm(z), 1.0):
            raise DependentDirection("vector is not in the span of the chord")
        return c

    def __call__(self, z):
        return self.image.T @ self.coefficients(np.asarray(z, dtype=float))


def base_change(space1, space2, f, x, y, check=True):
    """Two-dimensional base change along the chord through ``x`` and ``y``.

    With ``x = t x' + (1-t) y'`` and ``f(x) = s f(x)' + (1-s) f(y)'`` the map
    is ``S x' = (s/t) f(x)'`` and ``S y' = ((1-s)/(1-t)) f(y)'``; hence
    ``S x = f(x)`` exactly.
    """
    f = _as_oracle(f, space1, space2)
    x = projective_point(space1, x)
    y = projective_point(space1, y)
    fx, fy = f(x), f(y)
    c1 = chord_endpoints(space1, x, y)
    c2 = chord_endpoints(space2, fx, fy)
    t, s = c1.t, c2.t
    for name, v in (("t", t), ("s", s)):
        if not 1e-12 < v < 1 - 1e-12:
            raise ChordDegenerate(f"chord parameter {name}={v!r} outside (0, 1)")
    dom = np.vstack([c1.x_prime, c1.y_prime])
    if np.linalg.cond(dom) > 1e12:
        raise ChordDegenerate("chord end points are nearly parallel")
    img = np.vstack([(s / t) * c2.x_prime, ((1 - s) / (1 - t)) * c2.y_prime])
    S = BaseChange(dom, img, t, s)
    if check:
        for w in (0.25, 0.5, 0.75):
            z = w * c1.x_prime + (1 - w) * c1.y_prime
            Sz = S(z)
            if not is_interior(space2.cone, Sz):
                raise OracleInconsistent("base change leaves the cone on the chord")
            err = hilbert_dist(space2, Sz, f(z))
            if err > BASE_CHANGE_TOL:
                raise OracleInconsistent(f"base change deviates from oracle by {err:.3e}")
    return S


@dataclass(frozen=True, eq=False)
class PartialLinearMap:
    """Linear map on ``Span(basis)`` with ``[T y] = f(y)`` on that subspace.

    Rows of ``basis`` are points of the first cross section, the first of
    which is the anchor; rows of ``images`` are their images under ``T``.
    """

    basis: np.ndarray
    images: np.ndarray

    @property
    def anchor(self):
        return self.basis[0]

    @property
    def rank(self):
        return self.basis.shape[0]

    @classmethod
    def start(cls, f, anchor):
        xi = projective_point(f.space1, anchor)
        return cls(xi[None, :], f(xi)[None, :])

    def residual(self, z):
        c, *_ = np.linalg.lstsq(self.basis.T, z, rcond=None)
        return np.linalg.norm(self.basis.T @ c - z) / np.linalg.norm(z), c

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        res, c = self.residual(y)
        if res > DEPENDENCE_TOL:
            raise DependentDirection("vector lies outside the current subspace")
        return self.images.T @ c

    def matrix(self):
        if self.rank != self.basis.shape[1]:
            raise DimensionMismatch(f"map is only defined on a {self.rank}-dimensional subspace")
        return np.linalg.solve(self.basis, self.images).T


def extend_collineation(partial, z, f, check=True):
    """Extend ``partial`` to ``Span(basis) + Span{z}``.

    The base change ``S`` on the chord through the anchor and ``z`` is
    rescaled so that ``S xi = T xi``; the extension is
    ``y + lam z -> T y + lam S z``.
    """
    f = _as_oracle(f)
    z = projective_point(f.space1, z)
    res, _ = partial.residual(z)
    if res < DEPENDENCE_TOL:
        raise DependentDirection("new direction lies in the current subspace")
    xi = partial.anchor
    S = base_change(f.space1, f.space2, f, xi, z, check=check)
    s_xi = S(xi)
    t_xi = partial(xi)
    scale = (s_xi @ t_xi) / (s_xi @ s_xi)
    if not scale > 0 or np.linalg.norm(t_xi - scale * s_xi) > RESCALE_TOL * np.linalg.norm(t_xi):
        raise RescaleDegenerate("S xi and T xi are not positively proportional")
    out = PartialLinearMap(
        np.vstack([partial.basis, z]),
        np.vstack([partial.images, scale * S(z)]),
    )
    if check:
        for b in partial.basis[1:][-3:]:
            w = (xi + z + b) / 3.0
            Tw = out(w)
            if not is_interior(f.space2.cone, Tw):
                raise OracleInconsistent("extension maps an interior point outside the cone")
            err = hilbert_dist(f.space2, Tw, f(w))
            if err > PARTIAL_TOL:
                raise OracleInconsistent(f"extension deviates from oracle by {err:.3e}")
    return out


def reconstruct_linear(space1, space2, f, rng=None, check=True):
    """Recover a matrix ``T`` with ``[T x] = f(x)`` on the cross section.

    The oracle is first probed for distance preservation and segment
    preservation; then the anchor ``[u]`` is extended along the
    perturbation directions ``[u] + delta e_i``.
    """
    f = _as_oracle(f, space1, space2)
    if space1.dim != space2.dim:
        raise DimensionMismatch("spaces must have equal dimension")
    if check:
        f.validate(rng)
    n = space1.dim
    xi = projective_point(space1, space1.u)
    delta = 1e-2 * space1.cone.slack(xi)
    partial = PartialLinearMap.start(f, xi)
    for i in range(n):
        if partial.rank == n:
            break
        z = xi.copy()
        z[i] += delta
        try:
            partial = extend_collineation(partial, z, f, check=check)
        except DependentDirection:
            continue
    return partial.matrix()


def extend_to_boundary(T, space1, space2, x):
    """Image ``[T x]`` of a boundary point of the first cross section."""
    T = np.asarray(T, dtype=float)
    x = np.asarray(x, dtype=float)
    if not is_boundary(space1.cone, x):
        raise NotInterior("point is not on the cone boundary")
    x = x / space1.state(x)
    y = T @ x
    phi = space2.state(y)
    if phi <= 0:
        raise StateVanishes(f"state of the image is {phi!r}")
    return y / phi


def radial_limit_defects(f, T, x, p=None, ts=RADIAL_TS):
    """Distances ``|f((1-t) p + t x) - [T x]|`` along the ray from ``p`` to ``x``."""
    f = _as_oracle(f)
    p = projective_point(f.space1, f.space1.u if p is None else p)
    xb = extend_to_boundary(T, f.space1, f.space2, x)
    x = np.asarray(x, dtype=float) / f.space1.state(x)
    return np.array([np.linalg.norm(f((1 - t) * p + t * x) - xb) for t in ts])


def radial_limit_consistent(f, T, x, p=None, ts=RADIAL_TS):
    """Check that the radial defects decay at least linearly in ``1 - t``.

    The allowance at ``t_k`` is ``2 c (1 - t_k)`` with ``c`` the defect
    rate observed at the first sample point.
    """
    d = radial_limit_defects(f, T, x, p, ts)
    rate = d[0] / (1 - ts[0])
    allowed = 2.0 * rate * (1 - np.asarray(ts)) + 1e-9
    return bool(np.all(d <= allowed))


@dataclass(frozen=True)
class LinearityReport:
    max_residual: float
    is_isometry_residual: float

    def to_dict(self):
        return {"max_residual": self.max_residual, "is_isometry_residual": self.is_isometry_residual}


def verify_projective_linearity(f, T, n_samples=64, rng=None):
    """Report how far ``f`` is from ``[T]`` and from being an isometry.

    ``max_residual`` is the largest ``d_H(f(x), [T x])``; a sample with
    ``T x`` outside the cone counts as an infinite residual.
    """
    f = _as_oracle(f)
    rng = np.random.default_rng(0) if rng is None else rng
    T = np.asarray(T, dtype=float)
    X = random_interior(f.space1, rng, n_samples)
    Y = random_interior(f.space1, rng, n_samples)
    max_res = 0.0
    iso_res = 0.0
    for x, y in zip(X, Y):
        fx, fy = f(x), f(y)
        tx = T @ x
        if is_interior(f.space2.cone, tx):
            max_res = max(max_res, hilbert_dist(f.space2, fx, tx))
        else:
            max_res = np.inf
        iso_res = max(iso_res, abs(hilbert_dist(f.space2, fx, fy) - hilbert_dist(f.space1, x, y)))
    return LinearityReport(float(max_res), float(iso_res))


def check_reconstruction_bipositive(T, space1, space2, rng, n=1000):
    """Sampled check that ``T`` maps cone points in and exterior points out.

    Raises :class:`NotBiPositive` on the first violation.
    """
    T = np.asarray(T, dtype=float)
    inside = random_interior(space1, rng, n)
    for x in inside:
        if not is_interior(space2.cone, T @ x):
            raise NotBiPositive("interior point mapped outside the cone")
    d = space1.dim
    out = 0
    while out < n:
        x = rng.standard_normal(d)
        if is_interior(space1.cone, x) or is_boundary(space1.cone, x, 1e-6):
            continue
        if is_interior(space2.cone, T @ x):
            raise NotBiPositive("exterior point mapped into the cone")
        out += 1
