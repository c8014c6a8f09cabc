"""Dual-space recovery of simplex isometries over a finite ``K``.

Signed measures on ``K = {0, ..., n-1}`` are weight vectors.  The dual of
the variation-norm quotient is the sum-zero subspace with half the total
variation norm; the extreme points of its unit ball are the differences of
two point masses.  A linear isometry ``T`` of the quotient permutes these
extreme points through its adjoint, and the way it permutes the families
``E_s = {delta_s - delta_t : t != s}`` reads off the sign ``eps`` and the
permutation ``theta`` with ``T q = eps * q[theta]``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import polyhedra
from .errors import (
    InconsistentSign,
    MalformedInput,
    NotAffineInLog,
    NotIsometricIsomorphism,
    NotIsometry,
)
from .simplexgeom import (
    canonical,
    delta_point,
    exp_map,
    isometry_apply,
    log_map,
    make_isometry,
    simplex_dist,
)

PATTERN_TOL = 1e-9
AFFINE_TOL = 1e-7
ISOMETRY_TOL = 1e-8


def hahn_jordan(m):
    """Positive and negative parts ``(m+, m-)`` with ``m = m+ - m-``."""
    m = np.asarray(m, dtype=float)
    return np.maximum(m, 0.0), np.maximum(-m, 0.0)


def tv_norm(m):
    return float(np.sum(np.abs(np.asarray(m, dtype=float))))


def dirac_difference(n, s, t):
    m = np.zeros(n)
    m[s] += 1.0
    m[t] -= 1.0
    return m


def extreme_points(n):
    """All ``delta_s - delta_t`` with ``s != t``, in lexicographic ``(s, t)`` order."""
    if n < 2:
        raise MalformedInput("need at least two points")
    return np.array([dirac_difference(n, s, t) for s in range(n) for t in range(n) if s != t])


def enumerate_dual_ball_vertices(n):
    """Vertices of ``{w : sum(w) = 0, sum(|w|) <= 2}`` by double description.

    The polytope is parametrised on the sum-zero subspace and described by
    the ``2^n`` sign inequalities ``sigma . w <= 2``.  Intended as an
    independent check of :func:`extreme_points` for small ``n``.
    """
    if n < 2:
        raise MalformedInput("need at least two points")
    # orthonormal basis of the sum-zero subspace
    Q, _ = np.linalg.qr(np.eye(n) - 1.0 / n)
    B = Q[:, : n - 1]
    signs = np.array(list(itertools.product((-1.0, 1.0), repeat=n)))
    A = signs @ B
    keep = np.linalg.norm(A, axis=1) > 1e-12
    V = polyhedra.polytope_vertices(A[keep], np.full(keep.sum(), 2.0))
    W = V @ B.T
    W[np.abs(W) < 1e-9] = 0.0
    W = np.round(W, 9) + 0.0
    order = np.lexsort(W.T[::-1])
    return W[order]


def match_dirac_difference(m, tol=PATTERN_TOL):
    """``(s, t)`` with ``m = delta_s - delta_t``, or ``None``."""
    m = np.asarray(m, dtype=float)
    plus = np.flatnonzero(np.abs(m - 1.0) <= tol)
    minus = np.flatnonzero(np.abs(m + 1.0) <= tol)
    zero = np.abs(m) <= tol
    if len(plus) == 1 and len(minus) == 1 and zero.sum() == m.size - 2:
        return int(plus[0]), int(minus[0])
    return None


@dataclass(frozen=True)
class EquilateralWitness:
    source: int
    sign: int


@dataclass(frozen=True)
class NotEquilateral:
    pair: tuple
    distance: float


def equilateral_witness(A):
    """Common source of an equilateral family of extreme points.

    Returns :class:`EquilateralWitness` ``(s, +1)`` when every member is
    ``delta_s - delta_t`` (``(s, -1)`` when every member is
    ``delta_t - delta_s``), or :class:`NotEquilateral` with the first pair
    at half-TV distance other than 1.
    """
    A = [np.asarray(a, dtype=float) for a in A]
    if not A:
        raise MalformedInput("empty family")
    pairs = []
    for a in A:
        st = match_dirac_difference(a)
        if st is None:
            raise MalformedInput(f"{a.tolist()} is not a difference of point masses")
        pairs.append(st)
    for i, j in itertools.combinations(range(len(A)), 2):
        d = 0.5 * tv_norm(A[i] - A[j])
        if abs(d - 1.0) > PATTERN_TOL:
            return NotEquilateral((i, j), d)
    heads = {s for s, _ in pairs}
    tails = {t for _, t in pairs}
    if len(heads) == 1:
        return EquilateralWitness(heads.pop(), 1)
    if len(tails) == 1:
        return EquilateralWitness(tails.pop(), -1)
    raise MalformedInput("equilateral family without a common point")


def adjoint(T):
    """Adjoint of ``T`` acting on sum-zero weight vectors.

    ``T`` acts on sum-zero representatives; the pairing is the dot product,
    so ``T* m = P T^t m`` with ``P`` the projection onto sum-zero vectors.
    """
    T = np.asarray(T, dtype=float)
    n = T.shape[0]
    P = np.eye(n) - 1.0 / n
    return P @ T.T @ P


def recover_eps_theta(T, n):
    """``(eps, theta)`` of a linear variation-norm isometry ``T``.

    For ``n = 2`` the sign and the swap act identically; the convention
    ``eps = +1`` is used there.
    """
    T = np.asarray(T, dtype=float)
    if T.shape != (n, n):
        raise MalformedInput(f"expected an {n}x{n} matrix")
    Ts = adjoint(T)
    images = {}
    for s in range(n):
        for t in range(n):
            if s != t:
                st = match_dirac_difference(Ts @ dirac_difference(n, s, t))
                if st is None:
                    raise NotIsometricIsomorphism(
                        f"adjoint image of delta_{s} - delta_{t} is not a difference of point masses"
                    )
                images[s, t] = st
    theta = []
    signs = set()
    for s in range(n):
        imgs = [images[s, t] for t in range(n) if t != s]
        heads = {a for a, _ in imgs}
        tails = {b for _, b in imgs}
        options = []
        if len(heads) == 1:
            options.append((1, heads.pop()))
        if len(tails) == 1:
            options.append((-1, tails.pop()))
        if not options:
            raise NotIsometricIsomorphism(f"E_{s} is not mapped onto a family +-E_r")
        sign, r = options[0]
        signs.add(sign)
        theta.append(r)
    if len(signs) > 1:
        raise InconsistentSign("families E_s map with mixed signs")
    eps = signs.pop()
    if sorted(theta) != list(range(n)):
        raise NotIsometricIsomorphism("induced map on K is not a bijection")
    for i in range(n):
        e = canonical(np.eye(n)[i])
        if not np.allclose(canonical(T @ e), canonical(eps * e[theta]), atol=PATTERN_TOL, rtol=0):
            raise NotIsometricIsomorphism("T does not act as eps * q[theta]")
    return eps, tuple(theta)


def _isometry_defect(k, h, rng, n_pairs):
    worst = 0.0
    for _ in range(n_pairs):
        p = exp_map(k, rng.normal(0.0, 1.0, k.n))
        q = exp_map(k, rng.normal(0.0, 1.0, k.n))
        d = simplex_dist(k, p, q)
        e = simplex_dist(k, delta_point(k, h(p)), delta_point(k, h(q)))
        worst = max(worst, abs(d - e) / max(1.0, d))
    return worst


def log_coordinates(k, h):
    """``h`` transported to Log coordinates, ``q -> Log h(Exp q)``."""
    return lambda q: log_map(delta_point(k, h(exp_map(k, q))))


def recover_simplex_isometry(k, h, rng=None, n_checks=16):
    """Recover ``(eps, theta, g)`` from a black-box simplex isometry ``h``.

    In Log coordinates ``h`` is affine; the translation part is the image
    of the origin and the linear part is evaluated on the canonical basis,
    then decoded by :func:`recover_eps_theta`.  The gauge is the image of
    the constant point.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    n = k.n
    defect = _isometry_defect(k, h, rng, n_checks)
    if defect > ISOMETRY_TOL:
        raise NotIsometry(f"distance defect {defect:.3e}")
    H = log_coordinates(k, h)
    v = H(np.zeros(n))

    def L(q):
        return H(q) - v

    T = np.column_stack([L(canonical(np.eye(n)[i])) for i in range(n)])
    for _ in range(n_checks):
        q1 = canonical(rng.normal(0.0, 1.0, n))
        q2 = canonical(rng.normal(0.0, 1.0, n))
        a, b = rng.normal(0.0, 1.0, 2)
        res = np.max(np.abs(L(a * q1 + b * q2) - a * L(q1) - b * L(q2)))
        if res > AFFINE_TOL * max(1.0, abs(a) + abs(b)):
            raise NotAffineInLog(f"linearity residual {res:.3e}")
    eps, theta = recover_eps_theta(T, n)
    g = delta_point(k, h(exp_map(k, np.zeros(n))))
    return make_isometry(k, eps, theta, g)


def reproduction_defect(k, h, recovered, rng, n_samples=1000):
    """Largest ``simplex_dist(h(p), recovered(p))`` over random ``p``."""
    worst = 0.0
    for _ in range(n_samples):
        p = exp_map(k, rng.normal(0.0, 1.0, k.n))
        worst = max(worst, simplex_dist(k, delta_point(k, h(p)), isometry_apply(k, recovered, p)))
    return worst


def log_affine_oracle(k, matrix, offset):
    """Black box acting in Log coordinates as ``q -> matrix @ q + offset``."""
    M = np.asarray(matrix, dtype=float)
    v = np.asarray(offset, dtype=float)

    def h(p):
        q = log_map(delta_point(k, p))
        return exp_map(k, M @ q + v)

    return h
