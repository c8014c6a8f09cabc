"""Hilbert geometry of the simplex over a finite set ``K = {0, ..., n-1}``.

Points are strictly positive vectors ``f`` normalised by a strictly
positive measure ``mu`` (``sum(mu * f) == 1``).  The coordinate-wise
logarithm identifies the geometry with the quotient ``R^n / R 1`` carrying
the variation norm ``max - min``; quotient vectors are stored by their
sum-zero representative.

Isometries have the form ``h(f) = g * f[theta] ** eps`` followed by
``mu``-normalisation, with ``theta[i]`` the point of ``K`` read at
coordinate ``i``.
"""

from dataclasses import dataclass

import numpy as np

from .cones import Orthant, OrderUnitSpace, hilbert_dist, is_interior, projective_point
from .errors import CoincidentPoints, DimensionMismatch, MalformedInput, OverflowGuard

EXP_LIMIT = 700.0
MIDPOINT_STEP = 1e-2
MIDPOINT_BUDGET = 10_000
MIDPOINT_MIN_OFFSET = 1e-3


@dataclass(frozen=True, eq=False)
class FiniteK:
    """Finite discrete space with a strictly positive weight vector."""

    mu: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float).reshape(-1)
        if mu.size < 1 or not np.all(mu > 0) or not np.all(np.isfinite(mu)):
            raise MalformedInput("mu must be a nonempty strictly positive vector")
        mu = mu.copy()
        mu.flags.writeable = False
        object.__setattr__(self, "mu", mu)

    @property
    def n(self):
        return self.mu.size

    @classmethod
    def uniform(cls, n):
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def dyadic(cls, n):
        """Weights ``2^-(i+1)``, a truncation of the infinite simplex."""
        return cls(0.5 ** np.arange(1, n + 1))

    def to_dict(self):
        return {"n": self.n, "mu": self.mu.tolist()}

    @classmethod
    def from_dict(cls, d):
        try:
            if "mu" in d:
                k = cls(d["mu"])
                if "n" in d and int(d["n"]) != k.n:
                    raise MalformedInput("n does not match the length of mu")
                return k
            return cls.uniform(int(d["n"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad K description: {exc}") from None


def simplex_space(k):
    """The orthant with state ``mu``; its cross section is the simplex."""
    return OrderUnitSpace(Orthant(k.n), np.full(k.n, 1.0 / k.mu.sum()), k.mu)


def _check_len(k, v):
    v = np.asarray(v, dtype=float)
    if v.shape != (k.n,):
        raise DimensionMismatch(f"expected length {k.n}, got shape {v.shape}")
    return v


def delta_point(k, f):
    """Normalise a strictly positive vector so that ``sum(mu * f) == 1``."""
    f = _check_len(k, f)
    if not np.all(f > 0):
        raise MalformedInput("simplex points must be strictly positive")
    return f / (k.mu @ f)


def canonical(v):
    """Sum-zero representative of ``v`` modulo constants."""
    v = np.asarray(v, dtype=float)
    return v - v.mean()


def log_map(p):
    return canonical(np.log(p))


def exp_map(k, q):
    q = canonical(_check_len(k, q))
    if q.max() > EXP_LIMIT:
        raise OverflowGuard(
            f"representative reaches {q.max():.1f} > {EXP_LIMIT}; rescale the input"
        )
    return delta_point(k, np.exp(q))


def variation_norm(q):
    q = np.asarray(q, dtype=float)
    return float(q.max() - q.min())


def quotient_norm_oracle(q):
    """Twice the distance from ``q`` to the constants in the sup norm.

    The minimising constant is the midrange ``(max + min) / 2``.
    """
    q = np.asarray(q, dtype=float)
    lam = 0.5 * (q.max() + q.min())
    return float(2.0 * np.max(np.abs(q - lam)))


def simplex_dist(k, p, q):
    p = _check_len(k, p)
    q = _check_len(k, q)
    return variation_norm(log_map(p) - log_map(q))


@dataclass(frozen=True, eq=False)
class SimplexIsometry:
    """The isometry ``f -> g * f[theta] ** eps`` (then normalised).

    Build instances with :func:`make_isometry` to obtain the canonical
    gauge ``sum(mu * g) == 1``.
    """

    eps: int
    theta: tuple
    g: np.ndarray

    @property
    def n(self):
        return len(self.theta)

    def to_dict(self):
        return {"eps": int(self.eps), "theta": list(self.theta), "g": self.g.tolist()}


def make_isometry(k, eps=1, theta=None, g=None):
    n = k.n
    if eps not in (1, -1):
        raise MalformedInput("eps must be +1 or -1")
    theta = tuple(range(n)) if theta is None else tuple(int(i) for i in theta)
    if sorted(theta) != list(range(n)):
        raise MalformedInput(f"theta is not a permutation of 0..{n - 1}")
    g = np.ones(n) if g is None else _check_len(k, g)
    g = delta_point(k, g)
    g.flags.writeable = False
    return SimplexIsometry(int(eps), theta, g)


def isometry_from_dict(k, d):
    try:
        return make_isometry(k, int(d["eps"]), d["theta"], d["g"])
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad isometry description: {exc}") from None


def identity(k):
    return make_isometry(k)


def translation(k, v):
    """Isometry acting in Log coordinates as ``q -> q + v``."""
    return make_isometry(k, 1, None, np.exp(canonical(_check_len(k, v))))


def _same_k(k, *hs):
    for h in hs:
        if h.n != k.n:
            raise DimensionMismatch(f"isometry on {h.n} points used with |K| = {k.n}")


def isometry_apply(k, h, p):
    _same_k(k, h)
    p = _check_len(k, p)
    theta = np.asarray(h.theta)
    return delta_point(k, h.g * p[theta] ** h.eps)


def isometry_compose(k, h2, h1):
    """The isometry ``p -> h2(h1(p))``.

    ``g = g2 * g1[theta2] ** eps2``, ``theta = theta1[theta2]``,
    ``eps = eps1 * eps2``.
    """
    _same_k(k, h1, h2)
    t1 = np.asarray(h1.theta)
    t2 = np.asarray(h2.theta)
    g = h2.g * h1.g[t2] ** h2.eps
    return make_isometry(k, h1.eps * h2.eps, t1[t2], g)


def isometry_inverse(k, h):
    _same_k(k, h)
    inv = np.argsort(h.theta)
    return make_isometry(k, h.eps, inv, h.g[inv] ** (-h.eps))


def isometries_equal(h1, h2, rtol=1e-12):
    return (
        h1.eps == h2.eps
        and h1.theta == h2.theta
        and np.allclose(h1.g, h2.g, rtol=rtol, atol=0.0)
    )


def quotient_linear_isometry_apply(eps, theta, q):
    """Linear part in Log coordinates: ``q -> eps * q[theta]``."""
    q = np.asarray(q, dtype=float)
    return canonical(eps * q[np.asarray(theta)])


def to_affine(h):
    """``(v, eps, theta)`` with ``Log h(p) = eps * Log(p)[theta] + v``."""
    return log_map(h.g), h.eps, h.theta


def linear_parts_coincide(n, eps1, theta1, eps2, theta2, atol=1e-12):
    """Whether two linear isometries agree on every basis vector of the quotient."""
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        a = quotient_linear_isometry_apply(eps1, theta1, e)
        b = quotient_linear_isometry_apply(eps2, theta2, e)
        if not np.allclose(a, b, atol=atol, rtol=0.0):
            return False
    return True


def chord_midpoint(k, p, q):
    """Point of the straight segment ``[p, q]`` at half the distance from each end."""
    p = delta_point(k, p)
    q = delta_point(k, q)
    d = simplex_dist(k, p, q)
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if simplex_dist(k, p, (1 - mid) * p + mid * q) < 0.5 * d:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-17:
            break
    return (1 - lo) * p + lo * q


def _feasible_extent(feasible, step, limit):
    """Largest ``s`` in ``[0, limit]`` with ``feasible(s)``, assuming an interval."""
    s = 0.0
    while s + step <= limit and feasible(s + step):
        s += step
    lo, hi = s, min(s + step, limit)
    if feasible(hi):
        return hi
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo


def find_nonaffine_midpoint(k, p, q, step=MIDPOINT_STEP, budget=MIDPOINT_BUDGET):
    """Search for a metric midpoint of ``p`` and ``q`` off the straight chord.

    In Log coordinates the midpoint set is the intersection of the two
    variation-norm balls of radius ``d/2`` about the end points, a convex
    polytope.  Starting from the chord midpoint, each coordinate direction
    is walked in steps of ``step`` (at most ``budget`` candidates in all)
    and the last feasible step is refined by bisection; feasible offsets are
    accumulated coordinate by coordinate.

    Returns
    -------
    ndarray or None
        A midpoint at least ``1e-3`` from the chord midpoint, or ``None``
        when the search finds none (a grid certificate, not a proof).
    """
    p = delta_point(k, p)
    q = delta_point(k, q)
    a, b = log_map(p), log_map(q)
    d = variation_norm(a - b)
    if d < 1e-12:
        raise CoincidentPoints("end points coincide")
    if k.n < 2:
        return None
    c = log_map(chord_midpoint(k, p, q))
    half = 0.5 * d
    slack = 1e-12 * max(1.0, d)

    def inside(m):
        return variation_norm(m - a) <= half + slack and variation_norm(b - m) <= half + slack

    limit = min(d, budget * step / (2 * k.n))
    best = c
    best_off = 0.0
    m = c.copy()
    for j in range(k.n):
        for sign in (1.0, -1.0):
            e = np.zeros(k.n)
            e[j] = sign
            s = _feasible_extent(lambda s: inside(m + s * e), step, limit)
            cand = m + s * e
            off = variation_norm(cand - c)
            if off > best_off:
                best, best_off = cand, off
        m = best
    if best_off < MIDPOINT_MIN_OFFSET:
        return None
    return exp_map(k, best)


def cone_midpoint_search(space, x, y, step=MIDPOINT_STEP, radius=0.2, tol=1e-9):
    """Grid search for approximate midpoints of ``x, y`` in a cone cross section.

    Candidates are ``m0 + step * (i e_a + j e_b)`` for every pair of
    coordinate directions within ``radius`` of the chord midpoint ``m0``,
    projected back to the cross section.  Returns the largest Euclidean
    distance from ``m0`` among candidates whose two half-distances match
    ``d/2`` within ``tol``.
    """
    x = projective_point(space, x)
    y = projective_point(space, y)
    d = hilbert_dist(space, x, y)
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hilbert_dist(space, x, (1 - mid) * x + mid * y) < 0.5 * d:
            lo = mid
        else:
            hi = mid
    m0 = (1 - lo) * x + lo * y
    n = space.dim
    r = int(round(radius / step))
    worst = 0.0
    for a in range(n):
        for b in range(a + 1, n):
            for i in range(-r, r + 1):
                for j in range(-r, r + 1):
                    m = m0.copy()
                    m[a] += i * step
                    m[b] += j * step
                    if not is_interior(space.cone, m):
                        continue
                    m = m / space.state(m)
                    if (abs(hilbert_dist(space, x, m) - 0.5 * d) <= tol
                            and abs(hilbert_dist(space, m, y) - 0.5 * d) <= tol):
                        worst = max(worst, float(np.linalg.norm(m - m0)))
    return worst
