"""Double-description enumeration of extreme rays, vertices and facets.

A small incremental implementation of Motzkin's double description
method with the combinatorial adjacency test.  It is exact enough for the
desk-scale polyhedra used here (dimension <= 8, a few hundred constraints).
"""

import numpy as np

from .errors import InvalidBody, InvalidCone

DEFAULT_TOL = 1e-10


def _unit_rows(A):
    norms = np.linalg.norm(A, axis=1)
    keep = norms > 0
    return A[keep] / norms[keep, None]


def extreme_rays(A, tol=DEFAULT_TOL):
    """Extreme rays of the pointed polyhedral cone ``{x : A @ x >= 0}``.

    Parameters
    ----------
    A : (m, n) array_like
        Constraint rows.  Zero rows are ignored.
    tol : float
        Zero threshold for ``a . r`` with unit-norm ``a`` and ``r``.

    Returns
    -------
    rays : (k, n) ndarray
        Unit-norm extreme rays, sorted lexicographically.

    Raises
    ------
    InvalidCone
        If the constraint matrix does not have full column rank (the cone
        then contains a line).
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    A = _unit_rows(A)
    m, n = A.shape
    if m == 0 or np.linalg.matrix_rank(A) < n:
        raise InvalidCone("constraints do not have full rank; cone is not pointed")

    basis = []
    for i in range(m):
        if np.linalg.matrix_rank(A[basis + [i]]) == len(basis) + 1:
            basis.append(i)
            if len(basis) == n:
                break
    # columns of inv(A_K) generate the simplicial cone {A_K x >= 0}
    rays = np.linalg.inv(A[basis]).T
    rays /= np.linalg.norm(rays, axis=1)[:, None]

    processed = np.zeros(m, dtype=bool)
    processed[basis] = True
    zero = np.abs(rays @ A.T) <= tol
    zero &= processed[None, :]

    for i in range(m):
        if processed[i]:
            continue
        vals = rays @ A[i]
        pos = np.flatnonzero(vals > tol)
        neg = np.flatnonzero(vals < -tol)
        keep = np.flatnonzero(vals >= -tol)

        new_rays = [rays[keep]]
        new_zero = [zero[keep]]
        for p in pos:
            for q in neg:
                common = zero[p] & zero[q]
                if common.sum() < n - 2:
                    continue
                covers = zero[:, common].all(axis=1)
                covers[p] = covers[q] = False
                if covers.any():
                    continue
                r = vals[p] * rays[q] - vals[q] * rays[p]
                r /= np.linalg.norm(r)
                new_rays.append(r[None, :])
                new_zero.append(common[None, :])
        rays = np.vstack(new_rays)
        zero = np.vstack(new_zero)
        processed[i] = True
        zero[:, i] = np.abs(rays @ A[i]) <= tol

    rays = _dedupe(rays, tol)
    order = np.lexsort(rays.T[::-1])
    return rays[order]


def _dedupe(rows, tol):
    out = []
    for r in rows:
        if not any(np.linalg.norm(r - s) <= 1e3 * tol for s in out):
            out.append(r)
    return np.array(out)


def polytope_vertices(A, b, tol=DEFAULT_TOL):
    """Vertices of the bounded polytope ``{x : A @ x <= b}``.

    Works by homogenising to the cone ``{(x, s) : b s - A x >= 0, s >= 0}``
    and dehomogenising its extreme rays.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    m, n = A.shape
    H = np.hstack([-A, b[:, None]])
    H = np.vstack([H, np.r_[np.zeros(n), 1.0]])
    rays = extreme_rays(H, tol)
    if np.any(rays[:, -1] <= tol):
        raise InvalidBody("polytope is unbounded")
    V = rays[:, :-1] / rays[:, -1:]
    order = np.lexsort(V.T[::-1])
    return V[order]


def hull_facets(vertices, tol=DEFAULT_TOL):
    """Facets of ``conv(vertices)`` for a body with the origin inside.

    Returns
    -------
    a : (k, d) ndarray
        Facet normals normalised so the body is ``{y : a @ y <= 1}``.

    Raises
    ------
    InvalidBody
        If the hull is not full-dimensional or misses the origin.
    """
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    lifted = np.hstack([V, np.ones((V.shape[0], 1))])
    try:
        rays = extreme_rays(lifted, tol)
    except InvalidCone:
        raise InvalidBody("vertices do not span a full-dimensional body") from None
    if np.any(rays[:, -1] <= tol):
        raise InvalidBody("origin is not interior to the hull")
    return -rays[:, :-1] / rays[:, -1:]
