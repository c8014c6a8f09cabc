import itertools

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from hilbertgeom import polyhedra
from hilbertgeom.errors import InvalidBody, InvalidCone


def brute_force_vertices(A, b, tol=1e-9):
    """Solve every n-subset of constraints as equalities and keep feasible points."""
    m, n = A.shape
    pts = []
    for rows in itertools.combinations(range(m), n):
        sub = A[list(rows)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[list(rows)])
        if np.all(A @ x <= b + tol) and not any(np.allclose(x, p) for p in pts):
            pts.append(x)
    return np.array(pts)


def test_orthant_rays_are_unit_vectors():
    R = polyhedra.extreme_rays(np.eye(3))
    assert sorted(map(tuple, np.round(R, 12))) == sorted(map(tuple, np.eye(3)))


def test_square_pyramid_has_four_rays():
    A = np.array([[1, 1, 0], [1, -1, 0], [1, 0, 1], [1, 0, -1]], dtype=float)
    R = polyhedra.extreme_rays(A)
    assert R.shape == (4, 3)
    assert np.all(A @ R.T >= -1e-12)
    np.testing.assert_allclose(np.linalg.norm(R, axis=1), 1.0)


def test_rank_deficient_cone_rejected():
    with pytest.raises(InvalidCone):
        polyhedra.extreme_rays(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))


@pytest.mark.parametrize("seed", range(5))
def test_polytope_vertices_match_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    A = rng.standard_normal((n + 4, n))
    b = np.ones(n + 4)
    A = np.vstack([A, np.eye(n), -np.eye(n)])
    b = np.r_[b, 2 * np.ones(2 * n)]
    V = polyhedra.polytope_vertices(A, b)
    W = brute_force_vertices(A, b)
    assert len(V) == len(W)
    for v in V:
        assert np.min(np.linalg.norm(W - v, axis=1)) <= 1e-9


def test_unbounded_polytope_rejected():
    with pytest.raises(InvalidBody):
        polyhedra.polytope_vertices(np.array([[1.0, 0.0], [0.0, 1.0]]), np.ones(2))


@pytest.mark.parametrize("seed", range(5))
def test_hull_facets_agree_with_qhull(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 4))
    V = rng.standard_normal((12, d))
    V -= V.mean(axis=0)
    F = polyhedra.hull_facets(V)
    hull = ConvexHull(V)
    eqs = hull.equations  # normal . y + offset <= 0
    qf = eqs[:, :-1] / -eqs[:, -1:]
    key = lambda M: sorted(map(tuple, np.round(M, 8)))  # noqa: E731
    assert key(F) == key(np.unique(np.round(qf, 8), axis=0))
    assert np.all(V @ F.T <= 1 + 1e-9)


def test_hull_missing_origin_rejected():
    with pytest.raises(InvalidBody):
        polyhedra.hull_facets(np.array([[1.0, 1.0], [2.0, 1.0], [1.0, 2.0]]))
