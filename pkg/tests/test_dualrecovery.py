import numpy as np
import pytest
from scipy.optimize import linprog

from hilbertgeom import dualrecovery as dr
from hilbertgeom import simplexgeom as sg
from hilbertgeom.errors import (
    InconsistentSign,
    MalformedInput,
    NotAffineInLog,
    NotIsometricIsomorphism,
    NotIsometry,
)


def linear_matrix(n, eps, theta):
    """Matrix of q -> canonical(eps * q[theta]) on R^n."""
    P = np.eye(n) - 1.0 / n
    return P @ (eps * np.eye(n)[list(theta)])


def dual_norm_lp(m):
    """sup { m . q : max(q) - min(q) <= 1 } by linear programming."""
    n = len(m)
    # variables q (n) and lo; q_i - lo in [0, 1]
    A_ub = np.vstack([np.hstack([np.eye(n), -np.ones((n, 1))]),
                      np.hstack([-np.eye(n), np.ones((n, 1))])])
    b_ub = np.r_[np.ones(n), np.zeros(n)]
    res = linprog(-np.r_[m, 0.0], A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * (n + 1),
                  method="highs")
    return -res.fun


def test_measure_basics():
    pos, neg = dr.hahn_jordan([1, -1, 0])
    assert pos.tolist() == [1, 0, 0] and neg.tolist() == [0, 1, 0]
    pos, neg = dr.hahn_jordan([0.5, 2.0])
    assert pos.tolist() == [0.5, 2.0] and neg.tolist() == [0, 0]
    assert dr.tv_norm(dr.dirac_difference(3, 0, 1)) == 2.0
    assert dr.tv_norm(np.zeros(3)) == 0.0


@pytest.mark.parametrize("seed", range(5))
def test_dual_norm_is_half_total_variation(seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=int(rng.integers(2, 10)))
    m -= m.mean()
    assert dual_norm_lp(m) == pytest.approx(0.5 * dr.tv_norm(m), rel=1e-9)


def test_extreme_point_examples():
    assert sorted(map(tuple, dr.extreme_points(2))) == [(-1, 1), (1, -1)]
    assert len(dr.extreme_points(5)) == 20
    E = dr.extreme_points(3)
    V = dr.enumerate_dual_ball_vertices(3)
    assert sorted(map(tuple, E)) == sorted(map(tuple, V))
    for e in E:
        assert dual_norm_lp(e) == pytest.approx(1.0)
    with pytest.raises(MalformedInput):
        dr.extreme_points(1)


def test_equilateral_examples():
    d = dr.dirac_difference
    assert dr.equilateral_witness([d(3, 0, 1), d(3, 0, 2)]) == dr.EquilateralWitness(0, 1)
    assert dr.equilateral_witness([d(3, 1, 0), d(3, 2, 0)]) == dr.EquilateralWitness(0, -1)
    res = dr.equilateral_witness([d(4, 0, 1), d(4, 2, 3)])
    assert isinstance(res, dr.NotEquilateral) and res.distance == pytest.approx(2.0)
    with pytest.raises(MalformedInput):
        dr.equilateral_witness([np.array([1.0, 1.0, -2.0])])


def test_recover_eps_theta_examples():
    assert dr.recover_eps_theta(np.eye(4), 4) == (1, (0, 1, 2, 3))
    assert dr.recover_eps_theta(-np.eye(4), 4) == (-1, (0, 1, 2, 3))
    rng = np.random.default_rng(0)
    for n in (3, 7, 20, 64):
        eps, theta = int(rng.choice([-1, 1])), tuple(int(i) for i in rng.permutation(n))
        assert dr.recover_eps_theta(linear_matrix(n, eps, theta), n) == (eps, theta)


def test_recover_eps_theta_two_points_convention():
    # eps = -1 with theta = id and eps = +1 with the swap are the same map
    assert dr.recover_eps_theta(linear_matrix(2, -1, (0, 1)), 2) == (1, (1, 0))


def test_recover_eps_theta_rejects_non_isometries():
    with pytest.raises(NotIsometricIsomorphism):
        dr.recover_eps_theta(2.0 * np.eye(3), 3)
    with pytest.raises(MalformedInput):
        dr.recover_eps_theta(np.eye(3), 4)


def test_coordinate_sign_flip_rejected():
    # negating a single coordinate is not a variation-norm isometry
    with pytest.raises((InconsistentSign, NotIsometricIsomorphism)):
        dr.recover_eps_theta(np.diag([1.0, -1.0, 1.0]), 3)


def test_recover_identity_and_reciprocal():
    k = sg.FiniteK.uniform(5)
    rec = dr.recover_simplex_isometry(k, lambda p: p)
    assert sg.isometries_equal(rec, sg.identity(k))
    rec = dr.recover_simplex_isometry(k, lambda p: 1.0 / p)
    assert rec.eps == -1 and rec.theta == tuple(range(5))
    np.testing.assert_allclose(rec.g, np.ones(5), rtol=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_recover_round_trip(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 33))
    k = sg.FiniteK(rng.uniform(0.1, 1.0, n))
    h = sg.make_isometry(k, int(rng.choice([-1, 1])), rng.permutation(n), np.exp(rng.normal(size=n)))
    rec = dr.recover_simplex_isometry(k, lambda p: sg.isometry_apply(k, h, p), rng=rng)
    assert rec.eps == h.eps and rec.theta == h.theta
    np.testing.assert_allclose(rec.g, h.g, rtol=1e-10)


def test_log_affine_oracle_recovery():
    k = sg.FiniteK.uniform(4)
    M = linear_matrix(4, -1, (1, 2, 3, 0))
    v = np.array([0.1, -0.4, 0.2, 0.1])
    h = dr.log_affine_oracle(k, M, v)
    rec = dr.recover_simplex_isometry(k, h)
    assert (rec.eps, rec.theta) == (-1, (1, 2, 3, 0))
    rng = np.random.default_rng(0)
    assert dr.reproduction_defect(k, h, rec, rng, 100) <= 1e-10


def test_non_isometries_rejected():
    k = sg.FiniteK.uniform(4)
    with pytest.raises(NotIsometry):
        dr.recover_simplex_isometry(k, lambda p: p**2)
    # distance preserving on random samples but not affine: a reflection in
    # the Log coordinates that depends on the sign of one coordinate
    def folded(p):
        q = sg.log_map(p)
        return sg.exp_map(k, q if q[0] >= 0 else -q)

    with pytest.raises((NotAffineInLog, NotIsometry, NotIsometricIsomorphism)):
        dr.recover_simplex_isometry(k, folded)
