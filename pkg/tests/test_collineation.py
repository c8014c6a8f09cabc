import numpy as np
import pytest

from hilbertgeom import cones, collineation
from hilbertgeom.collineation import IsometryOracle, lorentz_boost, lorentz_rotation
from hilbertgeom.cones import Lorentz, Orthant, standard_space
from hilbertgeom.errors import DependentDirection, NotBiPositive, NotIsometry

LOR3 = standard_space(Lorentz(3))
LOR4 = standard_space(Lorentz(4))


def up_to_scalar(T, L):
    c = np.sum(T * L) / np.sum(T * T)
    return c, np.linalg.norm(c * T - L) / np.linalg.norm(L)


def squeeze(x):
    """Radial reparametrisation of the Klein disk; not an isometry."""
    y = x / x[0]
    r = np.linalg.norm(y[1:])
    return np.r_[1.0, y[1:] * (0.5 + 0.5 * r)]


def test_lorentz_group_elements_preserve_form():
    rng = np.random.default_rng(0)
    J = np.diag([1.0, -1.0, -1.0, -1.0])
    for L in (lorentz_rotation(4, 0.7), lorentz_boost(4, 1.3), collineation.random_lorentz(4, rng)):
        np.testing.assert_allclose(L.T @ J @ L, J, atol=1e-12)
        assert L[0, 0] > 0


def test_base_change_reproduces_rotation_on_chord():
    f = IsometryOracle.from_matrix(lorentz_rotation(3, np.pi / 6), LOR3)
    x, y = np.array([1.0, 0, 0]), np.array([1.0, 0.3, 0])
    S = collineation.base_change(LOR3, LOR3, f, x, y)
    np.testing.assert_allclose(S(x), f(x), atol=1e-12)
    ch = cones.chord_endpoints(LOR3, x, y)
    for w in np.linspace(0.05, 0.95, 10):
        z = w * ch.x_prime + (1 - w) * ch.y_prime
        assert cones.hilbert_dist(LOR3, S(z), f(z)) <= 1e-8


def test_base_change_identity_is_scalar():
    f = IsometryOracle.from_matrix(np.eye(3), LOR3)
    x, y = np.array([1.0, 0.1, 0.2]), np.array([1.0, -0.3, 0.4])
    S = collineation.base_change(LOR3, LOR3, f, x, y)
    for z in (x, y, 0.3 * x + 0.7 * y):
        v = S(z)
        c = (v @ z) / (z @ z)
        np.testing.assert_allclose(v, c * z, atol=1e-12)


def test_extend_collineation_rejects_dependent_direction():
    f = IsometryOracle.from_matrix(lorentz_boost(3, 0.4), LOR3)
    partial = collineation.PartialLinearMap.start(f, LOR3.u)
    z = np.array([1.0, 0.1, 0.0])
    partial = collineation.extend_collineation(partial, z, f)
    with pytest.raises(DependentDirection):
        collineation.extend_collineation(partial, 0.5 * LOR3.u + 0.5 * z, f)


def test_extend_collineation_agrees_with_matrix():
    L = lorentz_boost(4, 0.6, axis=2) @ lorentz_rotation(4, 0.3, (1, 3))
    f = IsometryOracle.from_matrix(L, LOR4)
    partial = collineation.PartialLinearMap.start(f, LOR4.u)
    partial = collineation.extend_collineation(partial, [1.0, 0.2, 0.0, 0.0], f)
    partial = collineation.extend_collineation(partial, [1.0, 0.0, 0.1, 0.3], f)
    c = None
    for y in partial.basis:
        v = partial(y)
        ratio = (v @ (L @ y)) / (v @ v)
        c = ratio if c is None else c
        np.testing.assert_allclose(c * v, L @ y, rtol=1e-8, atol=1e-12)


@pytest.mark.parametrize("L", [np.eye(4), lorentz_boost(4, 0.9), lorentz_rotation(4, np.pi / 6)],
                         ids=["identity", "boost", "rotation"])
def test_reconstruct_examples(L):
    f = IsometryOracle.from_matrix(L, LOR4)
    T = collineation.reconstruct_linear(LOR4, LOR4, f)
    c, err = up_to_scalar(T, L)
    assert c > 0 and err <= 1e-6


def test_reconstruct_random_boosts_and_bipositivity():
    rng = np.random.default_rng(11)
    for n in (3, 5):
        space = standard_space(Lorentz(n))
        L = collineation.random_lorentz(n, rng, max_rapidity=1.5)
        T = collineation.reconstruct_linear(space, space, IsometryOracle.from_matrix(L, space), rng=rng)
        assert up_to_scalar(T, L)[1] <= 1e-6
        collineation.check_reconstruction_bipositive(T, space, space, rng, n=200)


def test_bipositivity_check_catches_non_isometry():
    rng = np.random.default_rng(1)
    with pytest.raises(NotBiPositive):
        collineation.check_reconstruction_bipositive(np.diag([1.0, 2.0, 0.2]), LOR3, LOR3, rng, n=200)


def test_reconstruct_on_orthant_permutation():
    # Permutations are isometries of the orthant; the reconstruction is not
    # promised there but must at least return the permutation when it works.
    space = standard_space(Orthant(3))
    P = np.eye(3)[[2, 0, 1]]
    T = collineation.reconstruct_linear(space, space, IsometryOracle.from_matrix(P, space), check=False)
    assert up_to_scalar(T, P)[1] <= 1e-6


def test_non_isometry_rejected():
    f = IsometryOracle(squeeze, LOR3)
    with pytest.raises(NotIsometry):
        collineation.reconstruct_linear(LOR3, LOR3, f)
    rep = collineation.verify_projective_linearity(f, np.eye(3))
    assert rep.is_isometry_residual > 1e-3


def test_verify_report_sensitivity():
    rng = np.random.default_rng(4)
    L = collineation.random_lorentz(4, rng)
    f = IsometryOracle.from_matrix(L, LOR4)
    rep = collineation.verify_projective_linearity(f, L, rng=rng)
    assert rep.max_residual <= 1e-10 and rep.is_isometry_residual <= 1e-10
    rep = collineation.verify_projective_linearity(f, L + 1e-3 * rng.standard_normal((4, 4)), rng=rng)
    assert rep.max_residual >= 1e-4
    assert rep.to_dict().keys() == {"max_residual", "is_isometry_residual"}


def test_boundary_extension():
    x = np.array([1.0, np.cos(0.4), np.sin(0.4)])
    np.testing.assert_allclose(collineation.extend_to_boundary(np.eye(3), LOR3, LOR3, x), x)
    B = lorentz_boost(3, 0.8)
    y = collineation.extend_to_boundary(B, LOR3, LOR3, x)
    assert cones.is_boundary(LOR3.cone, y)
    f = IsometryOracle.from_matrix(B, LOR3)
    d = collineation.radial_limit_defects(f, B, x)
    assert np.all(np.diff(d) < 0)
    assert collineation.radial_limit_consistent(f, B, x)
    # a wrong boundary extension is detected
    assert not collineation.radial_limit_consistent(f, lorentz_boost(3, 0.7), x)
