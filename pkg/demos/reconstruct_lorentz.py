# Recovering a matrix from a black-box Hilbert isometry of the Klein ball.
#
# We hide a Lorentz transformation L behind an oracle that only returns
# normalised points of the cross section, then rebuild a matrix T with
# [T x] = f(x) using chord base changes, one basis direction at a time.
import numpy as np

from hilbertgeom import collineation, cones

rng = np.random.default_rng(7)
n = 5
space = cones.standard_space(cones.Lorentz(n))

L = collineation.random_lorentz(n, rng, max_rapidity=1.2)
oracle = collineation.IsometryOracle.from_matrix(L, space)
del L  # the reconstruction only sees the oracle

T = collineation.reconstruct_linear(space, space, oracle, rng=rng)
report = collineation.verify_projective_linearity(oracle, T, rng=rng)
print("reconstructed T:\n", np.round(T, 6))
print("report:", report.to_dict())

# Compare with the hidden matrix up to a positive scalar.
L = oracle.matrix
c = np.sum(T * L) / np.sum(T * T)
print("scalar:", c, " relative error:", np.linalg.norm(c * T - L) / np.linalg.norm(L))

# T extends to the boundary sphere, matching radial limits of the oracle.
theta = rng.normal(size=n - 1)
x = np.r_[1.0, theta / np.linalg.norm(theta)]
print("boundary image:", collineation.extend_to_boundary(T, space, space, x))
print("radial defects:", collineation.radial_limit_defects(oracle, T, x))

# A map that is not an isometry is refused before any reconstruction.
def squeeze(x):
    y = x / x[0]
    return np.r_[1.0, y[1:] * (0.5 + 0.5 * np.linalg.norm(y[1:]))]

try:
    collineation.reconstruct_linear(space, space, collineation.IsometryOracle(squeeze, space))
except Exception as exc:
    print("rejected:", type(exc).__name__, exc)
