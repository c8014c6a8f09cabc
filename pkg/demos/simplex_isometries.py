# The isometry group of the Hilbert simplex over a finite set.
#
# Isometries are h(p) = g * p[theta]**eps, normalised.  In Log coordinates
# the geometry is the variation norm max - min, whose unit ball is a
# polytope, so geodesics are not unique once |K| >= 3.
import numpy as np

from hilbertgeom import dualrecovery, simplexgeom as sg

rng = np.random.default_rng(3)
k = sg.FiniteK.uniform(6)

h = sg.make_isometry(k, eps=-1, theta=rng.permutation(6), g=np.exp(rng.normal(size=6)))
print("hidden isometry:", h.to_dict())

# Treat h as a black box and recover (eps, theta, g) from dual extreme points.
def oracle(p):
    return sg.isometry_apply(k, h, p)

rec = dualrecovery.recover_simplex_isometry(k, oracle, rng=rng)
print("recovered:      ", rec.to_dict())
print("equal:", sg.isometries_equal(rec, h))
print("reproduction defect:", dualrecovery.reproduction_defect(k, oracle, rec, rng, 200))

# Dual unit ball: the extreme points are differences of two point masses.
E = dualrecovery.extreme_points(4)
print(len(E), "extreme points for |K| = 4, first few:\n", E[:4])

# Group laws.
a, b = (sg.make_isometry(k, 1, rng.permutation(6), np.exp(rng.normal(size=6))) for _ in range(2))
ab = sg.isometry_compose(k, a, b)
print("a o a^-1 is identity:", sg.isometries_equal(sg.isometry_compose(k, a, sg.isometry_inverse(k, a)), sg.identity(k)))
print("composition:", ab.to_dict())

# On two points, inversion and the swap coincide.
print("collapse on |K| = 2:", sg.linear_parts_coincide(2, -1, (0, 1), 1, (1, 0)))

# Non-unique midpoints on three points.
k3 = sg.FiniteK.uniform(3)
p = sg.delta_point(k3, [1.0, 1.0, 1.0])
q = sg.delta_point(k3, [1.0, 2.0, 4.0])
m = sg.find_nonaffine_midpoint(k3, p, q)
c = sg.chord_midpoint(k3, p, q)
d = sg.simplex_dist(k3, p, q)
print("d(p, q) / 2 =", d / 2)
print("off-chord midpoint", m, "distances", sg.simplex_dist(k3, p, m), sg.simplex_dist(k3, m, q))
print("its distance from the chord midpoint:", sg.simplex_dist(k3, m, c))
