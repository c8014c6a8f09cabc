# Distances in the Klein model of the hyperbolic plane.
#
# The open unit disk, lifted to the ice-cream cone in R^3, carries the
# Hilbert metric.  Along a diameter this is log((1 + r) / (1 - r)), twice the
# usual hyperbolic distance in the Klein normalisation.
import numpy as np

from hilbertgeom import convexset, cones

disk = convexset.Ball(1.0, 2)
space = convexset.lift(disk)
print("lifted cone:", space.cone)

center = convexset.embed([0.0, 0.0])
for r in (0.1, 0.5, 0.9, 0.99):
    p = convexset.embed([r, 0.0])
    d = cones.hilbert_dist(space, center, p)
    print(f"r = {r:5.2f}  d_H = {d:.12f}  log((1+r)/(1-r)) = {np.log((1 + r) / (1 - r)):.12f}")

# The cross-ratio along the chord gives the same number.
x = convexset.embed([0.3, -0.2])
y = convexset.embed([-0.5, 0.4])
chord = cones.chord_endpoints(space, x, y)
print("chord end points:", chord.x_prime, chord.y_prime)
print("cross-ratio distance:", cones.cross_ratio_dist(space, x, y))
print("gauge distance:      ", cones.hilbert_dist(space, x, y))

# Thompson's metric lives on the cone itself and sees scaling.
print("d_T(x, 2x) =", cones.thompson_dist(space, x, 2 * x), "while d_H(x, 2x) =", cones.hilbert_dist(space, x, 2 * x))

# A polygon behaves similarly, with straight but non-unique geodesics.
hexagon = convexset.Polytope([[np.cos(a), np.sin(a)] for a in np.arange(6) * np.pi / 3])
print("hexagon facets:\n", hexagon.facets)
print("hexagon distance:", convexset.body_dist(hexagon, [0.0, 0.0], [0.5, 0.0]))
