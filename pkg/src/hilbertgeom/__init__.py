"""Hilbert and Thompson metric geometry on finite-dimensional cones."""

from . import cli, collineation, cones, convexset, dualrecovery, polyhedra, simplexgeom
from .cones import (
    Lorentz,
    OrderUnitSpace,
    Orthant,
    PolyhedralFacets,
    cross_ratio_dist,
    hilbert_dist,
    order_unit_norm,
    standard_space,
    thompson_dist,
)
from .convexset import Ball, Polytope, body_dist, lift
from .collineation import reconstruct_linear, verify_projective_linearity
from .dualrecovery import extreme_points, recover_simplex_isometry
from .errors import HilbertGeometryError
from .simplexgeom import FiniteK, find_nonaffine_midpoint, make_isometry, simplex_dist

__version__ = "0.1.0"
