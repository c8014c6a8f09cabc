"""Command-line front end: JSON in, JSON out.

Exit codes: 0 on success, 1 on domain errors, 2 on I/O or parse errors.
Errors are reported on stdout as ``{"error": {"kind": ..., "detail": ...}}``.
Input and output schemas are documented in ``docs/schemas.md``.
"""

import argparse
import json
import sys

import numpy as np

from . import collineation, cones, convexset, dualrecovery, simplexgeom
from .errors import HilbertGeometryError

DEFAULT_TOL = 1e-9


class InputError(Exception):
    """Malformed JSON or a missing field; mapped to exit code 2."""


def _get(data, key, default=InputError):
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    if key in data:
        return data[key]
    if default is InputError:
        raise InputError(f"missing field {key!r}")
    return default


def _floats(v):
    return [float(a) for a in np.asarray(v, dtype=float).reshape(-1)]


def _space(data, key="space"):
    return cones.OrderUnitSpace.from_dict(_get(data, key))


def _spaces(data):
    if "space" in data:
        s = _space(data)
        return s, s
    s1 = _space(data, "space1")
    s2 = _space(data, "space2") if "space2" in data else s1
    return s1, s2


def _oracle(spec, s1, s2):
    if "matrix" in spec:
        return collineation.IsometryOracle.from_matrix(spec["matrix"], s1, s2)
    family = _get(spec, "family")
    n = s1.dim
    if family == "rotation":
        L = collineation.lorentz_rotation(n, float(_get(spec, "angle")), tuple(spec.get("plane", (1, 2))))
    elif family == "boost":
        L = collineation.lorentz_boost(n, float(_get(spec, "rapidity")), int(spec.get("axis", 1)))
    else:
        raise InputError(f"unknown oracle family {family!r}")
    return collineation.IsometryOracle.from_matrix(L, s1, s2)


def cmd_dist(data, args):
    s = _space(data)
    return {"d_H": cones.hilbert_dist(s, _get(data, "x"), _get(data, "y"))}


def cmd_tdist(data, args):
    s = _space(data)
    return {"d_T": cones.thompson_dist(s, _get(data, "x"), _get(data, "y"))}


def cmd_chord(data, args):
    s = _space(data)
    ch = cones.chord_endpoints(s, _get(data, "x"), _get(data, "y"))
    return {"x_prime": _floats(ch.x_prime), "y_prime": _floats(ch.y_prime), "t": ch.t}


def cmd_lift(data, args):
    body = convexset.body_from_dict(_get(data, "body"))
    return convexset.lift(body).to_dict()


def cmd_body_dist(data, args):
    body = convexset.body_from_dict(_get(data, "body"))
    return {"delta_H": convexset.body_dist(body, _get(data, "p"), _get(data, "q"))}


def cmd_norm(data, args):
    s = _space(data)
    return {"norm": cones.order_unit_norm(s, _get(data, "x"))}


def cmd_reconstruct(data, args):
    s1, s2 = _spaces(data)
    f = _oracle(_get(data, "oracle"), s1, s2)
    rng = np.random.default_rng(args.seed)
    T = collineation.reconstruct_linear(s1, s2, f, rng=rng)
    report = collineation.verify_projective_linearity(f, T, rng=rng)
    out = {"T": [_floats(row) for row in T], "report": report.to_dict()}
    out["within_tolerance"] = report.max_residual <= args.tolerance
    return out


def cmd_verify(data, args):
    s1, s2 = _spaces(data)
    f = _oracle(_get(data, "oracle"), s1, s2)
    T = np.asarray(_get(data, "T"), dtype=float)
    rng = np.random.default_rng(args.seed)
    n = int(data.get("n_samples", 64))
    report = collineation.verify_projective_linearity(f, T, n_samples=n, rng=rng)
    out = report.to_dict()
    out["within_tolerance"] = max(report.max_residual, report.is_isometry_residual) <= args.tolerance
    return out


def _k(data):
    return simplexgeom.FiniteK.from_dict(_get(data, "K"))


def cmd_sdist(data, args):
    k = _k(data)
    p = simplexgeom.delta_point(k, _get(data, "p"))
    q = simplexgeom.delta_point(k, _get(data, "q"))
    return {"d_H": simplexgeom.simplex_dist(k, p, q)}


def _iso(k, data, key):
    return simplexgeom.isometry_from_dict(k, _get(data, key))


def cmd_iso_apply(data, args):
    k = _k(data)
    h = _iso(k, data, "isometry")
    p = simplexgeom.delta_point(k, _get(data, "p"))
    return {"point": _floats(simplexgeom.isometry_apply(k, h, p))}


def cmd_iso_compose(data, args):
    k = _k(data)
    h = simplexgeom.isometry_compose(k, _iso(k, data, "h2"), _iso(k, data, "h1"))
    return h.to_dict()


def cmd_iso_invert(data, args):
    k = _k(data)
    return simplexgeom.isometry_inverse(k, _iso(k, data, "isometry")).to_dict()


def cmd_recover(data, args):
    k = _k(data)
    if "isometry" in data:
        target = _iso(k, data, "isometry")

        def h(p):
            return simplexgeom.isometry_apply(k, target, p)
    else:
        h = dualrecovery.log_affine_oracle(k, _get(data, "log_matrix"), _get(data, "log_offset"))
    rng = np.random.default_rng(args.seed)
    rec = dualrecovery.recover_simplex_isometry(k, h, rng=rng)
    residual = dualrecovery.reproduction_defect(k, h, rec, rng, n_samples=100)
    return {
        "isometry": rec.to_dict(),
        "residual": residual,
        "within_tolerance": residual <= args.tolerance,
    }


def cmd_midpoint(data, args):
    k = _k(data)
    p = simplexgeom.delta_point(k, _get(data, "p"))
    q = simplexgeom.delta_point(k, _get(data, "q"))
    m = simplexgeom.find_nonaffine_midpoint(k, p, q)
    if m is None:
        return {"found": False, "midpoint": None}
    c = simplexgeom.chord_midpoint(k, p, q)
    return {
        "found": True,
        "midpoint": _floats(m),
        "offset": simplexgeom.simplex_dist(k, m, c),
    }


def cmd_extreme_points(data, args):
    n = args.n if args.n is not None else int(_get(data, "n"))
    E = dualrecovery.extreme_points(n)
    return {"n": n, "count": len(E), "measures": [[int(v) for v in row] for row in E]}


COMMANDS = {
    "dist": (cmd_dist, "Hilbert (Birkhoff) distance of two cone points"),
    "tdist": (cmd_tdist, "Thompson distance of two cone points"),
    "chord": (cmd_chord, "chord end points through two points"),
    "lift": (cmd_lift, "order-unit space over a convex body"),
    "body-dist": (cmd_body_dist, "Hilbert distance inside a convex body"),
    "norm": (cmd_norm, "order-unit norm of a vector"),
    "reconstruct": (cmd_reconstruct, "recover the matrix behind an isometry oracle"),
    "verify": (cmd_verify, "compare an oracle with a candidate matrix"),
    "sdist": (cmd_sdist, "Hilbert distance on a finite simplex"),
    "iso-apply": (cmd_iso_apply, "apply a simplex isometry"),
    "iso-compose": (cmd_iso_compose, "compose two simplex isometries (h2 after h1)"),
    "iso-invert": (cmd_iso_invert, "invert a simplex isometry"),
    "recover": (cmd_recover, "recover (eps, theta, g) from a black-box isometry"),
    "midpoint": (cmd_midpoint, "search for a midpoint off the straight chord"),
    "extreme-points": (cmd_extreme_points, "extreme points of the dual unit ball"),
}

NO_INPUT = {"extreme-points"}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="input JSON file ('-' for stdin)")
    common.add_argument("--output", default="-", help="output file ('-' for stdout)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling operations")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOL)

    parser = argparse.ArgumentParser(prog="hilbertgeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "extreme-points":
            p.add_argument("--n", type=int, default=None)
    return parser


def _read_input(args):
    if args.command in NO_INPUT and args.input == "-" and args.n is not None:
        return {}
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    return json.loads(text)


def _write(obj, path):
    text = json.dumps(obj) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _error(kind, detail):
    return {"error": {"kind": kind, "detail": detail}}


def run(argv=None):
    """Run the CLI and return the process exit code."""
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        data = _read_input(args)
        result = handler(data, args)
    except HilbertGeometryError as exc:
        _write(_error(exc.kind, str(exc)), "-")
        return 1
    except (InputError, json.JSONDecodeError, OSError, TypeError, ValueError, KeyError) as exc:
        _write(_error("InputError", str(exc)), "-")
        return 2
    try:
        _write(result, args.output)
    except OSError as exc:
        _write(_error("InputError", str(exc)), "-")
        return 2
    return 0


def main():
    sys.exit(run())
