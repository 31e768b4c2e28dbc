"""Command-line interface: ``polyq <subcommand> [--in FILE] [--out FILE]``.

Documents are JSON on stdin/stdout.  Exit status is 0 on success, 1 when
a well-formed request has no answer (a geometry error) and 2 when the
input cannot be understood.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
import warnings
from math import comb

from . import constructions as cons
from .errors import GeometryError
from .fan import Cone, fan_from_rays_and_cones, normal_fan
from .hull import DDStats, VRep, placing_facets, placing_triangulation, vrep_to_hrep
from .io import (
    MalformedInput,
    dumps,
    hrep_doc,
    loads,
    polyhedron_doc,
    polyhedron_from_doc,
    scalar_in,
    scalar_out,
    vector_out,
    write_off,
)
from .lp import LinearProgram, solve
from .polyhedron import Polyhedron
from .triangulation import (
    DEFAULT_MAX_POINTS,
    PointConfiguration,
    Triangulation,
    all_triangulations,
    cube_vertex_symmetries,
    explode_layout,
    gkz_vector,
    is_regular,
    orbit_decomposition,
    regular_subdivision,
    secondary_polytope,
)


def _read(args) -> object:
    if args.infile and args.infile != "-":
        with open(args.infile, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return loads(text)


def _field(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInput(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise MalformedInput(f"field {key!r} has the wrong type")
    return value


def _int_rows(rows, name) -> list:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedInput(f"{name!r} must be an array of integer arrays")
    out = []
    for r in rows:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise MalformedInput(f"{name!r} must contain integers only")
        out.append([int(x) for x in r])
    return out


def _points(doc) -> list:
    rows = _field(doc, "points", list)
    if not rows or not all(isinstance(r, list) for r in rows):
        raise MalformedInput("'points' must be a nonempty array of arrays")
    return [tuple(scalar_in(x) for x in r) for r in rows]


def _one_based_cells(rows, n) -> Triangulation:
    cells = _int_rows(rows, "triangulation")
    if any(i < 1 or i > n for c in cells for i in c):
        raise MalformedInput("triangulation indices are 1-based point labels")
    return Triangulation([[i - 1 for i in c] for c in cells])


def _pad3(points) -> list:
    return [tuple(p) + (0,) * (3 - len(p)) for p in points]


def _trial_rng_seed(seed, t: int) -> str:
    return f"{seed}:{t}"


# -- polyhedron commands ------------------------------------------------------


def cmd_hull(args):
    P = polyhedron_from_doc(_read(args))
    if args.format == "off":
        if P.ambient_dim > 3 or not P.is_bounded or P.is_empty:
            raise GeometryError("OFF export needs a nonempty polytope in dimension <= 3")
        return write_off([_pad3(P.vertices)])
    return polyhedron_doc(P)


def cmd_facets(args):
    return hrep_doc(polyhedron_from_doc(_read(args)).facets)


def cmd_fvector(args):
    return {"f": list(polyhedron_from_doc(_read(args)).f_vector())}


def cmd_hvector(args):
    return {"h": list(polyhedron_from_doc(_read(args)).h_vector())}


def cmd_gvector(args):
    return {"g": list(polyhedron_from_doc(_read(args)).g_vector())}


def cmd_volume(args):
    P = polyhedron_from_doc(_read(args))
    return {"dim": P.dim, "volume": scalar_out(P.volume()),
            "normalized_volume": scalar_out(P.normalized_volume())}


def cmd_lattice_points(args):
    pts = polyhedron_from_doc(_read(args)).lattice_points()
    return {"count": len(pts), "points": [list(p) for p in pts]}


def cmd_ehrhart(args):
    poly = polyhedron_from_doc(_read(args)).ehrhart_polynomial()
    return {"coefficients": vector_out(poly.coefficients), "polynomial": str(poly)}


def cmd_lp(args):
    doc = _read(args)
    P = polyhedron_from_doc(_field(doc, "polyhedron", dict))
    c = [scalar_in(x) for x in _field(doc, "c", list)]
    k = scalar_in(doc.get("k", 0))
    sense = doc.get("sense", "max")
    if sense not in ("max", "min"):
        raise MalformedInput("sense must be 'max' or 'min'")
    if len(c) != P.ambient_dim:
        raise MalformedInput("objective length differs from the ambient dimension")
    res = solve(LinearProgram(P, c, k, sense))
    out = {"status": res.status}
    if res.status == "optimal":
        out["value"] = scalar_out(res.value)
        out["optimizer"] = vector_out(res.optimizer)
    return out


# -- cones and fans -------------------------------------------------------


def cmd_cone(args):
    doc = _read(args)
    gens = [tuple(scalar_in(x) for x in g) for g in _field(doc, "generators", list)]
    d = doc.get("ambient_dim", len(gens[0]) if gens else None)
    if d is None:
        raise MalformedInput("ambient_dim is required for a cone without generators")
    C = Cone(gens, d)
    return {"ambient_dim": d, "dim": C.dim, "pointed": C.is_pointed,
            "rays": [list(r) for r in C.rays],
            "lineality": [vector_out(l) for l in C.lineality],
            "facet_normals": [vector_out(a) for a in C.facet_normals]}


def _fan_from_doc(doc):
    rays = [tuple(scalar_in(x) for x in r) for r in _field(doc, "rays", list)]
    cones = _int_rows(_field(doc, "maximal_cones", list), "maximal_cones")
    return fan_from_rays_and_cones(rays, cones)


def _fan_doc(F) -> dict:
    return {"ambient_dim": F.ambient_dim, "rays": [list(r) for r in F.rays],
            "maximal_cones": [list(c) for c in F.maximal_cones]}


def cmd_fan_check(args):
    F = _fan_from_doc(_read(args))
    valid = F.is_valid()
    full = all(C.dim == F.ambient_dim for C in F.cones())
    return {"valid": valid, "pure": F.is_pure(),
            "complete": F.is_complete() if valid and full else None}


def cmd_normal_fan(args):
    F = normal_fan(polyhedron_from_doc(_read(args)))
    if args.format == "off":
        return write_off(F.truncated_cells())
    return _fan_doc(F)


# -- Gelfand-Tsetlin ------------------------------------------------------


def cmd_gt(args):
    if args.sigma:
        P = cons.generalized_gelfand_tsetlin(args.lam, args.sigma)
    else:
        P = cons.gelfand_tsetlin(args.lam)
    return hrep_doc(P.hrep)


def cmd_gt_char(args):
    sigma = args.sigma or list(range(1, len(args.lam) + 1))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ch = cons.demazure_character(args.lam, sigma)
    ones = [1] * len(args.lam)
    return {
        "lambda": list(args.lam), "sigma": list(sigma),
        "avoids_312": cons.avoids_312(sigma),
        "monomials": [{"exponents": list(e), "coefficient": scalar_out(c)}
                      for e, c in ch.monomials()],
        "dimension": scalar_out(ch(*ones)),
        "determinant": cons.demazure_dimension(args.lam, sigma),
    }


def cmd_rand_sphere(args):
    pts = cons.rand_sphere_points(args.dim, args.n, seed=args.seed, mode=args.mode)
    return {"ambient_dim": args.dim, "points": [vector_out(p) for p in pts]}


# -- triangulations ---------------------------------------------------------


def cmd_triangulations(args):
    cfg = PointConfiguration(_points(_read(args)))
    tris = all_triangulations(cfg, max_points=args.max_points)
    return {"count": len(tris), "triangulations": [T.one_based() for T in tris]}


def cmd_regular(args):
    doc = _read(args)
    cfg = PointConfiguration(_points(doc))
    T = _one_based_cells(_field(doc, "triangulation", list), len(cfg))
    w = is_regular(cfg, T)
    out = {"regular": w is not None, "weights": None}
    if w is not None:
        out["weights"] = vector_out(w)
        out["subdivision"] = [[i + 1 for i in c] for c in regular_subdivision(cfg, w)]
    return out


def cmd_secondary(args):
    cfg = PointConfiguration(_points(_read(args)))
    S = secondary_polytope(cfg, max_points=args.max_points)
    return {"dim": S.dim, "f": list(S.f_vector()) if S.dim > 0 else [1],
            "gkz_vectors": [vector_out(v) for v in S.vertices]}


def cmd_gkz_orbits(args):
    doc = _read(args)
    cfg = PointConfiguration(_points(doc))
    if args.cube:
        gens = cube_vertex_symmetries(args.cube)
    else:
        gens = [[i - 1 for i in g] for g in _int_rows(doc.get("generators", []), "generators")]
    if any(len(g) != len(cfg) for g in gens):
        raise MalformedInput("each generator must permute all configuration points")
    tris = all_triangulations(cfg, max_points=args.max_points)
    vectors = [gkz_vector(cfg, T, check=False) for T in tris]
    orbits = orbit_decomposition(vectors, gens)
    return {"total": len(set(vectors)),
            "orbits": [{"representative": vector_out(r), "size": s} for r, s in orbits]}


def cmd_export_off(args):
    doc = _read(args)
    if isinstance(doc, dict) and "maximal_cones" in doc:
        return write_off(_fan_from_doc(doc).truncated_cells())
    if isinstance(doc, dict) and "triangulation" in doc:
        cfg = PointConfiguration(_points(doc))
        if cfg.ambient_dim > 3:
            raise GeometryError("OFF export needs dimension <= 3")
        T = _one_based_cells(doc["triangulation"], len(cfg))
        return write_off([_pad3(c) for c in explode_layout(cfg, T, args.explode)])
    P = polyhedron_from_doc(doc)
    if P.ambient_dim > 3 or not P.is_bounded or P.is_empty:
        raise GeometryError("OFF export needs a nonempty polytope in dimension <= 3")
    return write_off([_pad3(P.vertices)])


# -- experiments -------------------------------------------------------------


def instance_hash(points) -> str:
    payload = dumps([vector_out(p) for p in points]).encode()
    return hashlib.sha256(payload).hexdigest()


def cmd_bench(args):
    pts = cons.rand_sphere_points(args.dim, args.n, seed=args.seed, mode=args.mode)
    results = []
    for algo in args.algorithms:
        start = time.perf_counter()
        if algo == "dd":
            stats = DDStats()
            facets = len(vrep_to_hrep(VRep(args.dim, points=pts), stats=stats).inequalities)
            peak = stats.peak_rays
        else:
            tri = placing_triangulation(pts)
            facets = len(placing_facets(pts))
            peak = len(tri.cells)
        row = {"algorithm": algo, "facets": facets, "peak_cells": peak}
        if not args.no_timings:
            row["seconds"] = round(time.perf_counter() - start, 6)
        results.append(row)
    agree = len({r["facets"] for r in results}) <= 1
    report = {"instance": {"dim": args.dim, "n": args.n, "seed": args.seed, "mode": args.mode,
                           "hash": instance_hash(pts)},
              "results": results, "agree": agree}
    if not agree:
        raise GeometryError(f"hull algorithms disagree: {dumps(report).strip()}")
    return report


def ubt_g2_ceiling(d: int, n: int) -> int:
    """Largest ``g_2`` of a simplicial ``d``-polytope with ``n`` vertices."""
    return comb(n - d, 2)


def g_experiment(d: int, n: int, trials: int, seed) -> dict:
    if d < 3 or n <= d or trials < 1:
        raise MalformedInput("need d >= 3, n > d and at least one trial")
    rows = []
    for t in range(trials):
        P = Polyhedron(vrep=VRep(d, points=cons.rand_sphere_points(
            d, n, seed=_trial_rng_seed(seed, t))))
        simplicial = P.is_simplicial()
        row = {"trial": t, "vertices": P.n_vertices, "f": list(P.f_vector()),
               "simplicial": simplicial}
        if simplicial:
            h = P.h_vector()
            row["h"] = list(h)
            row["g"] = list(P.g_vector())
            row["dehn_sommerville"] = all(h[k] == h[d - k] for k in range(d + 1))
        rows.append(row)
    g2 = [r["g"][2] for r in rows if "g" in r and len(r["g"]) > 2]
    ceiling = ubt_g2_ceiling(d, n)
    summary = {
        "trials": trials, "dim": d, "n": n, "seed": seed,
        "all_simplicial": all(r["simplicial"] for r in rows),
        "all_dehn_sommerville": all(r.get("dehn_sommerville", False) for r in rows),
        "ubt_g2_ceiling": ceiling,
        "g2_min": min(g2) if g2 else None,
        "g2_max": max(g2) if g2 else None,
        "all_below_ceiling": all(x <= ceiling for x in g2),
    }
    return {"summary": summary, "trials": rows}


def cmd_gexperiment(args):
    report = g_experiment(args.dim, args.n, args.trials, args.seed)
    if args.scatter:
        with open(args.scatter, "w", encoding="utf-8") as fh:
            fh.write("g2 g3\n")
            for r in report["trials"]:
                g = r.get("g", [])
                if len(g) > 3:
                    fh.write(f"{g[2]} {g[3]}\n")
    if args.summary_only:
        return {"summary": report["summary"]}
    return report


# -- parser ----------------------------------------------------------------


COMMANDS = {
    "hull": (cmd_hull, "vertices, rays and facets of a polyhedron"),
    "facets": (cmd_facets, "irredundant inequalities and equations"),
    "fvector": (cmd_fvector, "face numbers of a polytope"),
    "hvector": (cmd_hvector, "h-vector of a simplicial polytope"),
    "gvector": (cmd_gvector, "g-vector of a simplicial polytope"),
    "volume": (cmd_volume, "volume and normalized volume"),
    "lattice-points": (cmd_lattice_points, "integer points of a polytope"),
    "ehrhart": (cmd_ehrhart, "Ehrhart polynomial of a lattice polytope"),
    "lp": (cmd_lp, "optimize an affine function"),
    "cone": (cmd_cone, "positive hull of generators"),
    "fan-check": (cmd_fan_check, "validity and completeness of a fan"),
    "normal-fan": (cmd_normal_fan, "outer normal fan of a full-dimensional polytope"),
    "gt": (cmd_gt, "(generalized) Gelfand-Tsetlin polytope"),
    "gt-char": (cmd_gt_char, "lattice-point character of a generalized GT polytope"),
    "rand-sphere": (cmd_rand_sphere, "seeded rational points on the unit sphere"),
    "triangulations": (cmd_triangulations, "all triangulations of a point configuration"),
    "regular": (cmd_regular, "regularity witness for a triangulation"),
    "secondary": (cmd_secondary, "secondary polytope from GKZ vectors"),
    "gkz-orbits": (cmd_gkz_orbits, "GKZ vectors grouped into symmetry orbits"),
    "export-off": (cmd_export_off, "OFF file for a 3D polytope, fan or exploded triangulation"),
    "bench": (cmd_bench, "race the hull algorithms on one seeded instance"),
    "gexperiment": (cmd_gexperiment, "g-vectors of random simplicial polytopes"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", help="input file (default: stdin)")
    common.add_argument("--out", dest="outfile", help="output file (default: stdout)")
    common.add_argument("--seed", default=0, help="random seed")
    common.add_argument("--format", choices=("json", "off"), default="json")

    parser = argparse.ArgumentParser(prog="polyq", description="Exact polyhedral computations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parsers = {}
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        parsers[name] = p

    for name in ("gt", "gt-char"):
        parsers[name].add_argument("--lam", type=int, nargs="+", required=True,
                                   help="weakly decreasing top row")
        parsers[name].add_argument("--sigma", type=int, nargs="+",
                                   help="permutation in one-line notation")
    rs = parsers["rand-sphere"]
    rs.add_argument("--dim", type=int, required=True)
    rs.add_argument("--n", type=int, required=True)
    rs.add_argument("--mode", choices=("exact", "float"), default="exact")
    for name in ("triangulations", "secondary", "gkz-orbits"):
        parsers[name].add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    parsers["gkz-orbits"].add_argument("--cube", type=int,
                                       help="use the symmetries of the n-cube")
    parsers["export-off"].add_argument("--explode", default="0",
                                       help="explode factor for triangulations")
    b = parsers["bench"]
    b.add_argument("--dim", type=int, default=3)
    b.add_argument("--n", type=int, default=100)
    b.add_argument("--mode", choices=("exact", "float"), default="exact")
    b.add_argument("--algorithms", nargs="+", choices=("dd", "placing"), default=["dd", "placing"])
    b.add_argument("--no-timings", action="store_true", help="omit wall times (byte-stable output)")
    g = parsers["gexperiment"]
    g.add_argument("--dim", type=int, default=6)
    g.add_argument("--n", type=int, default=30)
    g.add_argument("--trials", type=int, default=100)
    g.add_argument("--scatter", help="write (g2, g3) pairs to this file")
    g.add_argument("--summary-only", action="store_true")
    return parser


def _normalize_seed(seed):
    try:
        return int(seed)
    except (TypeError, ValueError):
        return seed


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.seed = _normalize_seed(args.seed)
    if hasattr(args, "explode"):
        try:
            args.explode = scalar_in(args.explode)
        except MalformedInput as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        result = args.func(args)
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MalformedInput, ValueError, TypeError, KeyError, IndexError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return 2
    text = result if isinstance(result, str) else dumps(result)
    if args.outfile and args.outfile != "-":
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
