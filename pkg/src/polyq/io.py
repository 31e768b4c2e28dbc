"""JSON documents and OFF export."""

from __future__ import annotations

import decimal
import json
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, Sequence

from .errors import GeometryError
from .hull import HRep, VRep
from .linalg import to_scalar
from .polyhedron import Polyhedron, convex_hull


class MalformedInput(ValueError):
    """Input that cannot be parsed into the expected document shape."""


# -- scalars ------------------------------------------------------------------


def scalar_out(x) -> int | str:
    """Integers stay JSON numbers; other rationals become ``"p/q"``."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_in(x) -> Fraction:
    if isinstance(x, bool) or x is None:
        raise MalformedInput(f"{x!r} is not a number")
    try:
        return to_scalar(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"{x!r} is not a rational number") from exc


def vector_out(v: Sequence) -> list:
    return [scalar_out(x) for x in v]


def loads(text: str) -> Any:
    """Parse JSON, reading decimal literals exactly."""
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=None, separators=(", ", ": ")) + "\n"


# -- polyhedron documents --------------------------------------------------


def _matrix(doc: dict, key: str, width: int | None) -> list:
    rows = doc.get(key, [])
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedInput(f"{key!r} must be an array of arrays")
    out = [tuple(scalar_in(x) for x in r) for r in rows]
    if width is not None and any(len(r) != width for r in out):
        raise MalformedInput(f"rows of {key!r} must have length {width}")
    return out


def _ambient(doc: dict) -> int:
    if "ambient_dim" in doc:
        d = doc["ambient_dim"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise MalformedInput("ambient_dim must be a nonnegative integer")
        return d
    for key, shift in (("points", 0), ("rays", 0), ("lineality", 0),
                       ("inequalities", 1), ("equations", 1)):
        rows = doc.get(key)
        if rows:
            if not isinstance(rows, list) or not isinstance(rows[0], list):
                raise MalformedInput(f"{key!r} must be an array of arrays")
            return len(rows[0]) - shift
    raise MalformedInput("cannot tell the ambient dimension: no rows and no ambient_dim")


def polyhedron_from_doc(doc: Any) -> Polyhedron:
    """Read ``points``/``rays``/``lineality`` and/or ``inequalities``/``equations``
    (rows ``[b, a_1, ..., a_d]`` meaning ``a.x <= b`` or ``a.x = b``)."""
    if not isinstance(doc, dict):
        raise MalformedInput("a polyhedron document must be a JSON object")
    keys = {"points", "rays", "lineality", "inequalities", "equations"}
    if not keys & doc.keys():
        raise MalformedInput(f"polyhedron document needs one of {sorted(keys)}")
    d = _ambient(doc)
    vrep = hrep = None
    if {"points", "rays", "lineality"} & doc.keys():
        pts = _matrix(doc, "points", d)
        rays = _matrix(doc, "rays", d)
        lin = _matrix(doc, "lineality", d)
        if not pts and (rays or lin):
            raise MalformedInput("generators need at least one point")
        vrep = VRep(d, points=pts, rays=rays, lineality=lin)
    if {"inequalities", "equations"} & doc.keys():
        ineq = _matrix(doc, "inequalities", d + 1)
        eqs = _matrix(doc, "equations", d + 1)
        hrep = HRep(d, inequalities=[(r[1:], r[0]) for r in ineq],
                    equations=[(r[1:], r[0]) for r in eqs])
    if vrep is not None and hrep is not None:
        hrep = None  # generators win; the inequalities are only a hint
    return Polyhedron(vrep=vrep, hrep=hrep)


def hrep_doc(h: HRep) -> dict:
    return {
        "ambient_dim": h.ambient_dim,
        "inequalities": [vector_out((b,) + tuple(a)) for a, b in h.inequalities],
        "equations": [vector_out((b,) + tuple(a)) for a, b in h.equations],
    }


def vrep_doc(v: VRep) -> dict:
    return {
        "ambient_dim": v.ambient_dim,
        "points": [vector_out(p) for p in v.points],
        "rays": [vector_out(r) for r in v.rays],
        "lineality": [vector_out(l) for l in v.lineality],
    }


def polyhedron_doc(P: Polyhedron) -> dict:
    doc = vrep_doc(P.vrep)
    doc.update(hrep_doc(P.facets))
    return doc


# -- OFF -----------------------------------------------------------------


_OFF_CONTEXT = decimal.Context(prec=12)


def decimal_string(x) -> str:
    """A rational rounded to 12 significant digits."""
    x = Fraction(x)
    if x == 0:
        return "0"
    d = _OFF_CONTEXT.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    return format(d, ".12g")


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def order_polygon(points: Sequence[Sequence], normal: Sequence) -> list:
    """Indices of coplanar ``points`` in counter-clockwise order seen from
    the side ``normal`` points to; exact angular sort around the centroid."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    n = len(pts)
    c = tuple(sum(p[i] for p in pts) / n for i in range(3))
    ref = _sub(pts[0], c)

    def half(u) -> int:
        # 0 for angles in [0, pi) measured from ref, 1 for [pi, 2pi)
        s = _dot(_cross(ref, u), normal)
        if s > 0 or (s == 0 and _dot(ref, u) > 0):
            return 0
        return 1

    def cmp(i, j):
        u, v = _sub(pts[i], c), _sub(pts[j], c)
        hu, hv = half(u), half(v)
        if hu != hv:
            return hu - hv
        s = _dot(_cross(u, v), normal)
        return -1 if s > 0 else (1 if s < 0 else 0)

    return sorted(range(n), key=cmp_to_key(cmp))


def polytope_faces(points: Sequence[Sequence]) -> tuple:
    """``(vertices, faces)`` of a polytope of dimension 2 or 3 in 3-space."""
    P = convex_hull(points)
    if P.ambient_dim != 3:
        raise GeometryError("OFF export needs points in 3-space")
    verts = [tuple(v) for v in P.vertices]
    if P.dim == 3:
        faces = []
        for k, (a, _) in enumerate(P.facets.inequalities):
            idx = sorted(P.incidence.row(k))
            order = order_polygon([verts[i] for i in idx], a)
            faces.append([idx[i] for i in order])
        return verts, faces
    if P.dim == 2:
        e = P.facets.equations[0][0]
        order = order_polygon(verts, e)
        return verts, [order]
    raise GeometryError("OFF export needs a 2- or 3-dimensional cell")


def write_off(cells: Sequence[Sequence[Sequence]]) -> str:
    """OFF text for a list of cells, each given by points in 3-space.

    Every cell gets its own vertex block, so exploded layouts stay apart.
    """
    all_verts: list = []
    all_faces: list = []
    for cell in cells:
        verts, faces = polytope_faces(cell)
        base = len(all_verts)
        all_verts.extend(verts)
        all_faces.extend([base + i for i in f] for f in faces)
    lines = ["OFF", f"{len(all_verts)} {len(all_faces)} 0"]
    lines += [" ".join(decimal_string(x) for x in v) for v in all_verts]
    lines += [" ".join([str(len(f))] + [str(i) for i in f]) for f in all_faces]
    return "\n".join(lines) + "\n"
