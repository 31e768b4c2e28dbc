from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, strategies as st

from conftest import PENTAGON
from oracles import affine_rank, brute_facets, brute_vertices, gauss_rank
from polyq.hull import (
    HRep,
    VRep,
    double_description,
    hrep_to_vrep,
    placing_facets,
    placing_triangulation,
    vrep_to_hrep,
)
from polyq.linalg import dot, int_determinant
from polyq.constructions import cross_polytope


def ineq_set(h):
    return {(tuple(a), b) for a, b in h.inequalities}


def test_pentagon_has_five_facets():
    h = vrep_to_hrep(VRep(2, points=PENTAGON))
    assert len(h.inequalities) == 5 and not h.equations
    assert ineq_set(h) == brute_facets(PENTAGON)


def test_single_point_is_pinned():
    h = vrep_to_hrep(VRep(3, points=[(1, 2, 3)]))
    assert not h.inequalities
    assert len(h.equations) == 3
    assert hrep_to_vrep(h).points == ((1, 2, 3),)


def test_tetrahedron_facets():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    h = vrep_to_hrep(VRep(3, points=pts))
    assert ineq_set(h) == {((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0), ((1, 1, 1), 1)}


def test_empty_vrep_gives_empty_marker():
    assert vrep_to_hrep(VRep(2)).is_empty


def test_unit_triangle_vertices():
    h = HRep(2, inequalities=[((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)])
    v = hrep_to_vrep(h)
    assert set(v.points) == {(0, 0), (1, 0), (0, 1)}
    assert not v.rays and not v.lineality


def test_octant_union_cone():
    h = HRep(3, inequalities=[((0, -1, 0), 0), ((0, 0, -1), 0)])
    v = hrep_to_vrep(h)
    assert v.lineality == ((1, 0, 0),)
    assert set(v.rays) == {(0, 1, 0), (0, 0, 1)}
    assert v.points == ((0, 0, 0),)


def test_pentagon_round_trip():
    v = hrep_to_vrep(vrep_to_hrep(VRep(2, points=PENTAGON)))
    assert sorted(v.points) == sorted(PENTAGON)


def test_infeasible_system():
    h = HRep(1, inequalities=[((1,), 0), ((-1,), -1)])
    assert hrep_to_vrep(h).is_empty
    assert hrep_to_vrep(HRep.empty(2)).is_empty


def test_double_description_small_cones():
    assert set(double_description([(1, 0), (0, 1)])) == {(1, 0), (0, 1)}
    assert set(double_description([(1, 0), (1, 1)])) == {(0, 1), (1, -1)}


def test_double_description_octahedron():
    verts = cross_polytope(3).vertices
    gens = [(1,) + tuple(v) for v in verts]
    assert len(double_description(gens)) == 8


def test_double_description_order_independent():
    gens = [(1,) + tuple(v) for v in cross_polytope(3).vertices]
    a = set(double_description(gens))
    assert a == set(double_description(gens[::-1]))
    assert a == set(double_description(gens, lexicographic=True))


def test_placing_square():
    res = placing_triangulation([(0, 0), (1, 0), (0, 1), (1, 1)], lexicographic=True)
    assert len(res.cells) == 2


def test_placing_simplex():
    assert placing_triangulation([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]).cells == [(0, 1, 2, 3)]


def test_placing_cube_volume():
    pts = list(product((0, 1), repeat=3))
    cells = placing_triangulation(pts).cells
    assert len(cells) in (5, 6)
    total = 0
    for c in cells:
        base = pts[c[0]]
        total += abs(int_determinant([[x - y for x, y in zip(pts[i], base)] for i in c[1:]]))
    assert total == 6


def test_placing_rejects_single_point():
    with pytest.raises(ValueError):
        placing_triangulation([(1, 1), (1, 1)])


coords = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def point_sets(draw, max_dim=4, max_points=15):
    d = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_points))
    pts = draw(st.lists(st.tuples(*[coords] * d), min_size=n, max_size=n))
    return d, pts


@given(point_sets(max_dim=3, max_points=9))
def test_hull_round_trip(data):
    d, pts = data
    v = VRep(d, points=pts)
    back = hrep_to_vrep(vrep_to_hrep(v))
    verts = set(back.points)
    # every input point satisfies the H-description and round trips add no points
    h = vrep_to_hrep(v)
    for p in pts:
        assert all(dot(a, p) <= b for a, b in h.inequalities)
        assert all(dot(e, p) == c for e, c in h.equations)
    assert verts <= {tuple(Fraction(x) for x in p) for p in pts}
    if affine_rank(pts) == d and d >= 2:
        assert verts == set(brute_vertices(pts))


@given(point_sets(max_dim=3, max_points=9))
def test_facets_match_brute_force(data):
    d, pts = data
    assume(d >= 2 and affine_rank(pts) == d)
    assert ineq_set(vrep_to_hrep(VRep(d, points=pts))) == brute_facets(pts)


@given(point_sets(max_dim=4, max_points=12))
def test_every_facet_is_tight_on_enough_vertices(data):
    d, pts = data
    h = vrep_to_hrep(VRep(d, points=pts))
    verts = hrep_to_vrep(h).points
    dim = affine_rank(verts)
    for a, b in h.inequalities:
        tight = [v for v in verts if dot(a, v) == b]
        assert affine_rank(tight) == dim - 1


@given(point_sets(max_dim=4, max_points=12))
def test_dd_and_placing_agree(data):
    d, pts = data
    assume(affine_rank(pts) >= 1)
    assert len(vrep_to_hrep(VRep(d, points=pts)).inequalities) == len(placing_facets(pts))


@given(point_sets(max_dim=3, max_points=10))
def test_insertion_order_does_not_matter(data):
    d, pts = data
    v = VRep(d, points=pts)
    assert vrep_to_hrep(v) == vrep_to_hrep(VRep(d, points=pts[::-1]))
    assert vrep_to_hrep(v) == vrep_to_hrep(v, lexicographic=True)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                min_size=1, max_size=5),
       st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                min_size=1, max_size=4))
def test_unbounded_round_trip_contains_generators(points, rays):
    rays = [r for r in rays if any(r)]
    assume(rays)
    h = vrep_to_hrep(VRep(3, points=points, rays=rays))
    back = hrep_to_vrep(h)
    h2 = vrep_to_hrep(back)
    assert h2 == h
    for r in rays:
        assert all(dot(a, r) <= 0 for a, _ in h.inequalities)
        assert all(dot(e, r) == 0 for e, _ in h.equations)
    # lineality basis is independent
    if back.lineality:
        assert gauss_rank(back.lineality) == len(back.lineality)
