from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import PENTAGON
from polyq import Cone, GeometryError, convex_hull, fan_from_rays_and_cones, normal_fan, positive_hull
from polyq.constructions import cross_polytope, cube, permutahedron
from polyq.fan import Fan, is_pointed, normal_cone_of
from polyq.lp import maximize
from polyq.polyhedron import translate

FIG_RAYS = [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)]
FIG_CONES = [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]


def test_octant_union():
    C = positive_hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert C.lineality == ((1, 0, 0),)
    assert set(C.rays) == {(0, 1, 0), (0, 0, 1)}
    assert not is_pointed(C)


def test_quadrant_is_pointed():
    C = positive_hull([(1, 0), (0, 1)])
    assert is_pointed(C) and len(C.rays) == 2


def test_redundant_generator_dropped():
    assert set(positive_hull([(1, 0), (1, 1), (0, 1)]).rays) == {(1, 0), (0, 1)}


def test_figure_fan_complete():
    F = fan_from_rays_and_cones(FIG_RAYS, FIG_CONES)
    assert F.is_valid() and F.is_pure() and F.is_complete()


def test_boolean_incidence_input():
    rows = [[j in c for j in range(5)] for c in FIG_CONES]
    assert fan_from_rays_and_cones(FIG_RAYS, rows) == fan_from_rays_and_cones(FIG_RAYS, FIG_CONES)


def test_single_cone_not_complete():
    F = fan_from_rays_and_cones([(1, 0), (0, 1)], [[0, 1]])
    assert F.is_valid() and not F.is_complete()


def test_overlapping_cones_invalid():
    F = fan_from_rays_and_cones([(1, 0), (0, 1), (1, 1), (-1, 0)], [[0, 1], [2, 3]])
    assert not F.is_valid()
    with pytest.raises(GeometryError):
        F.is_complete()


def test_fan_input_validation():
    with pytest.raises(ValueError):
        Fan(2, [(0, 0)], [[0]])
    with pytest.raises(ValueError):
        Fan(2, [(1, 0), (2, 0)], [[0, 1]])
    with pytest.raises(ValueError):
        Fan(2, [(1, 0)], [[0, 3]])


def test_pentagon_normal_fan_is_figure_fan():
    F = normal_fan(convex_hull(PENTAGON))
    assert F == fan_from_rays_and_cones(FIG_RAYS, FIG_CONES)
    assert len(F.maximal_cones) == 5


def test_square_normal_fan():
    F = normal_fan(cube(2))
    assert set(F.rays) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert len(F.maximal_cones) == 4 and F.is_complete()


def test_translate_keeps_normal_fan():
    P = convex_hull(PENTAGON)
    assert normal_fan(translate(P, (Fraction(1, 3), -7))) == normal_fan(P)


def test_normal_fan_needs_full_dimension():
    with pytest.raises(GeometryError):
        normal_fan(permutahedron((1, 2, 3)))
    with pytest.raises(GeometryError):
        normal_fan(convex_hull([(0, 0)], rays=[(1, 0)]))


def test_three_dimensional_normal_fans_complete():
    for P in (cube(3), cross_polytope(3)):
        F = normal_fan(P)
        assert len(F.maximal_cones) == P.n_vertices and F.is_complete()


def test_truncated_cells():
    cells = fan_from_rays_and_cones(FIG_RAYS, FIG_CONES).truncated_cells()
    assert len(cells) == 5
    assert all(max(abs(x) for p in c for x in p) == 1 for c in cells)
    with pytest.raises(GeometryError):
        fan_from_rays_and_cones([(1, 0, 0, 0)], [[0]]).truncated_cells()


def test_cone_needs_dimension():
    with pytest.raises(ValueError):
        Cone([])
    assert Cone([], 2).dim == 0


small = st.integers(-3, 3)


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=6))
def test_positive_hull_idempotent(gens):
    assume(any(any(g) for g in gens))
    C = positive_hull(gens, 3)
    neg = [tuple(-x for x in l) for l in C.lineality]
    D = positive_hull(list(C.rays) + list(C.lineality) + neg, 3)
    assert D.rays == C.rays and D.lineality == C.lineality
    for g in gens:
        assert C.contains(g)


polygons = st.lists(st.tuples(small, small), min_size=3, max_size=8)
polytopes3 = st.lists(st.tuples(small, small, small), min_size=4, max_size=8)


@given(st.one_of(polygons, polytopes3))
def test_normal_fans_complete(pts):
    P = convex_hull(pts)
    assume(P.dim == P.ambient_dim)
    assert normal_fan(P).is_complete()


@given(st.one_of(polygons, polytopes3))
def test_interior_objective_selects_vertex(pts):
    P = convex_hull(pts)
    assume(P.dim == P.ambient_dim)
    F = normal_fan(P)
    for j, v in enumerate(P.vertices):
        ell = tuple(sum(F.rays[i][k] for i in F.maximal_cones[j]) for k in range(P.ambient_dim))
        assert maximize(P, ell).optimizer == v
        assert normal_cone_of(F, ell) == [j]


@given(polygons, st.tuples(st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5)))
def test_translation_invariance(pts, t):
    P = convex_hull(pts)
    assume(P.dim == 2)
    assert normal_fan(translate(P, t)) == normal_fan(P)
