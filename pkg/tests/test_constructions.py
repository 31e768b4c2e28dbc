import warnings
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from oracles import divided_difference_character, gt_diagrams, weight_of_rows
from polyq.constructions import (
    avoids_312,
    cross_polytope,
    cube,
    demazure_character,
    demazure_dimension,
    demazure_matrix,
    gelfand_tsetlin,
    generalized_gelfand_tsetlin,
    gt_rows,
    gt_weight,
    partitions_in_box,
    permutahedron,
    permutation_code,
    rand_sphere_points,
    rand_spherical_polytope,
    simplex,
    weyl_dimension,
    weyl_volume,
)
from polyq.linalg import determinant


def test_basic_families():
    assert cube(4).n_vertices == 16
    assert simplex(4).n_vertices == 5
    assert cross_polytope(4).n_facets == 16
    with pytest.raises(ValueError):
        cube(0)


def test_permutahedron_in_hyperplane():
    P = permutahedron((1, 2, 3, 4))
    assert P.dim == 3 and P.n_vertices == 24
    assert P.facets.equations == (((1, 1, 1, 1), 10),)


def test_constant_permutahedron_is_a_point():
    assert permutahedron((2, 2, 2)).dim == 0


def test_permutahedron_hexagon():
    P = permutahedron((1, 2, 3))
    assert P.n_vertices == 6 and P.n_facets == 6


def test_exact_sphere_points_have_norm_one():
    for p in rand_sphere_points(4, 50, seed=11):
        assert sum(x * x for x in p) == 1


def test_float_mode_is_only_close():
    pts = rand_sphere_points(3, 20, seed=5, mode="float")
    assert all(abs(float(sum(x * x for x in p)) - 1) < 1e-12 for p in pts)
    with pytest.raises(ValueError):
        rand_sphere_points(3, 2, seed=0, mode="uniform")


def test_spherical_polytope_deterministic_and_simplicial():
    P = rand_spherical_polytope(3, 40, seed=17)
    Q = rand_spherical_polytope(3, 40, seed=17)
    assert P.vertices == Q.vertices
    assert P.is_simplicial()
    with pytest.raises(ValueError):
        rand_spherical_polytope(3, 3, seed=0)


def test_gt_311():
    G = gelfand_tsetlin((3, 1, 1))
    pts = G.lattice_points()
    assert len(pts) == 6
    assert {tuple(map(tuple, gt_rows(p, 3))) for p in pts} == \
        {tuple(map(tuple, rows)) for rows in gt_diagrams((3, 1, 1))}
    assert G.ehrhart_polynomial().coefficients == (1, 3, 2)


def test_constant_partition_gives_one_diagram():
    assert gelfand_tsetlin((2, 2, 2)).lattice_points() == [(2,) * 6]


def test_weyl_values():
    assert weyl_dimension((3, 1, 1)) == 6
    for k in range(6):
        assert weyl_dimension((3, 1, 1), k) == 2 * k * k + 3 * k + 1
    assert weyl_volume((3, 1, 1)) == 0
    for lam in [(2, 1, 0), (3, 1, 0), (3, 2, 1, 0)]:
        G = gelfand_tsetlin(lam)
        assert G.ehrhart_polynomial().coefficients[-1] == weyl_volume(lam) == G.volume()


def test_permutation_codes():
    assert permutation_code((2, 3, 1)) == (1, 1, 0)
    assert permutation_code((1, 2, 3, 4)) == (0, 0, 0, 0)
    assert permutation_code((4, 3, 2, 1)) == (3, 2, 1, 0)


def test_generalized_gt_311_132():
    P = generalized_gelfand_tsetlin((3, 1, 1), (1, 3, 2))
    rows = [gt_rows(p, 3) for p in P.lattice_points()]
    assert rows == [[(3, 1, 1), (3, 1), (x,)] for x in (1, 2, 3)]
    eqs = P.hrep.equations
    assert any(tuple(e) == (1, 0, 0, -1, 0, 0) or tuple(e) == (-1, 0, 0, 1, 0, 0) for e, _ in eqs)


def test_unconstrained_generalized_gt():
    # the constraint code vanishes for this permutation
    G = generalized_gelfand_tsetlin((3, 1, 1), (3, 2, 1))
    assert G.lattice_points() == gelfand_tsetlin((3, 1, 1)).lattice_points()


def test_gt_weights():
    assert gt_weight([[3, 1, 1], [1, 1], [1]]) == (1, 1, 3)
    assert gt_weight([[0, 0], [0]]) == (0, 0)
    assert gt_weight((3, 1, 1, 3, 1, 3)) == (3, 1, 1)


def test_demazure_311_132():
    ch = demazure_character((3, 1, 1), (1, 3, 2))
    assert ch(1, 1, 1) == 3
    assert ch.terms == {(3, 1, 1): 1, (2, 2, 1): 1, (1, 3, 1): 1}
    assert demazure_dimension((3, 1, 1), (1, 3, 2)) == 3
    M = demazure_matrix((3, 1, 1), (1, 3, 2))
    assert determinant(M) == determinant([[4, 1, 0], [1, 1, 1], [0, 0, 1]]) == 3


def test_zero_partition_character():
    assert demazure_character((0, 0, 0), (2, 1, 3)).terms == {(0, 0, 0): 1}


def test_non_avoider_warns():
    assert not avoids_312((3, 1, 2))
    with pytest.warns(UserWarning):
        demazure_character((2, 1, 0), (3, 1, 2))


def test_avoidance_scan():
    avoiders = [s for s in permutations(range(1, 5)) if avoids_312(s)]
    assert len(avoiders) == 14  # Catalan number


def test_bad_inputs():
    with pytest.raises(ValueError):
        gelfand_tsetlin((1, 2))
    with pytest.raises(ValueError):
        generalized_gelfand_tsetlin((2, 1), (1, 1))


def test_weyl_sweep_small():
    for n in (1, 2, 3):
        for lam in partitions_in_box(n, 3):
            count = len(gt_diagrams(lam))
            assert len(gelfand_tsetlin(lam).lattice_points()) == count == weyl_dimension(lam)


def _reversed_conjugate(sigma):
    n = len(sigma)
    return tuple(n + 1 - sigma[n - i] for i in range(1, n + 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_characters_match_divided_differences(n):
    top = 3 if n < 4 else 2
    for sigma in permutations(range(1, n + 1)):
        if not avoids_312(sigma):
            continue
        for lam in partitions_in_box(n, top):
            ch = demazure_character(lam, sigma)
            oracle = divided_difference_character(lam, _reversed_conjugate(sigma))
            assert ch.terms == oracle
            assert ch(*[1] * n) == demazure_dimension(lam, sigma)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.integers(0, 3), min_size=n, max_size=n)))
def test_weights_telescope(entries):
    lam = sorted(entries, reverse=True)
    for p in gelfand_tsetlin(lam).lattice_points():
        w = gt_weight(p)
        assert sum(w) == sum(lam)
        assert w == weight_of_rows(gt_rows(p, len(lam)))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 3), min_size=n, max_size=n), st.permutations(range(1, n + 1)))))
def test_character_counts_lattice_points(data):
    entries, sigma = data
    lam = sorted(entries, reverse=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ch = demazure_character(lam, sigma)
    assert ch(*[1] * len(lam)) == len(generalized_gelfand_tsetlin(lam, sigma).lattice_points())


@given(st.integers(2, 5), st.integers(0, 2**31))
def test_sphere_norm_property(d, seed):
    for p in rand_sphere_points(d, 3, seed=seed):
        assert sum(x * x for x in p) == 1
