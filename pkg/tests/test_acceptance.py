"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict that is printed in the terminal
summary (and echoed to stdout) whether it passes or fails.
"""

import random
import time
from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest

from conftest import ACCEPTANCE_RESULTS, PENTAGON
from oracles import (
    brute_facets,
    gt_diagrams,
    hyperoctahedral_group,
    in_hull_box_scan,
    orbit_closure,
    shoelace_area,
    vertices_any_dim,
)
from polyq import (
    LinearProgram,
    convex_hull,
    demazure_character,
    demazure_dimension,
    fan_from_rays_and_cones,
    gelfand_tsetlin,
    generalized_gelfand_tsetlin,
    normal_fan,
    optimal_face,
    solve,
)
from polyq.cli import g_experiment
from polyq.constructions import gt_weight, partitions_in_box, rand_sphere_points, rand_spherical_polytope, weyl_dimension
from polyq.fan import normal_cone_of
from polyq.hull import VRep, hrep_to_vrep, placing_facets, vrep_to_hrep
from polyq.linalg import dot
from polyq.triangulation import (
    PointConfiguration,
    all_triangulations,
    cube_vertex_symmetries,
    gkz_vector,
    is_regular,
    orbit_decomposition,
    secondary_polytope,
)


class Criterion:
    """Context manager timing one criterion and recording its verdict."""

    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.details: list = []

    def note(self, text: str) -> None:
        self.details.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        reason = ""
        if exc_type is not None:
            reason = f" [{exc_type.__name__}: {exc}]".replace("\n", " ")[:200]
        elif not ok:
            reason = f" [over time limit {self.limit:.0f}s]"
        extra = f" ({'; '.join(self.details)})" if self.details else ""
        line = (f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'}: {self.title}"
                f"{extra} in {elapsed:.1f}s{reason}")
        ACCEPTANCE_RESULTS[self.number] = line
        print(line)
        if exc_type is None and not ok:
            pytest.fail(line)
        return False


FIG_RAYS = [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)]
FIG_CONES = [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]
C3 = list(product((0, 1), repeat=3))


@lru_cache(maxsize=None)
def c3_triangulations():
    cfg = PointConfiguration(C3)
    return cfg, tuple(all_triangulations(cfg))


def test_criterion_01_pentagon_pipeline():
    with Criterion(1, "pentagon pipeline", 1.0) as c:
        P = convex_hull(PENTAGON)
        assert P.n_facets == 5
        assert P.f_vector() == (5, 5)
        area = shoelace_area(PENTAGON)
        assert area == Fraction(7, 2) and P.volume() == area
        box = in_hull_box_scan(PENTAGON, 0, 2)
        assert len(box) == 8 and P.lattice_points() == box
        F = normal_fan(P)
        assert F == fan_from_rays_and_cones(FIG_RAYS, FIG_CONES)
        assert len(F.maximal_cones) == 5
        c.note(f"area {area}, {len(box)} lattice points")


def test_criterion_02_gelfand_tsetlin_suite():
    with Criterion(2, "Gelfand-Tsetlin suite", 5.0):
        G = gelfand_tsetlin((3, 1, 1))
        assert len(G.lattice_points()) == 6
        assert G.ehrhart_polynomial().coefficients == (1, 3, 2)
        assert len(generalized_gelfand_tsetlin((3, 1, 1), (1, 3, 2)).lattice_points()) == 3
        assert demazure_character((3, 1, 1), (1, 3, 2))(1, 1, 1) == 3
        assert demazure_dimension((3, 1, 1), (1, 3, 2)) == 3
        assert gt_weight([[3, 1, 1], [1, 1], [1]]) == (1, 1, 3)


def test_criterion_03_weyl_sweep():
    with Criterion(3, "Weyl consistency sweep", 120.0) as c:
        checked = 0
        for n in range(1, 5):
            for lam in partitions_in_box(n, 4):
                G = gelfand_tsetlin(lam)
                count = len(G.lattice_points())
                assert count == weyl_dimension(lam, 1) == len(gt_diagrams(lam)), lam
                ehr = G.ehrhart_polynomial()
                for k in (1, 2, 3):
                    assert ehr(k) == weyl_dimension(lam, k), (lam, k)
                checked += 1
        c.note(f"{checked} partitions")


def test_criterion_04_secondary_polytope_of_c3():
    with Criterion(4, "secondary polytope of the 3-cube", 300.0):
        cfg, tris = c3_triangulations()
        assert len(tris) == 74
        assert all(is_regular(cfg, T) is not None for T in tris)
        S = secondary_polytope(cfg)
        assert S.dim == 4
        assert S.f_vector() == (74, 152, 100, 22)


def test_criterion_05_gkz_orbits():
    with Criterion(5, "GKZ orbits under the cube group", 60.0) as c:
        cfg, tris = c3_triangulations()
        vectors = [gkz_vector(cfg, T, check=False) for T in tris]
        orbits = orbit_decomposition(vectors, cube_vertex_symmetries(3))
        sizes = [s for _, s in orbits]
        assert sum(sizes) == 74
        assert all(48 % s == 0 for s in sizes)
        assert orbits == orbit_closure(vectors, hyperoctahedral_group(3))
        c.note(f"orbit sizes {sorted(sizes, reverse=True)}")


def test_criterion_06_random_six_polytopes():
    with Criterion(6, "g-vectors of random 6-polytopes", 600.0) as c:
        rep = g_experiment(6, 30, 100, 2024)
        s = rep["summary"]
        assert s["ubt_g2_ceiling"] == 276
        assert s["all_simplicial"]
        for row in rep["trials"]:
            h = row["h"]
            assert all(h[k] == h[6 - k] for k in range(7))
            assert 0 <= row["g"][2] <= 276
        c.note(f"g2 observed in [{s['g2_min']}, {s['g2_max']}]")


def test_criterion_07_three_dimensional_f_vectors():
    with Criterion(7, "f-vectors of random 3-polytopes", 120.0):
        for seed in range(50):
            P = rand_spherical_polytope(3, 40, seed=seed)
            f = P.f_vector()
            n = f[0]
            assert f == (n, 3 * n - 6, 2 * n - 4)
            assert f[0] - f[1] + f[2] == 2


def _random_vrep(rng: random.Random):
    d = rng.randint(1, 4)
    n = rng.randint(1, 15)
    q = rng.choice((1, 2, 3))
    return d, [tuple(Fraction(rng.randint(-5 * q, 5 * q), q) for _ in range(d)) for _ in range(n)]


def test_criterion_08_hull_round_trips():
    with Criterion(8, "hull round trips", 300.0):
        rng = random.Random(8)
        for _ in range(200):
            d, pts = _random_vrep(rng)
            h = vrep_to_hrep(VRep(d, points=pts))
            back = hrep_to_vrep(h)
            assert sorted(back.points) == vertices_any_dim(pts)
            assert not back.rays and not back.lineality
            assert vrep_to_hrep(back) == h
            if len(back.points) > 1:
                assert len(h.inequalities) == len(placing_facets(pts))
            if h.inequalities and not h.equations and d >= 2:
                assert {(a, b) for a, b in h.inequalities} == brute_facets(pts)


def test_criterion_09_lp_fan_duality():
    with Criterion(9, "LP and normal fan duality", 120.0):
        rng = random.Random(9)
        done = 0
        while done < 50:
            d = rng.choice((2, 3))
            pts = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(rng.randint(d + 1, 9))]
            P = convex_hull(pts)
            if P.dim != d:
                continue
            cvec = tuple(rng.randint(-3, 3) for _ in range(d))
            res = solve(LinearProgram(P, cvec))
            F = normal_fan(P)
            cones = normal_cone_of(F, cvec)
            verts = list(P.vertices)
            assert res.optimizer in {verts[j] for j in cones}
            face = optimal_face(LinearProgram(P, cvec))
            fv = set(face.vertices)
            assert fv <= set(verts)
            tight = [k for k, (a, b) in enumerate(P.facets.inequalities)
                     if all(dot(a, v) == b for v in fv)]
            common = {v for v in verts
                      if all(dot(P.facets.inequalities[k][0], v) == P.facets.inequalities[k][1]
                             for k in tight)}
            assert common == fv
            done += 1


def test_criterion_10_exact_sphere_points():
    with Criterion(10, "exact sphere points", 10.0):
        total = 0
        for d, seed in ((2, 1), (3, 2), (4, 3), (6, 4)):
            for p in rand_sphere_points(d, 250, seed=seed, mode="exact"):
                assert sum(x * x for x in p) == 1
                total += 1
        assert total == 1000
