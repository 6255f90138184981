import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from conftest import rats, seeds, vecs
from convexval.errors import DomainError, InputError
from convexval.fixtures import random_polytope
from convexval.piecewise import PiecewisePoly, interpolate, poly_eval, shadow_profile
from convexval.polytope import Polytope, hull, measures
from convexval.rational import det, dot, inverse, mat_mul, mat_vec, identity, rank, solve, to_rat, transpose, unit
from convexval.unimodular import UnimodularMap, random_unimodular

F = Fraction


# -- rational helpers -------------------------------------------------------------------------


def test_to_rat_parses_strings_and_rejects_floats_with_noise():
    assert to_rat("3/4") == F(3, 4)
    assert to_rat(" -2 ") == -2
    assert to_rat(0.5) == F(1, 2)


@given(st.lists(st.lists(rats(), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_numpy(m):
    assert float(det(m)) == pytest.approx(np.linalg.det(np.array(m, dtype=float)), abs=1e-9)


@given(st.lists(st.lists(rats(), min_size=3, max_size=3), min_size=3, max_size=3), vecs(3))
def test_solve_and_inverse(m, b):
    if rank(m) < 3:
        with pytest.raises(Exception):
            inverse(m)
        return
    x = solve(m, b)
    assert mat_vec(m, x) == tuple(to_rat(c) for c in b)
    assert mat_mul(m, inverse(m)) == identity(3)


# -- hull -------------------------------------------------------------------------------------


def test_hull_drops_interior_point():
    P = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (F(1, 4), F(1, 4), F(1, 4))])
    assert set(P.vertices) == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_hull_of_single_point():
    P = hull([(0, 0, 0)])
    assert P.dim == 0 and P.vertices == ((0, 0, 0),)


def test_hull_rejects_bad_input():
    with pytest.raises(InputError):
        hull([])
    with pytest.raises(InputError):
        hull([(0, 0), (1, 0, 0)])
    with pytest.raises(InputError):
        hull([(0,) * 5])


def _in_hull_lp(p, others):
    # feasibility of p = sum λ_i q_i, λ >= 0, sum λ = 1
    A = np.vstack([np.array(others, dtype=float).T, np.ones(len(others))])
    b = np.append(np.array(p, dtype=float), 1.0)
    res = linprog(np.zeros(len(others)), A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    return res.status == 0


def test_hull_vertices_are_irredundant_extreme_input_points():
    rng = random.Random(5)
    pts = [tuple(F(rng.randint(0, 16), 16) for _ in range(3)) for _ in range(100)]
    P = hull(pts)
    assert set(P.vertices) <= set(pts)
    for v in P.vertices:
        others = [w for w in P.vertices if w != v]
        assert not _in_hull_lp(v, others)
    # every input point lies in the hull
    for p in pts[:20]:
        assert P.contains(p)


@given(seeds, st.integers(1, 4))
def test_hull_matches_scipy(seed, n):
    rng = random.Random(seed)
    pts = [tuple(F(rng.randint(-8, 8), 4) for _ in range(n)) for _ in range(n + 6)]
    P = Polytope(pts)
    arr = np.array(pts, dtype=float)
    if P.dim < n:
        assert np.linalg.matrix_rank(arr - arr[0]) == P.dim
        return
    if n == 1:
        assert {v[0] for v in P.vertices} == {min(p[0] for p in pts), max(p[0] for p in pts)}
        return
    ref = ConvexHull(arr)
    assert {tuple(arr[i]) for i in ref.vertices} == {tuple(float(c) for c in v) for v in P.vertices}
    assert float(P.volume) == pytest.approx(ref.volume, rel=1e-9)


@given(seeds)
def test_hull_idempotent(seed):
    P = random_polytope(random.Random(seed), 3)
    assert Polytope(P.vertices) == P


# -- polytope operations ----------------------------------------------------------------------


def test_clip_examples():
    cube = Polytope.cube(3)
    assert cube.clip((1, 0, 0), F(1, 2)) == Polytope.box((0, 0, 0), (F(1, 2), 1, 1))
    assert cube.clip((1, 0, 0), 2) is cube
    assert cube.clip((1, 0, 0), -1).is_empty
    small = Polytope.simplex(3).clip((1, 1, 1), F(1, 2))
    assert small.volume == F(1, 48)


def test_clip_volume_against_monte_carlo():
    small = Polytope.simplex(3).clip((1, 1, 1), F(1, 2))
    gen = np.random.default_rng(1)
    Y = gen.random((10**6, 3))
    inside = (Y.sum(axis=1) <= 0.5)
    assert float(small.volume) == pytest.approx(inside.mean(), rel=1e-2)


def test_clip_rejects_zero_direction():
    with pytest.raises(InputError):
        Polytope.cube(2).clip((0, 0), 1)


def test_support_examples():
    cube = Polytope.cube(3)
    assert cube.support((1, -2, 3)) == 4
    assert cube.support((0, 0, 0)) == 0
    with pytest.raises(DomainError):
        Polytope.empty(3).support((1, 0, 0))


@given(seeds, vecs(3))
def test_support_equivariance(seed, x):
    rng = random.Random(seed)
    P = random_polytope(rng, 3)
    phi = random_unimodular(seed, 2, 3)
    assert P.apply_map(phi).support(x) == P.support(phi.transpose(x))


@given(seeds, vecs(3))
def test_translation_laws(seed, y):
    P = random_polytope(random.Random(seed), 3)
    Q = P.translate(y)
    x = (1, F(1, 2), -2)
    assert Q.support(x) == P.support(x) + dot(x, y)
    assert Q.volume == P.volume
    assert Q.moment == tuple(m + P.volume * c for m, c in zip(P.moment, y))
    assert P.minkowski(Polytope([y])).volume == P.volume


def test_polytope_ops_examples():
    cube = Polytope.cube(3)
    assert cube.reflect() == Polytope.box((-1, -1, -1), (0, 0, 0))
    assert cube.minkowski(cube) == Polytope.cube(3, 0, 2)


def test_measures_examples():
    assert measures(Polytope.cube(3)) == (1, 1, (F(1, 2),) * 3)
    assert measures(Polytope.simplex(3)) == (1, F(1, 6), (F(1, 24),) * 3)
    assert measures(Polytope([(0, 0, 0), (1, 2, 3)])) == (1, 0, (0, 0, 0))
    assert measures(Polytope.empty(3)) == (0, 0, (0, 0, 0))


@given(seeds)
def test_triangulation_volumes_sum_and_unimodular_invariance(seed):
    P = random_polytope(random.Random(seed), 3)
    ref = ConvexHull(np.array(P.vertices, dtype=float)).volume
    assert float(P.volume) == pytest.approx(ref, rel=1e-12)
    phi = random_unimodular(seed, 2, 3)
    assert P.apply_map(phi).volume == P.volume


def test_moment_against_monte_carlo():
    P = Polytope([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    gen = np.random.default_rng(3)
    Y = gen.random((10**6, 3)) * np.array([2, 1, 1])
    inside = np.ones(len(Y), dtype=bool)
    for fc in P.facets:
        inside &= Y @ np.array(fc.normal, dtype=float) <= float(fc.offset)
    mc = (Y[inside].sum(axis=0) * 2 / len(Y))
    assert np.allclose([float(c) for c in P.moment], mc, atol=5e-3)


def test_intersect_and_json_roundtrip():
    P = Polytope.cube(3).intersect(Polytope.cube(3, F(1, 2), 2))
    assert P == Polytope.cube(3, F(1, 2), 1)
    assert Polytope.from_json(P.to_json()) == P
    assert Polytope.cube(2).intersect(Polytope.cube(2, 2, 3)).is_empty
    with pytest.raises(InputError):
        Polytope.from_dict({"dim": 2, "vertices": [["x", 0]]})


# -- unimodular maps --------------------------------------------------------------------------


def test_random_unimodular_contract():
    for seed in range(1000):
        phi = random_unimodular(seed, 2, 3)
        assert det(phi.matrix) == 1
        assert max(abs(c) for row in phi.matrix for c in row) <= 3 * 2**6
    assert random_unimodular(7).matrix == random_unimodular(7).matrix
    for seed in range(300):
        phi = random_unimodular(seed, 3, 3)
        assert max(abs(c) for row in phi.matrix for c in row) <= 3 * 3**6


def test_unimodular_algebra():
    phi = random_unimodular(11)
    x = (1, 2, 3)
    assert phi.inverse(phi(x)) == tuple(to_rat(c) for c in x)
    assert phi.transpose.matrix == transpose(phi.matrix)
    assert phi.compose(phi.inverse).matrix == identity(3)
    with pytest.raises(InputError):
        UnimodularMap(((2, 0), (0, 1)))


# -- piecewise polynomials and shadow profiles ------------------------------------------------


def test_interpolate_recovers_polynomial():
    p = (to_rat(1), to_rat(-2), F(1, 3))
    ts = [to_rat(k) for k in range(3)]
    assert interpolate(ts, [poly_eval(p, t) for t in ts]) == p


def test_shadow_profile_examples():
    prof = shadow_profile(Polytope.cube(3), unit(3, 0))
    assert prof(F(1, 3)) == 1 and prof(-1) == 0 and prof(2) == 0
    prof = shadow_profile(Polytope.cube(3), (1, 1, 0))
    for t in (F(1, 4), F(1, 2), F(3, 4)):
        assert prof(t) == t
        assert prof(1 + t) == 1 - t


def _slab_volume(P, x, lo, hi):
    return P.clip(x, hi).volume - P.clip(x, lo).volume


@given(seeds, vecs(3))
def test_shadow_profile_integrals(seed, x):
    P = random_polytope(random.Random(seed), 3)
    if all(c == 0 for c in x):
        return
    prof = shadow_profile(P, x)
    assert prof.integrate() == P.volume
    assert prof.integrate((0, 1)) == dot(x, P.moment)
    # brute-force slab volume at a rational breakpoint pair
    lo, hi = prof.breakpoints[0], prof.breakpoints[-1]
    mid = (lo + hi) / 2
    assert PiecewisePoly(prof.breakpoints, prof.pieces).integrate() == _slab_volume(P, x, lo - 1, hi + 1)
    part = sum(
        (p.integrate() for p in [_restricted(prof, lo, mid)]), to_rat(0)
    )
    assert part == P.clip(x, mid).volume


def _restricted(prof, lo, hi):
    bps = [b for b in prof.breakpoints if lo < b < hi]
    pts = [lo] + bps + [hi]
    pieces = []
    for a, b in zip(pts, pts[1:]):
        t = (a + b) / 2
        idx = max(i for i, bp in enumerate(prof.breakpoints[:-1]) if bp <= t)
        pieces.append(prof.pieces[idx])
    return PiecewisePoly(tuple(pts), tuple(pieces))
