import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from scipy.optimize import linprog

from conftest import seeds, vecs
from convexval.errors import ClassError, DomainError, InputError, UnsupportedError
from convexval.fixtures import random_F, random_S, random_split, staircase, staircase_join_formula
from convexval.functions import (
    LogConcaveFn,
    PLConvexF,
    PLConvexS,
    function_from_dict,
    inf_conv,
    is_inf,
    join_meet,
    join_S,
    meet_S,
)
from convexval.hpreal import ExpRat
from convexval.polytope import Polytope
from convexval.rational import dot, to_rat
from convexval.unimodular import random_unimodular

F = Fraction


def lp_value(u: PLConvexS, x):
    """min Σλ_i t_i over convex combinations of graph points hitting x."""
    X = np.array([p for p, _ in u.graph_points], dtype=float).T
    t = np.array([float(s) for _, s in u.graph_points])
    A = np.vstack([X, np.ones(X.shape[1])])
    b = np.append(np.array(x, dtype=float), 1.0)
    res = linprog(t, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    return res.fun if res.status == 0 else float("inf")


def test_indicator_and_cone():
    cube = Polytope.cube(2)
    u = PLConvexS.indicator(cube, 3)
    assert u.eval((F(1, 2), F(1, 2))) == 3
    assert is_inf(u.eval((2, 0)))
    c = PLConvexS.cone(cube, (1, -1), 1)
    assert c.eval((1, 0)) == 2 and c.eval((0, 1)) == 0
    with pytest.raises(DomainError):
        PLConvexS.indicator(Polytope.empty(2))


def test_graph_points_are_lower_hull():
    u = PLConvexS([((0,), 0), ((1,), 5), ((2,), 0), ((1,), 0)])
    assert u.graph_points == (((0,), 0), ((2,), 0))
    assert u.eval((1,)) == 0


def test_dimension_mismatch():
    with pytest.raises(InputError):
        PLConvexS([((0,), 0), ((1, 1), 0)])
    with pytest.raises(InputError):
        PLConvexS.indicator(Polytope.cube(2)).eval((0, 0, 0))


@given(seeds)
def test_eval_matches_lp(seed):
    rng = random.Random(seed)
    u = random_S(rng, 2)
    for _ in range(6):
        x = tuple(F(rng.randint(-8, 8), 4) for _ in range(2))
        v = u.eval(x)
        ref = lp_value(u, x)
        if is_inf(v):
            assert ref == float("inf")
        else:
            assert float(v) == pytest.approx(ref, abs=1e-7)


@given(seeds, vecs(3))
def test_operations_pointwise(seed, y):
    rng = random.Random(seed)
    u = random_S(rng, 3)
    x0 = u.graph_points[0][0]
    x = tuple(a / 2 + b / 2 for a, b in zip(x0, u.graph_points[-1][0]))
    assert u.translate(y).eval(tuple(a + b for a, b in zip(x, y))) == u.eval(x)
    assert u.dual_translate(y).eval(x) == u.eval(x) + dot(x, y)
    assert u.add_const(F(1, 3)).eval(x) == u.eval(x) + F(1, 3)
    assert u.scale_arg(2).eval(tuple(c / 2 for c in x)) == u.eval(x)
    assert u.scale_val(3).eval(x) == 3 * u.eval(x)
    phi = random_unimodular(seed, 2, 3)
    assert u.compose(phi).eval(phi(x)) == u.eval(x)


@given(seeds)
def test_class_F_ops(seed):
    rng = random.Random(seed)
    v = random_F(rng, 3)
    x = (1, F(-1, 2), 2)
    assert v.translate((1, 0, 0)).eval((2, F(-1, 2), 2)) == v.eval(x)
    assert v.dual_translate((1, 1, 1)).eval(x) == v.eval(x) + F(5, 2)
    assert v.scale_val(2).eval(x) == 2 * v.eval(x)
    # witnesses make their piece the unique maximum
    for (a, b), w in zip(v.pieces, v.witnesses):
        vals = [dot(c, w) + d for c, d in v.pieces]
        assert dot(a, w) + b == max(vals) and vals.count(max(vals)) == 1


def test_support_and_linear():
    h = PLConvexF.support(Polytope.cube(3))
    assert h.eval((1, -2, 3)) == 4
    assert PLConvexF.linear((1, 2, 3)).eval((1, 1, 1)) == 6
    assert PLConvexF.constant(2, 5).eval((9, 9)) == 5
    with pytest.raises(DomainError):
        PLConvexF([])


def test_json_roundtrip():
    u = random_S(random.Random(1), 3)
    v = random_F(random.Random(2), 3)
    assert PLConvexS.from_dict(u.to_dict()) == u
    assert PLConvexF.from_dict(v.to_dict()) == v
    f = LogConcaveFn(u)
    assert LogConcaveFn.from_dict(f.to_dict()) == f
    assert function_from_dict(u.to_dict()) == u


def test_logconcave_eval():
    f = LogConcaveFn(PLConvexS.indicator(Polytope.cube(2), 2))
    assert f.eval((0, 0)) == ExpRat(1, -2)
    assert f.eval((3, 3)) == ExpRat(0, 0)
    with pytest.raises(ClassError):
        LogConcaveFn(Polytope.cube(2))


# -- lattice operations -----------------------------------------------------------------------


@given(seeds)
def test_split_pairs_have_convex_min(seed):
    rng = random.Random(seed)
    w = random_S(rng, 3)
    u, v, _, _ = random_split(rng, w)
    j, m, convex = join_meet(u, v)
    assert convex
    assert m == w
    # the join lives on the cut and matches both pieces there
    for x, t in j.graph_points:
        assert u.eval(x) == t and v.eval(x) == t


@given(seeds)
def test_join_meet_pointwise(seed):
    rng = random.Random(seed)
    u, v = random_S(rng, 2), random_S(rng, 2)
    j, m, convex = join_meet(u, v)
    for _ in range(10):
        x = tuple(F(rng.randint(-8, 8), 4) for _ in range(2))
        a, b = u.eval(x), v.eval(x)
        mx = m.eval(x)
        lo = min(a, b)
        assert is_inf(lo) or (not is_inf(mx) and mx <= lo)
        if j is not None:
            assert j.eval(x) == max(a, b) or is_inf(j.eval(x))
        if convex and not is_inf(lo):
            assert mx == lo


def test_disjoint_join_is_none():
    u = PLConvexS.indicator(Polytope.cube(2))
    v = PLConvexS.indicator(Polytope.cube(2, 2, 3))
    assert join_S(u, v) is None
    assert meet_S(u, v).domain == Polytope(list(u.domain.vertices) + list(v.domain.vertices))
    assert meet_S(u, v).eval((F(3, 2), F(3, 2))) == 0


def test_staircase_joins():
    us, joins, _ = staircase(3, 4)
    for i, j in enumerate(joins, start=1):
        assert j == staircase_join_formula(3, i)


def test_class_F_join_meet_match_pointwise():
    rng = random.Random(7)
    for _ in range(10):
        u, v = random_F(rng, 2), random_F(rng, 2)
        j, m, convex = join_meet(u, v)
        for x in [(0, 0), (1, F(1, 2)), (-2, 1)]:
            assert j.eval(x) == max(u.eval(x), v.eval(x))
            if m is not None:
                assert m.eval(x) <= min(u.eval(x), v.eval(x))
                if convex:
                    assert m.eval(x) == min(u.eval(x), v.eval(x))


def test_inf_conv():
    u = PLConvexS.indicator(Polytope.cube(2), 1)
    v = PLConvexS.indicator(Polytope.cube(2), 2)
    w = inf_conv(u, v)
    assert w == PLConvexS.indicator(Polytope.cube(2, 0, 2), 3)
    with pytest.raises(UnsupportedError):
        inf_conv(u, PLConvexF.linear((0, 0)))
    with pytest.raises(ClassError):
        join_meet(u, PLConvexF.linear((0, 0)))


def test_to_rat_roundtrip_of_values():
    u = PLConvexS([((0,), to_rat("1/3")), ((1,), 0)])
    assert u.eval((F(1, 2),)) == F(1, 6)
