import random
from fractions import Fraction

import pytest
from flint import arb
from hypothesis import given
from hypothesis import strategies as st

from conftest import seeds, vecs
from convexval.auxforms import li_representation
from convexval.duality import LEGENDRE, TransformHandle, dualize
from convexval.errors import ClassError, InputError, ParameterError
from convexval.families import FamilyParams, dual_family_eval, family_eval
from convexval.fixtures import random_F, random_polytope, random_polytope_around_origin, random_S
from convexval.functions import LogConcaveFn, PLConvexF, PLConvexS, is_inf
from convexval.hpreal import ExpRat, to_arb
from convexval.polytope import Polytope
from convexval.probes import ProbeGrid, compare_on_grid, domain_probes
from convexval.rational import dot, scale
from convexval.suites import thm41_zeta, thm42_zeta
from convexval.transforms import laplace_logconcave, legendre

F = Fraction
CONE_2D = "1.1078791189569679820044812249450391201431519847125"


def _num(v):
    if isinstance(v, ExpRat):
        return v.to_arb()
    return to_arb(v)


def rel(a, b):
    a, b = _num(a), _num(b)
    return abs(float((a - b).mid())) / max(abs(float(b.mid())), 1e-300)


# -- polytope families -------------------------------------------------------------------------


def test_thm41_examples():
    cube = Polytope.cube(3)
    p = FamilyParams("thm41", 1, 0, 0, 0, 0)
    assert family_eval(p, cube, (1, 1, 1)) == 3
    p = FamilyParams("thm41", 0, 0, 1, 1, 1)
    # V_0 + V_n + x·m(P) for the unit cube and x = (1, 2, 3)
    assert family_eval(p, cube, (1, 2, 3)) == 2 + 3
    # translation changes the value by Z_0(P)·x·y
    P = cube.translate((1, 0, 0))
    p = FamilyParams("thm41", 2, 1, 0, 0, 1)
    diff = family_eval(p, P, (1, 1, 1)) - family_eval(p, cube, (1, 1, 1))
    assert diff == p.z0(cube) * dot((1, 1, 1), (1, 0, 0))
    assert diff == 2
    with pytest.raises(InputError):
        family_eval(p, cube, (0, 0, 0))
    assert family_eval(p, Polytope.empty(3), (1, 0, 0)) == 0


def test_thm42_example():
    cube = Polytope.cube(3)
    p = FamilyParams("thm42", 1, 1, 1, sigma=1)
    v = family_eval(p, cube, (1, 1, 1))
    e = arb(1).exp()
    ref = e ** 3 + 1 + (e - 1) ** 3
    assert abs(float((v - ref).mid())) < 1e-30
    with pytest.raises(ParameterError):
        FamilyParams("thm42", sigma=0)


@given(seeds, vecs(3, -2, 2), st.sampled_from([F(1), F(-1), F(2), F(1, 2)]))
def test_thm42_log_translation(seed, y, sigma):
    rng = random.Random(seed)
    P = random_polytope(rng, 3)
    x = (1, F(-1, 2), F(1, 4))
    p = FamilyParams("thm42", F(1, 3), F(-2), F(3, 2), sigma=sigma)
    lhs = family_eval(p, P.translate(y), x)
    rhs = family_eval(p, P, x) * to_arb(sigma * dot(x, y)).exp()
    assert rel(lhs, rhs) < 1e-25


@given(seeds, vecs(3, -2, 2))
def test_li_linear_matches_thm41(seed, x):
    if all(c == 0 for c in x):
        return
    P = random_polytope_around_origin(random.Random(seed), 3)
    c = (F(1, 2), F(-1), F(2), F(3), F(-1, 3))
    zeta, eta = thm41_zeta(*c)
    assert li_representation(zeta, eta, P, x) == family_eval(FamilyParams("thm41", *c), P, x)


@given(seeds, vecs(3, -1, 1), st.sampled_from([F(1), F(-2), F(1, 2)]))
def test_li_exponential_matches_thm42(seed, x, sigma):
    if all(c == 0 for c in x):
        return
    P = random_polytope_around_origin(random.Random(seed), 3)
    k = (F(1), F(-1, 2), F(2))
    zeta, eta = thm42_zeta(*k, sigma)
    lhs = li_representation(zeta, eta, P, x)
    rhs = family_eval(FamilyParams("thm42", *k, sigma=sigma), P, x)
    assert rel(lhs, rhs) < 1e-20


# -- function families -------------------------------------------------------------------------


def test_c1_defaults():
    assert FamilyParams("legendre").c1 == 0
    assert FamilyParams("thm52").c1 == 0
    assert FamilyParams("laplace").c1 == 1
    with pytest.raises(ParameterError):
        FamilyParams("nope")
    with pytest.raises(ParameterError):
        FamilyParams("thm59", c2=1, sigma=1, eps=-1)


def test_thm52_cone_and_eps_zero():
    u = PLConvexS.cone(Polytope.cube(2), (1, -1), 1)
    p = FamilyParams("thm52", 2, sigma=3, eps=F(1, 2))
    x = (1, 1)
    # εσ u*(x/ε) + c1 with u* = h_P(· - y) - 1
    expected = F(3, 2) * (Polytope.cube(2).support((1, 3)) - 1) + 2
    assert family_eval(p, u, x) == expected
    q = FamilyParams("thm52", 1, 5, eps=0)
    assert family_eval(q, u, (0, 0)) == 6
    assert family_eval(q, u, (1, 0)) == 1


def test_thm59_cone_reference():
    u = PLConvexS.cone(Polytope.cube(2), (1, -1), F(1, 2))
    p = FamilyParams("thm59", 0, 1, sigma=1, eps=1)
    v = family_eval(p, u, (F(1, 2), F(1, 2)))
    assert abs(float((v - arb(CONE_2D)).mid())) < 1e-30


@given(seeds, vecs(3, -1, 1))
def test_thm59_scaling(seed, x):
    u = random_S(random.Random(seed), 3)
    p = FamilyParams("thm59", F(1, 2), 2, sigma=2, eps=F(1, 2))
    v = family_eval(p, u, x)
    first = ExpRat(F(1, 2), 1 * legendre(u).eval(scale(2, x))).to_arb()
    second = 2 * laplace_logconcave(u, scale(2, x))
    assert rel(v, first + second) < 1e-25


def test_polar_and_weird_families():
    u = PLConvexS.indicator(Polytope.cube(2), 1)
    assert family_eval(FamilyParams("polar", 3), u, (1, 1)) == ExpRat(3, -1)
    assert family_eval(FamilyParams("weird"), u.add_const(-1), (1, 0)) == 1
    with pytest.raises(ClassError):
        family_eval(FamilyParams("polar"), Polytope.cube(2), (1, 1))


def test_dual_families():
    v = PLConvexF.support(Polytope.cube(2))
    assert dual_family_eval("id_c", {"c": 2}, v, (1, 1)) == 4
    f = LogConcaveFn(v)
    assert dual_family_eval("scale_c", {"c": 3}, f, (1, 1)) == ExpRat(3, -2)
    m = dual_family_eval("mix", {"c1": 1, "c2": 1}, f, (0, 0))
    # 1/f(0) + ℒ(ι_cube)(0) = 1 + 1
    assert abs(float(m.mid()) - 2) < 1e-30
    with pytest.raises(ClassError):
        dual_family_eval("id_c", {}, PLConvexS.indicator(Polytope.cube(2)), (0, 0))
    with pytest.raises(ParameterError):
        dual_family_eval("nope", {}, v, (0, 0))


# -- handles and dualization -------------------------------------------------------------------


def test_dualize_is_involution():
    h = TransformHandle.make("laplace", c1=2)
    assert dualize(dualize(h)) == h
    assert dualize(h).input_class == "F"
    with pytest.raises(ClassError):
        dualize(TransformHandle.family(FamilyParams("thm41")))


@given(seeds)
def test_dual_legendre_is_identity(seed):
    v = random_F(random.Random(seed), 3)
    h = dualize(LEGENDRE)
    for x in [(0, 0, 0), (1, -1, 2), (F(1, 3), 0, F(-1, 2))]:
        assert h.evaluate(v, x) == v.eval(x)


@given(seeds)
def test_dual_laplace_matches_direct_route(seed):
    v = random_F(random.Random(seed), 3)
    h = dualize(TransformHandle.make("laplace"))
    x = (F(1, 2), 0, -1)
    assert rel(h.evaluate(v, x), laplace_logconcave(legendre(v), x)) < 1e-30


def test_handle_json_roundtrip_and_errors():
    h = TransformHandle.make("thm13", c1=1, c2=2, dualized=False)
    assert TransformHandle.from_dict(h.to_dict()) == h
    assert "thm13" in h.describe()
    with pytest.raises(InputError):
        TransformHandle.make("nope")
    with pytest.raises(InputError):
        LEGENDRE.evaluate(PLConvexF.linear((0, 0)), (0, 0))


# -- probes ------------------------------------------------------------------------------------


def test_probe_grid():
    g = ProbeGrid(2)
    pts = g.points()
    assert len(pts) == 25 * 25 + 64
    assert pts == ProbeGrid(2).points()
    assert all(abs(c) <= 3 for p in pts for c in p)


def test_compare_on_grid():
    u = PLConvexS.indicator(Polytope.cube(2))
    v = u.add_const(F(1, 2))
    worst, mismatch = compare_on_grid(u, v, ProbeGrid(2, random_count=4))
    assert worst == F(1, 2) and not mismatch
    w = PLConvexS.indicator(Polytope.cube(2, 0, 2))
    _, mismatch = compare_on_grid(u, w, ProbeGrid(2, random_count=0))
    assert mismatch


def test_domain_probes_lie_in_domain():
    u = random_S(random.Random(4), 3)
    for x in domain_probes(u, random.Random(0), 10):
        assert not is_inf(u.eval(x))
