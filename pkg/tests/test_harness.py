import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convexval.duality import LEGENDRE, TransformHandle
from convexval.errors import InputError, ParameterError
from convexval.families import FamilyParams
from convexval.harness import (
    CONTINUITY_SCHEDULE,
    LawCheck,
    cauchy_family_check,
    check_continuity,
    check_laws,
    continuity_curves,
    staircase_meet,
)
from convexval.fixtures import staircase
from convexval.report import LawResult, ValuationReport, merge, to_csv
from convexval.suites import SUITES, run_suite

F = Fraction


def test_lawcheck_exact_and_ball():
    chk = LawCheck("x", 1e-9)
    assert chk.record(F(1, 3), F(1, 3))
    res = chk.result()
    assert res.passed and res.exact and res.tolerance == 0.0
    assert not chk.record(F(1, 3), F(1, 2), {"k": 1})
    assert chk.witness["k"] == 1 and chk.witness["lhs"] == "1/3"


def test_legendre_laws_pass():
    rep = check_laws(LEGENDRE, ["valuation", "sln_contravariant", "translation_conjugation"], 1, count=4)
    assert rep.passed
    assert all(law.exact for law in rep.laws)


def test_laplace_laws_pass_within_tolerance():
    h = TransformHandle.make("laplace")
    rep = check_laws(h, ["valuation", "laplace_laws"], 2, count=3)
    assert rep.passed
    assert all(law.max_residual <= 1e-9 for law in rep.laws)


def test_law_class_mismatch():
    with pytest.raises(InputError):
        check_laws(LEGENDRE, ["homomorphism"], count=1)
    with pytest.raises(InputError):
        check_laws(LEGENDRE, ["no_such_law"], count=1)
    with pytest.raises(InputError):
        check_laws(TransformHandle.family(FamilyParams("thm41")), ["translation_conjugation"], count=1)
    with pytest.raises(InputError):
        check_laws(LEGENDRE, ["valuation"], count=1, n=5)


def test_wrong_family_fails_translation_law():
    # the exponential family is only log-translation covariant
    h = TransformHandle.family(FamilyParams("thm42", 1, 1, 1))
    rep = check_laws(h, ["translation_covariant"], 0, count=3)
    assert not rep.passed
    assert rep.first_failure().witness is not None
    assert check_laws(h, ["log_translation_covariant"], 0, count=3).passed


def test_check_laws_deterministic():
    a = check_laws(LEGENDRE, ["valuation"], 9, count=3).to_json()
    b = check_laws(LEGENDRE, ["valuation"], 9, count=3).to_json()
    assert a == b


# -- continuity -------------------------------------------------------------------------------


def test_staircase_meet_matches_iterated_meet():
    _, _, v = staircase(3, 5)
    assert staircase_meet(3, 5) == v


@pytest.mark.parametrize("spec", ["translate_limit", "scale_limit", "staircase_limit"])
def test_continuity_legendre(spec):
    rep = check_continuity(LEGENDRE, spec, fixture_seed=3, count=2)
    assert rep.passed, rep.summary_lines()


def test_continuity_curves_shape():
    curves = continuity_curves(LEGENDRE, "scale_limit", 0, 2, 3)
    assert curves
    for _, _, curve in curves:
        assert len(curve) == len(CONTINUITY_SCHEDULE)
        assert curve[-1] <= 1e-6


def test_continuity_rejects_unknown_sequence():
    with pytest.raises(InputError):
        check_continuity(LEGENDRE, "zigzag", count=1)


# -- Cauchy families --------------------------------------------------------------------------


def test_cauchy_linear():
    rep = cauchy_family_check("linear", {"c1": 1, "c2": 3, "sigma": 2, "d1": 5, "d2": -7})
    assert rep.passed
    with pytest.raises(ParameterError) as exc:
        cauchy_family_check("linear", {"c1": 1, "c2": 1, "sigma": 1})
    w = exc.value.witness
    r, s, t = (F(w[k]) for k in ("r", "s", "t"))
    assert r >= 0 >= t >= -s


def test_cauchy_exponential():
    assert cauchy_family_check("exponential", {"c1": 2, "c2": -1, "sigma": F(1, 2), "d1": 3, "d2": -3}).passed
    with pytest.raises(ParameterError) as exc:
        cauchy_family_check("exponential", {"c1": 1, "c2": 1, "sigma": 1, "d1": 1, "d2": 1})
    assert exc.value.witness is not None
    with pytest.raises(ParameterError):
        cauchy_family_check("exponential", {"sigma": 0})
    with pytest.raises(InputError):
        cauchy_family_check("quadratic", {})


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_cauchy_linear_property(c1, sigma, d1, d2):
    rep = cauchy_family_check("linear", {"c1": c1, "c2": c1 + sigma, "sigma": sigma, "d1": d1, "d2": d2})
    assert rep.passed


# -- reports ----------------------------------------------------------------------------------


def _report(suite, seed, laws):
    rep = ValuationReport(suite, seed, 1)
    for name, res, ok in laws:
        rep.add(LawResult(name, res, 1e-9, ok, checks=2))
    return rep


def test_report_json_roundtrip():
    rep = _report("s", 1, [("a", 0.0, True), ("b", 1e-3, False)])
    back = ValuationReport.from_dict(json.loads(rep.to_json()))
    assert back.to_json() == rep.to_json()
    assert not back.passed and back.first_failure().name == "b"


def test_expected_failure_counts_as_ok():
    law = LawResult("w", 0.2, 1e-9, False, expect_fail=True)
    rep = ValuationReport("s", 0, 1, [law])
    assert rep.passed
    assert "expected failure observed" in rep.summary_lines()[0]


@given(st.permutations(range(4)))
def test_merge_is_order_independent(order):
    reps = [
        _report("s", 1, [("a", 0.1, True)]),
        _report("s", 2, [("a", 0.3, False)]),
        _report("t", 1, [("b", 0.0, True)]),
        _report("s", 3, [("c", 0.0, True)]),
    ]
    base = to_csv(reps)
    assert to_csv([reps[i] for i in order]) == base
    rows = merge(reps)
    a = next(r for r in rows if r["law"] == "a")
    assert a["checks"] == 4 and a["max_residual"] == 0.3 and a["pass"] is False and a["seed"] == 1


# -- suites -----------------------------------------------------------------------------------


def test_suite_registry():
    assert {"dlist", "laplace-dlist", "cauchy", "continuity", "weird-counterexample"} <= set(SUITES)
    with pytest.raises(InputError):
        run_suite("nope")


def test_small_suites_pass():
    for name in ("cauchy", "thm42", "li-consistency", "gradient"):
        rep = run_suite(name, count=2)
        assert rep.passed, (name, rep.summary_lines())


def test_weird_suite_records_expected_failure():
    rep = run_suite("weird-counterexample", count=2)
    assert rep.passed
    stored = rep.laws[-1]
    assert stored.expect_fail and not stored.passed
    assert stored.max_residual == pytest.approx(0.2092, abs=1e-3)
