"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line; the lines are repeated in
the terminal summary so they survive output capture.
"""

import random

import pytest

from convexval.duality import LEGENDRE, dualize
from convexval.harness import fixture_F, fixture_S
from convexval.suites import run_suite
from convexval.transforms import legendre

SEED = 0xC0FFEE
RESULTS = []


def report(k: int, title: str, ok: bool, detail: str = ""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    RESULTS.append(line)
    assert ok, line


def _laws(rep, *fragments):
    return [law for law in rep.laws if any(f in law.name for f in fragments)]


def _worst(laws):
    return max((law.max_residual for law in laws), default=0.0)


def _exact_zero(laws):
    return all(law.exact and law.max_residual == 0.0 and law.passed for law in laws)


def _failures(*reps):
    return [f"{r.suite}:{law.name}" for r in reps for law in r.laws if not law.ok]


def test_criterion_1_legendre_dlist():
    rep = run_suite("dlist", SEED, count=100)
    rational = [law for law in rep.laws if law.name.split(":")[0] in ("D2", "D3", "D4", "D5", "D6", "D7", "D10", "D13", "D14")]
    rational += [law for law in rep.laws if law.name.startswith("D12") and law.fixture_class == "split"]
    order = _laws(rep, "D11")
    ok = rep.passed and _exact_zero(rational) and len(rational) >= 10 and _exact_zero(order)
    report(1, "Legendre D1-D14 on 100 fixtures", ok, f"{len(rep.laws)} laws, failures={_failures(rep)}")


def test_criterion_2_laplace_dlist():
    rep = run_suite("laplace-dlist", SEED, count=50)
    point = [law for law in rep.laws if not law.name.startswith("D8")]
    ok = rep.passed and all(law.max_residual <= 1e-9 for law in point) and len(_laws(rep, "D8")) == 3
    report(2, "Laplace D1-D8 on 50 fixtures", ok, f"max rel residual {_worst(point):.2e}")


def test_criterion_3_premise_suites():
    r11 = run_suite("legendre-thm11", SEED)
    r12 = run_suite("logpolar-thm12", SEED)
    r13 = run_suite("laplace-thm13", SEED)
    legendre_ok = r11.passed and _exact_zero(_laws(r11, "valuation", "sln_contravariant", "translation_conjugation"))
    legendre_ok = legendre_ok and len(_laws(r11, "continuity")) > 0
    polar_ok = r12.passed and _exact_zero(_laws(r12, "sln_contravariant", "log_conjugation"))
    mix_ok = r13.passed and _worst(_laws(r13, "valuation", "laplace_laws", "sln")) <= 1e-9
    ok = legendre_ok and polar_ok and mix_ok
    report(3, "premise laws for Legendre, polar and c1/f° + c2 Lf", ok, f"failures={_failures(r11, r12, r13)}")


def test_criterion_4_polytope_families():
    r41 = run_suite("thm41", SEED, count=100)
    r42 = run_suite("thm42", SEED, count=100)
    trans = _laws(r41, "translation_covariant")
    log_trans = _laws(r42, "log_translation_covariant")
    ok = (
        r41.passed
        and len(trans) == 5
        and all(law.checks == 100 for law in trans)
        and _exact_zero(trans)
        and r42.passed
        and len(log_trans) == 5
        and all(law.checks == 100 and law.max_residual <= 1e-12 for law in log_trans)
    )
    report(4, "translation laws of the polytope families", ok, f"exponential max rel residual {_worst(log_trans):.2e}")


def test_criterion_5_representation_consistency():
    rep = run_suite("li-consistency", SEED, count=50)
    lin, expo = _laws(rep, "linear"), _laws(rep, "exponential")
    ok = rep.passed and _exact_zero(lin) and all(law.max_residual <= 1e-12 and law.checks == 50 for law in expo)
    report(5, "representation matches both polytope families", ok, f"exponential max rel residual {_worst(expo):.2e}")


def test_criterion_6_integration_routes():
    rep = run_suite("fub", SEED, count=20)
    routes, mc = _laws(rep, "shadow_profile"), _laws(rep, "monte_carlo")
    ok = rep.passed and _worst(routes) <= 1e-12 and _worst(mc) <= 1e-2 and all(law.checks == 20 for law in mc)
    report(6, "simplex vs profile vs Monte Carlo", ok, f"routes {_worst(routes):.2e}, MC {_worst(mc):.2e}")


def test_criterion_7_round_trip_and_duality():
    rng = random.Random(f"{SEED}:round-trip")
    bad = 0
    for i in range(200):
        u = fixture_S(rng, 3, i)
        v = fixture_F(rng, 3, i)
        bad += legendre(legendre(u)) != u
        bad += legendre(legendre(v)) != v
    rep = run_suite("duality-thm61-64", SEED, count=30)
    thm61, thm64 = _laws(rep, "thm61"), _laws(rep, "thm64")
    ident = dualize(dualize(LEGENDRE)) == LEGENDRE
    ok = bad == 0 and ident and rep.passed and _exact_zero(thm61) and _worst(thm64) <= 1e-9
    report(7, "round trip on 200 fixtures and dual valuations", ok, f"round-trip mismatches={bad}, thm64 {_worst(thm64):.2e}")


def test_criterion_8_counterexample():
    rep = run_suite("weird-counterexample", SEED)
    first, second, stored = rep.laws
    ok = (
        rep.passed
        and first.passed
        and not first.expect_fail
        and second.expect_fail
        and not second.passed
        and stored.expect_fail
        and not stored.passed
        and stored.witness is not None
    )
    report(8, "counterexample passes law 1 and fails law 2", ok, f"stored witness residual {stored.max_residual:.3f}")


def test_criterion_9_finiteness_bound():
    rep = run_suite("laplace-bound", SEED, count=30)
    (law,) = rep.laws
    ok = rep.passed and law.checks == 30 and law.max_residual < 1
    report(9, "Laplace finiteness bound, strict", ok, f"max value/bound {law.max_residual:.2e}")


def test_criterion_10_gradient():
    rep = run_suite("gradient", SEED, count=20)
    (law,) = rep.laws
    ok = rep.passed and law.checks == 60 and law.max_residual <= 1e-6
    report(10, "gradient at the origin equals the moment vector", ok, f"max abs error {law.max_residual:.2e}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
