"""Law checkers for transforms and valuation families.

Every checker draws a deterministic fixture stream from a seed, evaluates
both sides of an identity at probe points and folds the residuals into a
:class:`~convexval.report.LawResult`.  Exact values must agree exactly;
comparisons involving balls pass when the relative residual is within the
tolerance.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .duality import TransformHandle
from .errors import InputError, ParameterError
from .fixtures import (
    normalize_min,
    rand_vec,
    random_cone,
    random_F,
    random_polytope,
    random_S,
    random_split,
    staircase,
)
from .functions import PLConvexF, PLConvexS, is_inf, join_meet, meet_S
from .hpreal import to_arb, upper
from .polytope import Polytope
from .rational import ZERO, Rat, dot, mat_vec, scale, sub, to_rat, unit
from .report import LawResult, ValuationReport
from .transforms import legendre_S
from .unimodular import random_unimodular
from .values import as_arb, compare, fmt_value, v_add, v_mul_exp

DEFAULT_TOL = 1e-9
CONTINUITY_SCHEDULE = (1, 2, 4, 8, 16, 32)
CONTINUITY_TOL = 1e-6
# Monotonicity is certified on the schedule entries i >= MONOTONE_FROM; the
# residual of a piecewise-linear limit is only eventually monotone.
MONOTONE_FROM = 4
# Residuals below this are indistinguishable from ball radii at 128 bits.
NOISE_FLOOR = 1e-30


class LawCheck:
    """Accumulates residuals for one named law."""

    def __init__(self, name: str, tol: float = DEFAULT_TOL, fixture_class: str = "generic"):
        self.name = name
        self.tol = tol
        self.fixture_class = fixture_class
        self.max_residual = 0.0
        self.checks = 0
        self.all_exact = True
        self.passed = True
        self.witness = None

    def record(self, lhs, rhs, witness: Callable[[], dict] | dict | None = None):
        res, exact, equal = compare(lhs, rhs)
        self.checks += 1
        self.all_exact = self.all_exact and exact
        ok = equal if exact else res <= self.tol
        self.max_residual = max(self.max_residual, res)
        if not ok:
            if self.passed:
                w = witness() if callable(witness) else dict(witness or {})
                w["lhs"] = fmt_value(lhs)
                w["rhs"] = fmt_value(rhs)
                self.witness = w
            self.passed = False
        return ok

    def fail(self, witness: dict):
        self.checks += 1
        if self.passed:
            self.witness = witness
        self.passed = False
        self.max_residual = float("inf")

    def result(self, expect_fail: bool = False) -> LawResult:
        return LawResult(
            name=self.name,
            max_residual=self.max_residual,
            tolerance=0.0 if self.all_exact else self.tol,
            passed=self.passed,
            checks=self.checks,
            fixture_class=self.fixture_class,
            exact=self.all_exact,
            witness=self.witness,
            expect_fail=expect_fail,
        )


# -- fixtures and probes --------------------------------------------------------------------


def _vs(v) -> list:
    return [str(c) for c in v]


def probe_points(rng: random.Random, n: int, rich: bool) -> list:
    """Coarse lattice plus random points (rich) or a handful of random points."""
    pts = []
    if rich:
        axis = [to_rat(Fraction(k, 2)) for k in range(-2, 3)]
        from itertools import product

        pts = [tuple(p) for p in product(axis, repeat=n)]
        extra = 8
    else:
        pts = [tuple(ZERO for _ in range(n)), unit(n, 0)]
        extra = 4
    for _ in range(extra):
        pts.append(rand_vec(rng, n, -2, 2))
    return pts


def fixture_S(rng: random.Random, n: int, i: int) -> PLConvexS:
    return random_cone(rng, n) if i % 2 == 0 else random_S(rng, n)


def fixture_F(rng: random.Random, n: int, i: int) -> PLConvexF:
    return random_F(rng, n) if i % 2 == 0 else legendre_S(random_S(rng, n))


def fixture_for(cls: str, rng: random.Random, n: int, i: int):
    if cls == "S":
        return fixture_S(rng, n, i)
    if cls == "F":
        return fixture_F(rng, n, i)
    if cls == "polytope":
        return random_polytope(rng, n)
    raise InputError(f"no fixtures for class {cls!r}")


def _nonzero_probes(pts):
    return [x for x in pts if any(x)]


def is_exact_handle(h: TransformHandle) -> bool:
    fam = h._family
    if h.transform == "dual_family":
        p = dict(h.params)
        return p["variant"] != "mix" or to_rat(p.get("c2", 0)) == 0
    if fam is None:
        return False
    if fam.variant in ("thm41", "thm52", "legendre", "polar"):
        return True
    if fam.variant in ("thm59", "thm13"):
        return fam.c2 == 0
    return False


class _Ctx:
    """Shared state of one ``check_laws`` run."""

    def __init__(self, handle: TransformHandle, seed: int, count: int, n: int, tol: float, normalize=False):
        self.h = handle
        self.normalize = normalize
        self.seed = seed
        self.count = count
        self.n = n
        self.tol = tol
        self.rich = is_exact_handle(handle)

    def rng(self, law: str) -> random.Random:
        return random.Random(f"{self.seed}:{self.h.describe()}:{law}")

    def probes(self, rng, skip_origin=False):
        pts = probe_points(rng, self.n, self.rich)
        if skip_origin or self.h.base_class == "polytope":
            pts = _nonzero_probes(pts)
        return pts

    def fixtures(self, rng):
        cls = self.h.input_class
        for i in range(self.count):
            obj = fixture_for(cls, rng, self.n, i)
            yield normalize_min(obj) if self.normalize else obj


def _wit(obj, **extra) -> dict:
    d = {"fixture": obj.to_dict()}
    for k, v in extra.items():
        d[k] = _vs(v) if isinstance(v, tuple) else str(v)
    return d


# -- individual laws ------------------------------------------------------------------------


def _valuation(ctx: _Ctx) -> list:
    rng = ctx.rng("valuation")
    h = ctx.h
    cls = h.input_class
    split_chk = LawCheck("valuation", ctx.tol, "split")
    stair_chk = LawCheck("valuation", ctx.tol, "staircase")
    probes = ctx.probes(rng)
    for i in range(ctx.count):
        if cls == "polytope":
            P = random_polytope(rng, ctx.n)
            a = rand_vec(rng, ctx.n, -1, 1, nonzero=True)
            lo, hi = P.min_dot(a), P.support(a)
            t = lo + (hi - lo) * rng.randint(1, 3) / 4
            parts = (P.clip(a, t), P.clip(tuple(-c for c in a), -t), P, P.slice(a, t))
            _check_quad(h, parts, probes, split_chk, {"polytope": P.to_dict(), "a": _vs(a), "t": str(t)})
            continue
        w = random_S(rng, ctx.n) if i % 2 else random_cone(rng, ctx.n)
        u, v, a, t = random_split(rng, w)
        if cls == "F":
            u, v = legendre_S(u), legendre_S(v)
        join, meet, convex = join_meet(u, v)
        if join is None or meet is None or not convex:
            split_chk.fail({"fixture": w.to_dict(), "reason": "split pair not in lattice"})
            continue
        _check_quad(h, (join, meet, u, v), probes, split_chk, {"fixture": w.to_dict(), "a": _vs(a), "t": str(t)})
    if cls != "polytope":
        us, joins, _ = staircase(ctx.n, 4)
        for k in range(len(us) - 1):
            u, v = us[k], us[k + 1]
            join, meet = joins[k], meet_S(u, v)
            if cls == "F":
                u, v = legendre_S(u), legendre_S(v)
                join, meet, _ = join_meet(u, v)
            _check_quad(h, (join, meet, u, v), probes, stair_chk, {"staircase_index": k + 1})
    return [split_chk.result()] + ([] if cls == "polytope" else [stair_chk.result()])


def _check_quad(h, parts, probes, chk, witness):
    ej, em, eu, ev = (h.evaluator(p) if not (isinstance(p, Polytope) and p.is_empty) else None for p in parts)

    def val(e, x):
        return ZERO if e is None else e(x)

    for x in probes:
        lhs = v_add(val(ej, x), val(em, x))
        rhs = v_add(val(eu, x), val(ev, x))
        chk.record(lhs, rhs, lambda: dict(witness, x=_vs(x)))


def _sln(ctx: _Ctx, contra: bool, maps: int = 20) -> list:
    name = "sln_contravariant" if contra else "sln_covariant"
    rng = ctx.rng(name)
    chk = LawCheck(name, ctx.tol, "unimodular")
    probes = ctx.probes(rng)
    pool = [random_unimodular(rng.randrange(2 ** 32), 2, ctx.n) for _ in range(maps)]
    for i, obj in enumerate(ctx.fixtures(rng)):
        phi = pool[i % maps]
        moved = obj.apply_map(phi) if isinstance(obj, Polytope) else obj.compose(phi)
        lhs_e, rhs_e = ctx.h.evaluator(moved), ctx.h.evaluator(obj)
        back = phi.transpose.matrix if contra else phi.inverse.matrix
        for x in probes:
            chk.record(lhs_e(x), rhs_e(mat_vec(back, x)), lambda: _wit(obj, x=x, phi=str(phi.to_list())))
    return [chk.result()]


def _shift_laws(ctx: _Ctx, name: str, first: Callable, second: Callable, cls_name: str) -> list:
    """Generic pair of laws for ``τ_y`` and ``+ℓ_y`` on the input side."""
    rng = ctx.rng(name)
    c1 = LawCheck(f"{name}:translate", ctx.tol, cls_name)
    c2 = LawCheck(f"{name}:dual_translate", ctx.tol, cls_name)
    probes = ctx.probes(rng)
    for obj in ctx.fixtures(rng):
        y = rand_vec(rng, ctx.n, -1, 1)
        base = ctx.h.evaluator(obj)
        e1 = ctx.h.evaluator(obj.translate(y))
        e2 = ctx.h.evaluator(obj.dual_translate(y))
        for x in probes:
            c1.record(e1(x), first(base, x, y), lambda: _wit(obj, x=x, y=y))
            c2.record(e2(x), second(base, x, y), lambda: _wit(obj, x=x, y=y))
    return [c1.result(), c2.result()]


def _translation_conjugation(ctx, sigma=1, eps=1, name="translation_conjugation"):
    sigma, eps = to_rat(sigma), to_rat(eps)
    return _shift_laws(
        ctx,
        name,
        lambda e, x, y: v_add(e(x), sigma * dot(x, y)),
        lambda e, x, y: e(sub(x, scale(eps, y))),
        "cone+generic",
    )


def _log_conjugation(ctx, sigma=-1, eps=1, name="log_conjugation"):
    sigma, eps = to_rat(sigma), to_rat(eps)
    return _shift_laws(
        ctx,
        name,
        lambda e, x, y: v_mul_exp(e(x), sigma * dot(x, y)),
        lambda e, x, y: e(sub(x, scale(eps, y))),
        "cone+generic",
    )


def _homomorphism(ctx, name="homomorphism"):
    return _shift_laws(
        ctx,
        name,
        lambda e, x, y: e(sub(x, y)),
        lambda e, x, y: v_add(e(x), dot(x, y)),
        "finite",
    )


def _log_homomorphism(ctx, sign=-1, name="log_homomorphism"):
    sign = to_rat(sign)
    return _shift_laws(
        ctx,
        name,
        lambda e, x, y: e(sub(x, y)),
        lambda e, x, y: v_mul_exp(e(x), sign * dot(x, y)),
        "positive",
    )


def _polytope_translation(ctx: _Ctx, log: bool) -> list:
    name = "log_translation_covariant" if log else "translation_covariant"
    fam = ctx.h._family
    rng = ctx.rng(name)
    chk = LawCheck(name, ctx.tol, "polytope")
    for _ in range(ctx.count):
        P = random_polytope(rng, ctx.n)
        y = rand_vec(rng, ctx.n, -1, 1)
        x = rand_vec(rng, ctx.n, -2, 2, nonzero=True)
        lhs = ctx.h.evaluate(P.translate(y), x)
        base = ctx.h.evaluate(P, x)
        if log:
            rhs = v_mul_exp(base, fam.z0(P) * dot(x, y))
        else:
            rhs = v_add(base, fam.z0(P) * dot(x, y))
        chk.record(lhs, rhs, lambda: {"polytope": P.to_dict(), "x": _vs(x), "y": _vs(y)})
    return [chk.result()]


LAWS = {
    "valuation": _valuation,
    "sln_contravariant": lambda ctx, **kw: _sln(ctx, True, **kw),
    "sln_covariant": lambda ctx, **kw: _sln(ctx, False, **kw),
    "translation_conjugation": _translation_conjugation,
    "log_conjugation": _log_conjugation,
    "laplace_laws": lambda ctx: _log_conjugation(ctx, 1, 1, "laplace_laws"),
    "homomorphism": _homomorphism,
    "log_homomorphism": _log_homomorphism,
    "mix_laws": lambda ctx: _log_homomorphism(ctx, 1, "mix_laws"),
    "translation_covariant": lambda ctx: _polytope_translation(ctx, False),
    "log_translation_covariant": lambda ctx: _polytope_translation(ctx, True),
}

_LAW_CLASSES = {
    "translation_covariant": ("polytope",),
    "log_translation_covariant": ("polytope",),
    "homomorphism": ("F",),
    "log_homomorphism": ("F",),
    "mix_laws": ("F",),
    "translation_conjugation": ("S",),
    "log_conjugation": ("S",),
    "laplace_laws": ("S",),
    "sln_contravariant": ("S", "polytope"),
    "sln_covariant": ("F",),
    "valuation": ("S", "F", "polytope"),
}


def check_laws(
    handle: TransformHandle,
    law_set,
    fixture_seed: int = 0,
    count: int = 20,
    n: int = 3,
    tol: float = DEFAULT_TOL,
    suite: str | None = None,
    normalize: bool = False,
    **opts,
) -> ValuationReport:
    """Run the named laws on ``count`` seeded fixtures.

    ``opts`` maps a law name to keyword overrides, e.g.
    ``{"translation_conjugation": {"sigma": 2, "eps": -1}}``.  With
    ``normalize`` class-S fixtures are shifted to have minimum 0.
    """
    if not 1 <= n <= 4:
        raise InputError("dimension must be in 1..4")
    ctx = _Ctx(handle, fixture_seed, count, n, tol, normalize)
    report = ValuationReport(suite or handle.describe(), fixture_seed, 0)
    for law in law_set:
        if law not in LAWS:
            raise InputError(f"unknown law {law!r}")
        if handle.input_class not in _LAW_CLASSES[law]:
            raise InputError(f"law {law!r} does not apply to {handle.describe()} (class {handle.input_class})")
        fn = LAWS[law]
        kwargs = opts.get(law, {})
        for res in fn(ctx, **kwargs):
            report.add(res)
        report.fixtures += count
    return report


# -- continuity -----------------------------------------------------------------------------


def _sequence(spec: str, u: PLConvexS, rng: random.Random, n: int):
    """``(u_i for i in schedule, u_limit)`` for a sequence spec."""
    if spec == "translate_limit":
        y = rand_vec(rng, n, -1, 1)
        e = unit(n, 0)
        terms = [u.translate(tuple(a + b / 2 ** i for a, b in zip(y, e))) for i in CONTINUITY_SCHEDULE]
        return terms, u.translate(y)
    if spec == "scale_limit":
        terms = [u.scale_arg(1 + to_rat(Fraction(1, 2 ** i))) for i in CONTINUITY_SCHEDULE]
        return terms, u
    if spec == "staircase_limit":
        top = 2 * CONTINUITY_SCHEDULE[-1]
        terms = [staircase_meet(n, m) for m in CONTINUITY_SCHEDULE]
        return terms, staircase_meet(n, top)
    raise InputError(f"unknown sequence spec {spec!r}")


def staircase_meet(n: int, m: int) -> PLConvexS:
    """``v_m = u_1 ∧ ... ∧ u_m`` built from its known graph points.

    ``v_m`` takes the value ``(k²+k)/2`` on ``{k}×[0,1]^{n-1}``, ``k = 0..m``.
    """
    from itertools import product

    corners = list(product((0, 1), repeat=n - 1))
    pts = []
    for k in range(m + 1):
        for c in corners:
            pts.append(((to_rat(k),) + tuple(to_rat(z) for z in c), to_rat(Fraction(k * k + k, 2))))
    return PLConvexS._trusted(n, pts)


def continuity_curves(
    handle: TransformHandle,
    sequence_spec: str,
    fixture_seed: int = 0,
    count: int = 5,
    n: int = 3,
) -> list:
    """``[(fixture index, x, residuals along the schedule)]``.

    The residual at schedule entry ``i`` is ``|Φ(u_i)(x) - Φ(u)(x)|`` (a
    rigorous upper bound when balls are involved).
    """
    if handle.input_class != "S":
        raise InputError("continuity sequences are defined on class-S inputs")
    rng = random.Random(f"{fixture_seed}:{handle.describe()}:{sequence_spec}")
    fixtures = 1 if sequence_spec == "staircase_limit" else count
    out = []
    for k in range(fixtures):
        u = fixture_S(rng, n, rng.randrange(2))
        terms, limit = _sequence(sequence_spec, u, rng, n)
        probes = _continuity_probes(rng, n, sequence_spec, is_exact_handle(handle))
        lim_e = handle.evaluator(limit)
        term_e = [handle.evaluator(t) for t in terms]
        for x in probes:
            target = lim_e(x)
            out.append((k, x, [_abs_residual(e(x), target) for e in term_e]))
    return out


def check_continuity(
    handle: TransformHandle,
    sequence_spec: str,
    fixture_seed: int = 0,
    count: int = 5,
    n: int = 3,
    tol: float = CONTINUITY_TOL,
    suite: str | None = None,
) -> ValuationReport:
    """Residuals ``|Φ(u_i)(x) - Φ(u)(x)|`` along the doubling schedule.

    Passes when, at every probe, the residual is non-increasing over the
    schedule entries ``i >= MONOTONE_FROM`` (up to :data:`NOISE_FLOOR`) and
    the final residual is at most ``tol``.  The curve of the first failing
    probe (or else the worst one) is kept as the witness.
    """
    curves = continuity_curves(handle, sequence_spec, fixture_seed, count, n)
    chk = LawCheck(f"continuity:{sequence_spec}", tol, sequence_spec)
    chk.all_exact = False
    worst = None
    for _, x, curve in curves:
        chk.checks += 1
        tail = [c for i, c in zip(CONTINUITY_SCHEDULE, curve) if i >= MONOTONE_FROM]
        mono = all(b <= a or b <= NOISE_FLOOR for a, b in zip(tail, tail[1:]))
        chk.max_residual = max(chk.max_residual, curve[-1])
        if worst is None or curve[-1] > worst[1][-1]:
            worst = (x, curve)
        if not (mono and curve[-1] <= tol) and chk.passed:
            chk.passed = False
            worst = (x, curve)
    res = chk.result()
    if worst is not None:
        res.witness = {"x": _vs(worst[0]), "curve": [repr(c) for c in worst[1]], "schedule": list(CONTINUITY_SCHEDULE)}
    fixtures = 1 if sequence_spec == "staircase_limit" else count
    report = ValuationReport(suite or f"continuity:{handle.describe()}", fixture_seed, fixtures)
    report.add(res)
    return report


def _abs_residual(a, b) -> float:
    if isinstance(a, Rat) and isinstance(b, Rat):
        return float(abs(a - b))
    if is_inf(a) or is_inf(b):
        return 0.0 if is_inf(a) and is_inf(b) else float("inf")
    return upper(as_arb(a) - as_arb(b))


def _continuity_probes(rng, n, spec, rich):
    if spec == "staircase_limit":
        pts = [tuple(to_rat(r) if j == 0 else ZERO for j in range(n)) for r in (-2, -1, 1, 2, 3)]
        pts.append(tuple(to_rat(Fraction(1, 2)) for _ in range(n)))
        return pts
    return probe_points(rng, n, False) if not rich else probe_points(rng, n, False) + [rand_vec(rng, n) for _ in range(8)]


# -- Cauchy-type functional equations -------------------------------------------------------


def _grid_triples(grid):
    """Triples ``(r, s, t)`` with ``r >= 0 >= t >= -s``."""
    vals = [to_rat(g) for g in grid]
    nonneg = sorted({abs(v) for v in vals})
    for r in nonneg:
        for s in nonneg:
            for t in nonneg:
                if t <= s:
                    yield r, s, -t


DEFAULT_CAUCHY_GRID = tuple(Fraction(k, 2) for k in range(0, 7))


def cauchy_family_check(kind: str, constants: dict, grid=DEFAULT_CAUCHY_GRID, tol: float = 1e-12) -> ValuationReport:
    """Verify the solution families of the linear and exponential equations.

    linear: ``f1(s) = c1 s + d1``, ``f2(r) = c2 r + d2`` satisfy
    ``f1(s) + f2(r) - σt = f1(s+t) + f2(r-t)`` iff ``c1 - c2 + σ = 0``.
    exponential: ``f1(s) = c1 e^{-σs} + d1``, ``f2(r) = c2 e^{σr} + d2`` satisfy
    ``e^{-σt}(f1(s) + f2(r)) = f1(s+t) + f2(r-t)`` iff ``d1 + d2 = 0``.

    A violated constraint raises :class:`ParameterError` carrying the first
    grid triple where the equation fails.
    """
    c = {k: to_rat(v) for k, v in constants.items()}
    c1, c2, sigma = c.get("c1", ZERO), c.get("c2", ZERO), c.get("sigma", ZERO)
    d1, d2 = c.get("d1", ZERO), c.get("d2", ZERO)
    chk = LawCheck(f"cauchy:{kind}", tol, kind)
    if kind == "linear":
        f1 = lambda s: c1 * s + d1  # noqa: E731
        f2 = lambda r: c2 * r + d2  # noqa: E731
        for r, s, t in _grid_triples(grid):
            chk.record(f1(s) + f2(r) - sigma * t, f1(s + t) + f2(r - t), {"r": str(r), "s": str(s), "t": str(t)})
        constraint = c1 - c2 + sigma == 0
    elif kind == "exponential":
        if sigma == 0:
            raise ParameterError("exponential family needs σ != 0")

        def f1(s):
            return to_arb(c1) * to_arb(-sigma * s).exp() + to_arb(d1)

        def f2(r):
            return to_arb(c2) * to_arb(sigma * r).exp() + to_arb(d2)

        for r, s, t in _grid_triples(grid):
            lhs = to_arb(-sigma * t).exp() * (f1(s) + f2(r))
            rhs = f1(s + t) + f2(r - t)
            chk.record(lhs, rhs, {"r": str(r), "s": str(s), "t": str(t)})
        constraint = d1 + d2 == 0
    else:
        raise InputError(f"unknown Cauchy family {kind!r}")
    result = chk.result()
    if not constraint:
        if result.passed:
            raise ParameterError(f"{kind} constraint violated but no violating triple on the grid")
        raise ParameterError(f"{kind} family constraint violated", witness=result.witness)
    report = ValuationReport(f"cauchy:{kind}", 0, 1)
    report.add(result)
    return report


__all__ = [
    "LawCheck",
    "LAWS",
    "check_laws",
    "check_continuity",
    "continuity_curves",
    "cauchy_family_check",
    "staircase_meet",
    "probe_points",
]
