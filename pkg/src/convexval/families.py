"""Closed-form valuation families and their evaluators."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache

from flint import arb

from .auxforms import weird_valuation
from .errors import ClassError, InputError, ParameterError
from .functions import LogConcaveFn, PLConvexF, PLConvexS
from .hpreal import ExpRat, to_arb, working_precision
from .polytope import Polytope
from .rational import ONE, ZERO, Rat, dot, fmt_rat, is_zero, scale, to_rat, vec
from .transforms import laplace_logconcave, laplace_polytope, legendre_F, legendre_S

ADDITIVE_C1 = ("legendre", "thm52")
VARIANTS = ("thm41", "thm42", "thm52", "thm59", "legendre", "laplace", "weird", "polar", "thm13")


@dataclass(frozen=True)
class FamilyParams:
    """Constants of one classified family.

    ``thm41``: ``c1 h_P + c2 h_{-P} + c3 V_0 + c4 V_n + c5 x·m(P)``.
    ``thm42``: ``c1 e^{σh_P} + c2 e^{-σh_{-P}} + c3 ℒP(σx)``.
    ``thm52``: ``εσ u*(x/ε) + c1`` for ``ε != 0``, ``c2 δ_x^0 + c1`` for ``ε = 0``.
    ``thm59``: ``c1 e^{εσ u*(x/ε)} + c2 ∫ e^{σx·y - εσu(y)} dy``.
    ``c1`` defaults to 0 for ``legendre`` and ``thm52`` and to 1 otherwise.
    ``legendre``: ``u* + c1``; ``laplace``: ``c1 ℒf``; ``weird``: ``Ẑu``;
    ``polar``: ``c1 f°``; ``thm13``: ``c1/f° + c2 ℒf``.
    """

    variant: str
    c1: Rat | None = None
    c2: Rat = ZERO
    c3: Rat = ZERO
    c4: Rat = ZERO
    c5: Rat = ZERO
    sigma: Rat = ONE
    eps: Rat = ONE

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ParameterError(f"unknown family variant {self.variant!r}")
        if self.c1 is None:
            # c1 is an additive constant for these two, a multiplier elsewhere
            object.__setattr__(self, "c1", ZERO if self.variant in ADDITIVE_C1 else ONE)
        for name in ("c1", "c2", "c3", "c4", "c5", "sigma", "eps"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        if self.variant in ("thm42", "thm59") and self.sigma == 0:
            raise ParameterError(f"{self.variant} requires σ != 0")
        if self.variant == "thm59" and self.c2 != 0 and self.eps * self.sigma <= 0:
            raise ParameterError("thm59 with c2 != 0 requires εσ > 0")

    @property
    def input_class(self) -> str:
        if self.variant in ("thm41", "thm42"):
            return "polytope"
        return "S"

    def z0(self, P: Polytope):
        """Translation multiplier ``Z_0(P)`` for the polytope families."""
        V0, Vn, _ = P.measures()
        if self.variant == "thm41":
            return (self.c1 - self.c2) * V0 + self.c5 * Vn
        if self.variant == "thm42":
            return self.sigma
        raise ParameterError("Z_0 is defined for the polytope families only")

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: (v if k == "variant" else fmt_rat(v)) for k, v in d.items()}

    @classmethod
    def from_dict(cls, data: dict) -> "FamilyParams":
        try:
            return cls(**data)
        except TypeError as exc:
            raise InputError(f"invalid family parameters: {exc}") from exc


def _base(obj) -> PLConvexS:
    u = obj.base if isinstance(obj, LogConcaveFn) else obj
    if not isinstance(u, PLConvexS):
        raise ClassError("this family acts on class-S functions")
    return u


@lru_cache(maxsize=64)
def _scaled(u: PLConvexS, lam: Rat) -> PLConvexS:
    # keeps the cached cell decomposition alive across probe points
    return u.scale_val(lam)


def family_eval(params: FamilyParams, obj, x, prec: int | None = None):
    """Evaluate a family at ``x``; exact (``Rat``/``ExpRat``) where possible."""
    x = vec(x)
    v = params.variant
    if v in ("thm41", "thm42"):
        if not isinstance(obj, Polytope):
            raise ClassError(f"{v} acts on polytopes")
        if is_zero(x):
            raise InputError(f"{v} is evaluated at x != 0")
        if obj.is_empty:
            return ZERO
        hp, hm = obj.support(x), -obj.min_dot(x)
        if v == "thm41":
            V0, Vn, m = obj.measures()
            return params.c1 * hp + params.c2 * hm + params.c3 * V0 + params.c4 * Vn + params.c5 * dot(x, m)
        s = params.sigma
        with working_precision(prec):
            out = to_arb(params.c1) * to_arb(s * hp).exp() + to_arb(params.c2) * to_arb(-s * hm).exp()
            if params.c3:
                out += to_arb(params.c3) * laplace_polytope(obj, scale(s, x), prec)
            return out
    u = _base(obj)
    if v == "legendre":
        return legendre_S(u).eval(x) + params.c1
    if v == "thm52":
        if params.eps == 0:
            return (params.c2 if is_zero(x) else ZERO) + params.c1
        es = params.eps * params.sigma
        return es * legendre_S(u).eval(scale(1 / params.eps, x)) + params.c1
    if v == "polar":
        return ExpRat(params.c1, -legendre_S(u).eval(x))
    if v == "weird":
        return weird_valuation(u, x, prec)
    if v == "laplace":
        with working_precision(prec):
            return to_arb(params.c1) * laplace_logconcave(u, x, prec)
    if v == "thm13":
        p = FamilyParams("thm59", params.c1, params.c2, sigma=1, eps=1)
        return family_eval(p, u, x, prec)
    # thm59
    es = params.eps * params.sigma
    if es == 0:
        return ZERO
    first = ExpRat(params.c1, es * legendre_S(u).eval(scale(1 / params.eps, x)))
    if params.c2 == 0:
        return first
    with working_precision(prec):
        lap = laplace_logconcave(_scaled(u, es), scale(params.sigma, x), prec)
        return first.to_arb(prec) + to_arb(params.c2) * lap


# -- dual families on the finite / positive side -----------------------------------------


DUAL_VARIANTS = ("id_c", "scale_c", "mix")


def dual_family_eval(variant: str, params: dict, obj, x, prec: int | None = None):
    """``id_c``: ``u + c``; ``scale_c``: ``c f``; ``mix``: ``c1/f + c2 ℒf°``."""
    x = vec(x)
    if variant not in DUAL_VARIANTS:
        raise ParameterError(f"unknown dual family {variant!r}")
    if variant == "id_c":
        u = obj.base if isinstance(obj, LogConcaveFn) else obj
        if not isinstance(u, PLConvexF):
            raise ClassError("id_c acts on finite convex functions")
        return u.eval(x) + to_rat(params.get("c", 0))
    if not isinstance(obj, LogConcaveFn) or obj.kind != "F":
        raise ClassError(f"{variant} acts on positive log-concave functions")
    u = obj.base
    if variant == "scale_c":
        return ExpRat(to_rat(params.get("c", 1)), -u.eval(x))
    c1, c2 = to_rat(params.get("c1", 1)), to_rat(params.get("c2", 0))
    first = ExpRat(c1, u.eval(x))
    if c2 == 0:
        return first
    with working_precision(prec):
        return first.to_arb(prec) + to_arb(c2) * laplace_logconcave(legendre_F(u), x, prec)


def as_arb(value, prec: int | None = None) -> arb:
    if isinstance(value, ExpRat):
        return value.to_arb(prec)
    return to_arb(value)
