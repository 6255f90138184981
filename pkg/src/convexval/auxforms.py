"""Integral forms built from the transforms: Ẑ, the Mussnig form, ζ-representation."""

from __future__ import annotations

from dataclasses import dataclass

from flint import arb

from .errors import DomainError, InputError
from .functions import PLConvexS
from .hpreal import to_arb, working_precision
from .piecewise import PiecewisePoly, interpolate, shadow_profile
from .polytope import Polytope
from .rational import ONE, ZERO, Rat, dot, is_zero, to_rat, vec
from .transforms import ExpPolyDensity, exp_poly_integral


def sublevel_support(u: PLConvexS, s, x) -> Rat:
    """``h({u <= s}, x)`` for ``s >= min u``."""
    s = to_rat(s)
    if s < u.minimum:
        raise DomainError("empty sublevel set")
    E = u.epigraph
    pts = E.clip_points((ZERO,) * u.n + (ONE,), s) if s < u.top else E.vertices
    return max(dot(x, p[:-1]) for p in pts)


def weird_valuation(u: PLConvexS, x, prec: int | None = None) -> arb:
    """``Ẑu(x) = ∫_0^∞ h({e^{-u} >= r}, x) dr = ∫_{min u}^∞ h({u <= s}, x) e^{-s} ds``.

    ``s -> h({u <= s}, x)`` is concave in ``s`` and, between consecutive
    graph values, a maximum of affine functions, hence affine there; beyond
    the largest graph value it is the constant ``h(dom u, x)``.
    """
    if not isinstance(u, PLConvexS):
        raise InputError("Ẑ is defined on class-S functions")
    x = vec(x)
    levels = sorted({t for _, t in u.graph_points})
    hs = [sublevel_support(u, s, x) for s in levels]
    pieces = []
    for (a, b), (ha, hb) in zip(zip(levels, levels[1:]), zip(hs, hs[1:])):
        pieces.append(interpolate([a, b], [ha, hb]))
    with working_precision(prec):
        body = arb(0)
        if pieces:
            prof = PiecewisePoly(tuple(levels), tuple(pieces))
            body = exp_poly_integral(prof, ExpPolyDensity.exponential(-1), prec)
        tail = to_arb(hs[-1]) * to_arb(-levels[-1]).exp()
        return body + tail


def _as_density(eta) -> ExpPolyDensity:
    if isinstance(eta, ExpPolyDensity):
        return eta
    if eta is None or eta == 0:
        return ExpPolyDensity(())
    return ExpPolyDensity.polynomial([eta])


def mussnig_form(u: PLConvexS, eta0, eta1, prec: int | None = None):
    """``η0(min u) + ∫_{dom u} η1(u(w)) dw`` over the cells of ``u``."""
    eta0, eta1 = _as_density(eta0), _as_density(eta1)
    with working_precision(prec):
        total = _add(ZERO, eta0(u.minimum, prec))
        if not u.is_full_dim:
            return total
        for alpha, beta, cell in u.cells():
            if is_zero(alpha):
                val = _mul(eta1(beta, prec), cell.volume)
            else:
                prof = shadow_profile(cell, alpha).shift(beta)
                val = exp_poly_integral(prof, eta1, prec)
            total = _add(total, val)
        return total


def _add(a, b):
    if isinstance(a, arb) or isinstance(b, arb):
        return to_arb(a) + to_arb(b)
    return a + b


def _mul(a, b):
    if isinstance(a, arb) or isinstance(b, arb):
        return to_arb(a) * to_arb(b)
    return a * b


@dataclass(frozen=True)
class ZetaSpec:
    """Continuous two-sided profile ``ζ`` of linear or exponential shape.

    ``ζ(s) = pos·g(s) + const_pos`` for ``s >= 0`` and ``neg·g(s) + const_neg``
    for ``s < 0``, where ``g(s) = s`` (linear) or ``e^{σs}`` (exponential).
    """

    kind: str
    pos: Rat = ONE
    neg: Rat = ONE
    const_pos: Rat = ZERO
    const_neg: Rat = ZERO
    sigma: Rat = ONE

    def __post_init__(self):
        if self.kind not in ("linear", "exponential"):
            raise InputError(f"unsupported ζ shape {self.kind!r}")
        for name in ("pos", "neg", "const_pos", "const_neg", "sigma"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        if self.kind == "exponential" and self.sigma == 0:
            raise InputError("exponential ζ needs σ != 0")

    @classmethod
    def identity(cls) -> "ZetaSpec":
        return cls("linear")

    def __call__(self, s, prec: int | None = None):
        s = to_rat(s)
        c, d = (self.pos, self.const_pos) if s >= 0 else (self.neg, self.const_neg)
        if self.kind == "linear":
            return c * s + d
        with working_precision(prec):
            return to_arb(c) * to_arb(self.sigma * s).exp() + to_arb(d)


def li_representation(zeta: ZetaSpec, eta, P: Polytope, x, prec: int | None = None):
    """``ζ(h_P(x)) + ζ(-h_{-P}(x)) + ∫ A_{P,x}(t) η(t) dt``."""
    x = vec(x)
    if is_zero(x):
        raise InputError("the representation is evaluated at x != 0")
    if P.is_empty:
        raise DomainError("representation of the empty polytope")
    eta = _as_density(eta)
    with working_precision(prec):
        total = _add(zeta(P.support(x), prec), zeta(P.min_dot(x), prec))
        integral = exp_poly_integral(shadow_profile(P, x), eta, prec) if P.dim == P.ambient_dim else ZERO
        return _add(total, integral)
