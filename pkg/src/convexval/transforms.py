"""Legendre transform, log-concave polar and Laplace transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from flint import arb

from .errors import ClassError, DomainError, InputError, UnsupportedError
from .functions import LogConcaveFn, PLConvexF, PLConvexS
from .hpreal import exp_rat, simplex_exp_integral, to_arb, working_precision
from .piecewise import (
    PiecewisePoly,
    poly_antideriv,
    poly_deriv,
    poly_eval,
    poly_mul,
)
from .polytope import Polytope, simplex_volume
from .rational import ONE, ZERO, Rat, dot, sub, to_rat, vec


def legendre_S(u: PLConvexS) -> PLConvexF:
    """``u*`` for a class-S function: one affine piece ``(x_j, -t_j)`` per graph point."""
    if not isinstance(u, PLConvexS):
        raise ClassError("legendre_S expects a PLConvexS")
    if not u.graph_points:
        raise DomainError("conjugate of an improper function")
    return PLConvexF._trusted(u.n, [(x, -t) for x, t in u.graph_points])


def legendre_F(u: PLConvexF) -> PLConvexS:
    """``u*`` for a max-affine function: graph points ``(a_i, -b_i)``."""
    if not isinstance(u, PLConvexF):
        raise ClassError("legendre_F expects a PLConvexF")
    return PLConvexS._trusted(u.n, [(a, -b) for a, b in u.pieces])


def legendre(u):
    if isinstance(u, PLConvexS):
        return legendre_S(u)
    if isinstance(u, PLConvexF):
        return legendre_F(u)
    raise ClassError(f"no Legendre transform for {type(u).__name__}")


def polar(f: LogConcaveFn) -> LogConcaveFn:
    """``f° = e^{-u*}``; flips the kind S <-> F."""
    if not isinstance(f, LogConcaveFn):
        raise ClassError("polar expects a LogConcaveFn")
    return LogConcaveFn(legendre(f.base))


def _simplex_sum(P: Polytope, x, alpha=None, prec=None) -> arb:
    """``∫_P e^{(x - α)·y} dy`` summed over the fan triangulation of ``P``."""
    n = P.ambient_dim
    total = arb(0)
    if P.is_empty or P.dim < n:
        return total
    z = x if alpha is None else sub(x, alpha)
    verts = P.vertices
    flat = {}  # exponent -> exact volume of simplices where z·y is constant
    for simplex in P.triangulation:
        pts = [verts[i] for i in simplex]
        nodes = [dot(z, p) for p in pts]
        if all(c == nodes[0] for c in nodes):
            flat[nodes[0]] = flat.get(nodes[0], ZERO) + simplex_volume(pts)
        else:
            total += simplex_exp_integral(nodes, simplex_volume(pts), prec)
    for c, vol in sorted(flat.items()):
        total += to_arb(vol) * exp_rat(c)
    return total


def laplace_polytope(P: Polytope, x, prec: int | None = None) -> arb:
    """``ℒP(x) = ∫_P e^{x·y} dy`` (zero for empty or lower-dimensional ``P``)."""
    x = vec(x)
    if len(x) != P.ambient_dim:
        raise InputError("evaluation point has wrong dimension")
    with working_precision(prec):
        return _simplex_sum(P, x, prec=prec)


def laplace_logconcave(f, x, prec: int | None = None, weight=1) -> arb:
    """``ℒ(w·f)(x) = ∫ e^{x·y} w f(y) dy`` for ``f = e^{-u}`` with ``u`` of class S.

    The domain is split into the cells where ``u = α·y + β`` and each cell
    contributes ``w e^{-β} ∫_cell e^{(x - α)·y} dy``.  The constant weight
    ``w >= 0`` lets ``λf`` be represented without leaving the rationals.
    """
    weight = to_rat(weight)
    if weight < 0:
        raise InputError("Laplace weight must be nonnegative")
    u = f.base if isinstance(f, LogConcaveFn) else f
    if isinstance(u, PLConvexF):
        raise UnsupportedError("Laplace transform of a positive log-concave function")
    if not isinstance(u, PLConvexS):
        raise ClassError("laplace_logconcave expects a class-S function")
    x = vec(x)
    if len(x) != u.n:
        raise InputError("evaluation point has wrong dimension")
    with working_precision(prec):
        total = arb(0)
        if not u.is_full_dim:
            return total
        for alpha, beta, cell in u.cells():
            total += to_arb(weight) * to_arb(-beta).exp() * _simplex_sum(cell, x, alpha, prec)
        return total


@dataclass(frozen=True)
class ExpPolyDensity:
    """``η(t) = Σ c·t^m·e^{λt}`` with rational ``c, λ`` and integer ``m >= 0``."""

    terms: tuple

    def __post_init__(self):
        norm = []
        for c, m, lam in self.terms:
            if int(m) != m or m < 0:
                raise InputError("exponent m must be a nonnegative integer")
            norm.append((to_rat(c), int(m), to_rat(lam)))
        object.__setattr__(self, "terms", tuple(norm))

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "ExpPolyDensity":
        return cls(tuple((c, m, 0) for m, c in enumerate(coeffs) if to_rat(c) != 0))

    @classmethod
    def exponential(cls, sigma, c=1) -> "ExpPolyDensity":
        return cls(((c, 0, sigma),))

    @property
    def is_polynomial(self) -> bool:
        return all(lam == 0 for _, _, lam in self.terms)

    def __add__(self, other: "ExpPolyDensity") -> "ExpPolyDensity":
        return ExpPolyDensity(self.terms + other.terms)

    def __call__(self, t, prec: int | None = None):
        t = to_rat(t)
        if self.is_polynomial:
            return sum((c * t ** m for c, m, _ in self.terms), ZERO)
        with working_precision(prec):
            total = arb(0)
            for c, m, lam in self.terms:
                total += to_arb(c * t ** m) * to_arb(lam * t).exp()
            return total


def _exp_antideriv_parts(q: Sequence[Rat], lam: Rat, t: Rat) -> Rat:
    """Rational factor ``P(t)`` with ``∫ q(s) e^{λs} ds = e^{λt} P(t)``."""
    acc = ZERO
    d = tuple(q)
    sign = ONE
    power = lam
    while any(d):
        acc += sign * poly_eval(d, t) / power
        d = poly_deriv(d)
        sign = -sign
        power *= lam
    return acc


def exp_poly_integral(profile: PiecewisePoly, density: ExpPolyDensity, prec: int | None = None):
    """``∫ A(t) η(t) dt`` in closed form, interval by interval.

    Returns an exact rational when the density is polynomial, otherwise a
    ball.
    """
    exact = ZERO
    with working_precision(prec):
        inexact = arb(0)
        for lo, hi, p in profile.intervals:
            for c, m, lam in density.terms:
                q = poly_mul(p, (ZERO,) * m + (c,))
                if lam == 0:
                    anti = poly_antideriv(q)
                    exact += poly_eval(anti, hi) - poly_eval(anti, lo)
                else:
                    top = _exp_antideriv_parts(q, lam, hi)
                    bot = _exp_antideriv_parts(q, lam, lo)
                    inexact += to_arb(top) * to_arb(lam * hi).exp()
                    inexact -= to_arb(bot) * to_arb(lam * lo).exp()
        if density.is_polynomial:
            return exact
        return inexact + to_arb(exact)


def gradient_fd(P: Polytope, h=None, prec: int | None = None) -> tuple:
    """Central differences of ``ℒP`` at the origin with step ``h`` (default 1e-4)."""
    h = to_rat(h if h is not None else "1/10000")
    n = P.ambient_dim
    out = []
    with working_precision(prec):
        for i in range(n):
            e = tuple(h if j == i else ZERO for j in range(n))
            diff = laplace_polytope(P, e, prec) - laplace_polytope(P, tuple(-c for c in e), prec)
            out.append(diff / to_arb(2 * h))
    return tuple(out)
