"""Exact piecewise polynomials and polytope shadow profiles."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError
from .polytope import Polytope
from .rational import ONE, ZERO, Rat, dot, fmt_rat, is_zero, solve, to_rat, vec


def poly_eval(coeffs: Sequence[Rat], t) -> Rat:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def poly_deriv(coeffs: Sequence[Rat]) -> tuple:
    return tuple(k * c for k, c in enumerate(coeffs))[1:] or (ZERO,)


def poly_antideriv(coeffs: Sequence[Rat]) -> tuple:
    return (ZERO,) + tuple(c / (k + 1) for k, c in enumerate(coeffs))


def poly_mul(p: Sequence[Rat], q: Sequence[Rat]) -> tuple:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def poly_shift(coeffs: Sequence[Rat], b) -> tuple:
    """Coefficients of ``t -> p(t - b)``."""
    b = to_rat(b)
    out = [ZERO] * len(coeffs)
    # Horner on polynomials: p(t - b) = (...(c_d (t-b) + c_{d-1})(t-b) ...)
    for c in reversed(coeffs):
        nxt = [ZERO] * len(coeffs)
        for k, a in enumerate(out):
            if a:
                if k + 1 < len(nxt):
                    nxt[k + 1] += a
                nxt[k] -= a * b
        nxt[0] += c
        out = nxt
    return tuple(out)


def interpolate(ts: Sequence[Rat], vs: Sequence[Rat]) -> tuple:
    """Exact coefficients of the interpolating polynomial (ascending powers)."""
    m = len(ts)
    rows = [[t ** k for k in range(m)] for t in ts]
    return solve(rows, list(vs))


@dataclass(frozen=True)
class PiecewisePoly:
    """Piecewise polynomial on ``[breakpoints[0], breakpoints[-1]]``, zero outside.

    ``pieces[i]`` holds ascending coefficients in the absolute variable ``t``
    on ``[breakpoints[i], breakpoints[i+1]]``.
    """

    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        if self.breakpoints and len(self.pieces) != len(self.breakpoints) - 1:
            raise InputError("need one polynomial per interval")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise InputError("breakpoints must be strictly increasing")

    @classmethod
    def zero(cls) -> "PiecewisePoly":
        return cls((), ())

    @property
    def intervals(self):
        return list(zip(self.breakpoints, self.breakpoints[1:], self.pieces))

    def __call__(self, t) -> Rat:
        t = to_rat(t)
        for lo, hi, p in self.intervals:
            if lo <= t <= hi:
                return poly_eval(p, t)
        return ZERO

    def integrate(self, weight: Sequence = (ONE,)) -> Rat:
        """``∫ A(t) w(t) dt`` for a polynomial weight ``w``."""
        w = tuple(to_rat(c) for c in weight)
        total = ZERO
        for lo, hi, p in self.intervals:
            anti = poly_antideriv(poly_mul(p, w))
            total += poly_eval(anti, hi) - poly_eval(anti, lo)
        return total

    def shift(self, b) -> "PiecewisePoly":
        """Profile of ``t -> A(t - b)``."""
        b = to_rat(b)
        return PiecewisePoly(
            tuple(t + b for t in self.breakpoints),
            tuple(poly_shift(p, b) for p in self.pieces),
        )

    def scale_values(self, c) -> "PiecewisePoly":
        c = to_rat(c)
        return PiecewisePoly(self.breakpoints, tuple(tuple(c * a for a in p) for p in self.pieces))

    def to_rows(self):
        return [
            [fmt_rat(lo), fmt_rat(hi)] + [fmt_rat(c) for c in p]
            for lo, hi, p in self.intervals
        ]

    def to_csv(self, samples_per_interval: int = 0) -> str:
        """Coefficient table, or sampled ``(t, A(t))`` rows when requested."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if samples_per_interval <= 0:
            width = max((len(p) for p in self.pieces), default=1)
            w.writerow(["t_lo", "t_hi"] + [f"c{k}" for k in range(width)])
            for row in self.to_rows():
                w.writerow(row + ["0"] * (width + 2 - len(row)))
        else:
            w.writerow(["t", "value"])
            for lo, hi, p in self.intervals:
                for k in range(samples_per_interval + 1):
                    t = lo + (hi - lo) * k / samples_per_interval
                    w.writerow([repr(float(t)), repr(float(poly_eval(p, t)))])
        return buf.getvalue()


def shadow_profile(P: Polytope, x) -> PiecewisePoly:
    """``A(t) = d/dt V_n(P ∩ {y : x·y <= t})`` as an exact piecewise polynomial.

    On each interval between consecutive values of ``x·v`` the clipped volume
    is a polynomial of degree at most ``n``; it is recovered from ``n + 1``
    exact samples and differentiated.
    """
    x = vec(x)
    if len(x) != P.ambient_dim:
        raise InputError("direction has wrong dimension")
    if is_zero(x):
        raise InputError("shadow direction must be nonzero")
    n = P.ambient_dim
    if P.is_empty or P.dim < n:
        return PiecewisePoly.zero()
    levels = sorted({dot(x, v) for v in P.vertices})
    cache = {levels[0]: ZERO, levels[-1]: P.volume}

    def vol(t):
        if t not in cache:
            cache[t] = P.clip(x, t).volume
        return cache[t]

    pieces = []
    for lo, hi in zip(levels, levels[1:]):
        ts = [lo + (hi - lo) * k / n for k in range(n + 1)]
        coeffs = interpolate(ts, [vol(t) for t in ts])
        pieces.append(poly_deriv(coeffs))
    return PiecewisePoly(tuple(levels), tuple(pieces))
