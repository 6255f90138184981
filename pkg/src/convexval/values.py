"""Arithmetic and comparison across the value types transforms return.

A transform value is one of: an exact rational, ``+inf`` (a float), an
:class:`ExpRat` (exact ``c·e^s``) or an arb ball.  Identities between exact
values are decided exactly; anything involving a ball is compared by
relative error.
"""

from __future__ import annotations

from fractions import Fraction

from flint import arb

from .functions import is_inf
from .hpreal import ExpRat, to_arb, upper
from .rational import ZERO, Rat, fmt_rat, to_rat

# Magnitudes below this are treated as zero when forming relative residuals,
# so cancellations down to ball-radius noise do not blow up the ratio.
ABS_FLOOR = 2.0 ** -64


def is_exact(v) -> bool:
    return isinstance(v, (Rat, ExpRat)) or is_inf(v)


def as_arb(v) -> arb:
    if isinstance(v, ExpRat):
        return v.to_arb()
    return to_arb(v)


def v_add(a, b):
    if is_inf(a) or is_inf(b):
        return float("inf")
    if isinstance(a, ExpRat) and a.coef == 0:
        return b
    if isinstance(b, ExpRat) and b.coef == 0:
        return a
    if isinstance(a, Rat) and isinstance(b, Rat):
        return a + b
    if isinstance(a, ExpRat) and isinstance(b, ExpRat) and a.exponent == b.exponent:
        return ExpRat(a.coef + b.coef, a.exponent)
    if isinstance(a, ExpRat) and isinstance(b, Rat) and b == 0:
        return a
    if isinstance(b, ExpRat) and isinstance(a, Rat) and a == 0:
        return b
    return as_arb(a) + as_arb(b)


def v_mul_exp(a, s):
    """``a·e^s`` for rational ``s``."""
    s = to_rat(s)
    if is_inf(a):
        return a
    if isinstance(a, ExpRat):
        return ExpRat(a.coef, a.exponent + s)
    if isinstance(a, Rat):
        return ExpRat(a, s)
    return a * to_arb(s).exp()


def v_scale(a, c):
    c = to_rat(c)
    if is_inf(a):
        if c > 0:
            return a
        raise ValueError("scaling +inf by a non-positive factor")
    if isinstance(a, ExpRat):
        return ExpRat(a.coef * c, a.exponent)
    if isinstance(a, Rat):
        return a * c
    return a * to_arb(c)


def _exp_equal(a, b) -> bool:
    if isinstance(a, Rat):
        a = ExpRat(a, 0) if a != 0 else ExpRat(0, 0)
    if isinstance(b, Rat):
        b = ExpRat(b, 0) if b != 0 else ExpRat(0, 0)
    return a == b


def _norm(v):
    # plain Python rationals are exact too
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return to_rat(v)
    return v


def compare(lhs, rhs):
    """``(residual: float, exact: bool, equal: bool | None)``.

    For exact pairs ``equal`` is decided exactly and the residual is the
    (float) absolute difference.  Otherwise ``equal`` is ``None`` and the
    residual is a rigorous upper bound on the relative difference, with the
    scale clamped below at :data:`ABS_FLOOR`.
    """
    lhs, rhs = _norm(lhs), _norm(rhs)
    li, ri = is_inf(lhs), is_inf(rhs)
    if li or ri:
        return (0.0, True, True) if li and ri else (float("inf"), True, False)
    if isinstance(lhs, Rat) and isinstance(rhs, Rat):
        d = abs(lhs - rhs)
        return float(d), True, d == 0
    if is_exact(lhs) and is_exact(rhs) and (isinstance(lhs, ExpRat) or isinstance(rhs, ExpRat)):
        if _exp_equal(lhs, rhs):
            return 0.0, True, True
        return upper(as_arb(lhs) - as_arb(rhs)), True, False
    a, b = as_arb(lhs), as_arb(rhs)
    diff = upper(a - b)
    scale = max(float(abs(a.mid())), float(abs(b.mid())), ABS_FLOOR)
    return diff / scale, False, None


def fmt_value(v) -> str:
    v = _norm(v)
    if is_inf(v):
        return "inf"
    if isinstance(v, Rat):
        return fmt_rat(v)
    if isinstance(v, ExpRat):
        return f"{fmt_rat(v.coef)}*exp({fmt_rat(v.exponent)})"
    return v.mid().str(40, radius=False) + " +/- " + v.rad().str(3, radius=False)


__all__ = ["compare", "v_add", "v_mul_exp", "v_scale", "fmt_value", "is_exact", "as_arb", "ZERO"]
