"""Ball arithmetic for the few quantities that leave the rational field.

Values are :class:`flint.arb` balls (midpoint plus rigorous radius).  The
working precision defaults to ``CONVEXVAL_PRECISION_BITS`` (128 bits) and is
applied process-wide on import; :func:`working_precision` overrides it for a
block.  flint keeps precision in a global context, so overrides are
serialized by a lock.
"""

from __future__ import annotations

import math
import os
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Sequence

import flint
from flint import arb, arb_mat, fmpq

from .errors import InputError
from .rational import ONE, ZERO, Rat, factorial, fmt_rat, to_rat

HighPrecReal = arb

_LOCK = threading.RLock()


def default_bits() -> int:
    raw = os.environ.get("CONVEXVAL_PRECISION_BITS", "128")
    try:
        bits = int(raw)
    except ValueError as exc:
        raise InputError(f"CONVEXVAL_PRECISION_BITS must be an integer, got {raw!r}") from exc
    if bits < 64:
        raise InputError("CONVEXVAL_PRECISION_BITS must be at least 64")
    return bits


flint.ctx.prec = default_bits()


@contextmanager
def working_precision(bits: int | None = None):
    """Run a block at ``bits`` of precision (default: the configured value)."""
    with _LOCK:
        old = flint.ctx.prec
        flint.ctx.prec = bits or default_bits()
        try:
            yield flint.ctx.prec
        finally:
            flint.ctx.prec = old


def to_arb(q) -> arb:
    if isinstance(q, arb):
        return q
    q = to_rat(q)
    return arb(fmpq(int(q.numerator), int(q.denominator)))


def exp_rat(q, prec: int | None = None) -> arb:
    with working_precision(prec):
        return to_arb(q).exp()


def _dd_shifted(nodes: Sequence[Rat]) -> arb:
    mu = sum(nodes, ZERO) / len(nodes)
    k = len(nodes) - 1
    if all(z == nodes[0] for z in nodes):
        return to_arb(nodes[0]).exp() / factorial(k)
    size = k + 1
    rows = []
    for i in range(size):
        row = [arb(0)] * size
        row[i] = to_arb(nodes[i] - mu)
        if i + 1 < size:
            row[i + 1] = arb(1)
        rows.append(row)
    top = arb_mat(rows).exp()[0, k]
    return to_arb(mu).exp() * top


def divided_diff_exp(nodes: Sequence, prec: int | None = None) -> arb:
    """Divided difference ``exp[z_0, ..., z_k]`` (confluent nodes allowed).

    Computed as the top-right entry of ``exp`` of the bidiagonal matrix with
    the nodes on the diagonal and ones above it, after shifting by the node
    mean.  Nodes are exact, so repeated nodes need no special tolerance.
    Precision is doubled (up to four times) until at least ``prec - 24``
    relative bits are certified.
    """
    zs = sorted(to_rat(z) for z in nodes)
    if not zs:
        raise InputError("divided difference needs at least one node")
    bits = prec or default_bits()
    target = bits - 24
    for attempt in range(4):
        with working_precision(bits << attempt):
            val = _dd_shifted(zs)
        if val.rel_accuracy_bits() >= target:
            break
    with working_precision(prec):
        return +val


def simplex_exp_integral(nodes: Sequence, volume, prec: int | None = None) -> arb:
    """``∫_Δ e^{x·y} dy = k!·vol(Δ)·exp[x·v_0, ..., x·v_k]``."""
    k = len(nodes) - 1
    with working_precision(prec):
        return divided_diff_exp(nodes, prec) * to_arb(to_rat(volume) * factorial(k))


def upper(a) -> float:
    """A float that is >= every point of the ball ``|a|``."""
    if isinstance(a, arb):
        return float(a.abs_upper())
    return float(abs(a))


def serialize(a) -> dict:
    """``{"value": 40-digit decimal, "err_bound": decimal}``."""
    if isinstance(a, arb):
        return {"value": a.mid().str(40, radius=False), "err_bound": a.rad().str(5, radius=False)}
    return {"value": fmt_rat(a), "err_bound": "0"}


@dataclass(frozen=True)
class ExpRat:
    """Exact value ``coef * e^{exponent}`` with rational coefficient and exponent.

    Used for identities that hold "exactly in the exponent": two values are
    equal iff coefficients and exponents agree (or both coefficients vanish).
    """

    coef: Rat
    exponent: Rat

    @classmethod
    def exp(cls, s) -> "ExpRat":
        return cls(ONE, to_rat(s))

    def __post_init__(self):
        object.__setattr__(self, "coef", to_rat(self.coef))
        object.__setattr__(self, "exponent", ZERO if self.coef == 0 else to_rat(self.exponent))

    def __mul__(self, other):
        if isinstance(other, ExpRat):
            return ExpRat(self.coef * other.coef, self.exponent + other.exponent)
        return ExpRat(self.coef * to_rat(other), self.exponent)

    __rmul__ = __mul__

    def reciprocal(self) -> "ExpRat":
        if self.coef == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return ExpRat(1 / self.coef, -self.exponent)

    def __eq__(self, other):
        if not isinstance(other, ExpRat):
            return NotImplemented
        return self.coef == other.coef and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.coef, self.exponent))

    def to_arb(self, prec: int | None = None) -> arb:
        with working_precision(prec):
            return to_arb(self.coef) * to_arb(self.exponent).exp()

    def __float__(self):
        return float(self.coef) * math.exp(float(self.exponent))

    def __repr__(self):
        return f"ExpRat({fmt_rat(self.coef)}*e^({fmt_rat(self.exponent)}))"
