"""Exact rational scalars, vectors and small dense linear algebra.

Scalars are :class:`gmpy2.mpq` (always reduced, positive denominator).
Vectors are plain tuples of scalars; matrices are tuples of row tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

Rat = type(gmpy2.mpq(0))
Vec = tuple

ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)


def to_rat(value) -> Rat:
    """Convert ints, Fractions, mpq, floats (exactly) or ``"p/q"`` strings."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, int):
        return gmpy2.mpq(value)
    if isinstance(value, Fraction):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite float {value!r}")
        return gmpy2.mpq(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        return gmpy2.mpq(Fraction(text))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return gmpy2.mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def fmt_rat(q) -> str:
    """Serialize as ``"p"`` or ``"p/q"``."""
    q = to_rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vec:
    return tuple(to_rat(v) for v in values)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def dot(a: Sequence, b: Sequence) -> Rat:
    s = ZERO
    for x, y in zip(a, b):
        s += x * y
    return s


def add(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vec:
    return tuple(c * x for x in a)


def neg(a: Sequence) -> Vec:
    return tuple(-x for x in a)


def norm_sq(a: Sequence) -> Rat:
    return dot(a, a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero reduced rows and
    ``pivots`` the pivot column of each, leftmost first.
    """
    m = [[to_rat(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        return [unit(ncols, i) for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def det(matrix: Sequence[Sequence]) -> Rat:
    m = [list(map(to_rat, r)) for r in matrix]
    n = len(m)
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> Vec:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(row[n] for row in red)


def mat_vec(matrix: Sequence[Sequence], x: Sequence) -> Vec:
    return tuple(dot(row, x) for row in matrix)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]):
    bt = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(a: Sequence[Sequence]):
    return tuple(tuple(col) for col in zip(*a))


def identity(n: int):
    return tuple(unit(n, i) for i in range(n))


def inverse(a: Sequence[Sequence]):
    n = len(a)
    aug = [list(a[i]) + list(unit(n, i)) for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def factorial(k: int) -> int:
    return math.factorial(k)
