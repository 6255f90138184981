"""SL(n) elements with exact rational entries."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InputError
from .rational import det, identity, inverse, mat_mul, mat_vec, to_rat, transpose


@dataclass(frozen=True)
class UnimodularMap:
    matrix: tuple
    det: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = tuple(tuple(to_rat(x) for x in row) for row in self.matrix)
        n = len(m)
        if n == 0 or any(len(row) != n for row in m):
            raise InputError("matrix must be square and nonempty")
        d = det(m)
        if d != 1:
            raise InputError(f"determinant is {d}, not 1")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "det", d)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, x):
        return mat_vec(self.matrix, x)

    @cached_property
    def transpose(self) -> "UnimodularMap":
        return UnimodularMap(transpose(self.matrix))

    @cached_property
    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(inverse(self.matrix))

    @cached_property
    def inverse_transpose(self) -> "UnimodularMap":
        return self.inverse.transpose

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(mat_mul(self.matrix, other.matrix))

    def to_list(self):
        return [[str(x) for x in row] for row in self.matrix]


def _shear(n, i, j, c):
    m = [list(row) for row in identity(n)]
    m[i][j] = to_rat(c)
    return m


def random_unimodular(seed, bound: int = 2, n: int = 3) -> UnimodularMap:
    """Deterministic product of at most six elementary shears.

    Three lower-triangular shears followed by three upper-triangular ones,
    each with an integer entry in ``[-bound, bound]``.  Grouping by triangle
    keeps entries small: the product is ``L @ U`` with unit-triangular
    factors.
    """
    if bound < 1:
        raise InputError("bound must be >= 1")
    if not 1 <= n <= 4:
        raise InputError("dimension must be in 1..4")
    rng = random.Random(seed)
    m = identity(n)
    if n == 1:
        return UnimodularMap(m)
    lower = [(i, j) for i in range(n) for j in range(i)]
    upper = [(j, i) for i, j in lower]
    for pairs in (lower, upper):
        for _ in range(3):
            i, j = rng.choice(pairs)
            c = rng.randint(-bound, bound)
            m = mat_mul(m, _shear(n, i, j, c))
    return UnimodularMap(m)


def identity_map(n: int) -> UnimodularMap:
    return UnimodularMap(identity(n))


__all__ = ["UnimodularMap", "random_unimodular", "identity_map"]
