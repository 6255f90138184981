"""Deterministic probe sets and pointwise comparison of functions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .functions import INF, PLConvexS, is_inf
from .rational import ZERO, to_rat, vec


@dataclass(frozen=True)
class ProbeGrid:
    """Lattice ``step·Z^n ∩ [-radius, radius]^n`` plus seeded random points."""

    n: int
    step: Fraction = Fraction(1, 4)
    radius: int = 3
    random_count: int = 64
    seed: int = 0

    def points(self) -> list:
        step, r = to_rat(self.step), to_rat(self.radius)
        k = int(r / step)
        axis = [i * step for i in range(-k, k + 1)]
        pts = [tuple(p) for p in product(axis, repeat=self.n)]
        rng = random.Random(self.seed)
        for _ in range(self.random_count):
            pts.append(tuple(to_rat(Fraction(rng.randint(-48 * self.radius, 48 * self.radius), 48)) for _ in range(self.n)))
        return pts


def domain_probes(u: PLConvexS, rng: random.Random, count: int = 8) -> list:
    """Graph-point locations plus random convex combinations of them."""
    xs = [x for x, _ in u.graph_points]
    out = list(xs)
    for _ in range(count):
        w = [rng.randint(0, 4) for _ in xs]
        s = sum(w)
        if s == 0:
            continue
        out.append(tuple(sum(wi * x[c] for wi, x in zip(w, xs)) / s for c in range(u.n)))
    return out


def compare_on_grid(u, v, grid) -> tuple:
    """``(max |u - v|, mismatch)`` over the probe set.

    ``mismatch`` is True when one function is infinite where the other is
    finite; such points are excluded from the maximum.
    """
    points = grid.points() if isinstance(grid, ProbeGrid) else grid
    worst = ZERO
    mismatch = False
    for x in points:
        x = vec(x)
        a, b = u.eval(x), v.eval(x)
        if is_inf(a) or is_inf(b):
            if is_inf(a) != is_inf(b):
                mismatch = True
            continue
        d = abs(a - b)
        if d > worst:
            worst = d
    return worst, mismatch


__all__ = ["ProbeGrid", "compare_on_grid", "domain_probes", "INF"]
