"""Deterministic fixture generators.

Every generator takes a :class:`random.Random` so that a suite seed fixes the
whole fixture stream.  Coordinates are small rationals (denominators 1, 2
or 4) to keep exact arithmetic cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DomainError, InputError
from .functions import PLConvexF, PLConvexS, join_S, meet_S
from .polytope import Polytope
from .rational import ONE, ZERO, dot, is_zero, to_rat, unit, vec

DENOMS = (1, 2, 4)


def rand_rat(rng: random.Random, lo=-2, hi=2, denoms=DENOMS):
    d = rng.choice(denoms)
    return to_rat(Fraction(rng.randint(lo * d, hi * d), d))


def rand_vec(rng: random.Random, n: int, lo=-2, hi=2, nonzero=False):
    while True:
        v = tuple(rand_rat(rng, lo, hi) for _ in range(n))
        if not nonzero or not is_zero(v):
            return v


def random_polytope(rng: random.Random, n: int, npts: int | None = None, lo=-1, hi=1) -> Polytope:
    """Full-dimensional polytope spanned by random rational points."""
    npts = npts or n + 3
    for _ in range(100):
        P = Polytope([rand_vec(rng, n, lo, hi) for _ in range(npts)])
        if P.dim == n:
            return P
    raise DomainError("could not draw a full-dimensional polytope")


def random_polytope_around_origin(rng: random.Random, n: int, npts: int | None = None) -> Polytope:
    """Random polytope with the origin in its interior (vertex centroid moved to 0)."""
    P = random_polytope(rng, n, npts)
    c = tuple(sum(v[i] for v in P.vertices) / len(P.vertices) for i in range(n))
    return P.translate(tuple(-x for x in c))


def random_S(rng: random.Random, n: int, npts: int | None = None) -> PLConvexS:
    """Generic class-S function: random heights over a random point cloud."""
    npts = npts or n + 3
    for _ in range(100):
        pts = [(rand_vec(rng, n, -1, 1), rand_rat(rng, -1, 2)) for _ in range(npts)]
        u = PLConvexS(pts)
        if u.is_full_dim:
            return u
    raise DomainError("could not draw a full-dimensional class-S function")


def random_F(rng: random.Random, n: int, npieces: int | None = None) -> PLConvexF:
    npieces = npieces or n + 3
    return PLConvexF([(rand_vec(rng, n, -1, 1), rand_rat(rng, -1, 1)) for _ in range(npieces)])


def cone(P: Polytope, y, t=0) -> PLConvexS:
    """``ι_P + ℓ_y + t``."""
    return PLConvexS.cone(P, y, t)


def random_cone(rng: random.Random, n: int) -> PLConvexS:
    return cone(random_polytope(rng, n), rand_vec(rng, n, -1, 1), rand_rat(rng, -1, 1))


def restrict(u: PLConvexS, a, t) -> PLConvexS | None:
    """``u + ι_{a·x <= t}`` (``None`` when the result is nowhere finite)."""
    a = vec(a)
    E = u.epigraph.clip(a + (ZERO,), t)
    pts = [(p[:-1], p[-1]) for p in E.vertices if p[-1] < u.top]
    if not pts:
        return None
    return PLConvexS._trusted(u.n, pts)


def split(w: PLConvexS, a, t):
    """Hyperplane split ``(w + ι_{a·x <= t}, w + ι_{a·x >= t})``."""
    a = vec(a)
    if is_zero(a):
        raise InputError("split direction must be nonzero")
    t = to_rat(t)
    lo = restrict(w, a, t)
    hi = restrict(w, tuple(-c for c in a), -t)
    return lo, hi


def random_split(rng: random.Random, w: PLConvexS):
    """Split of ``w`` by a random hyperplane through the interior of its domain."""
    n = w.n
    for _ in range(100):
        a = rand_vec(rng, n, -1, 1, nonzero=True)
        vals = sorted(dot(a, x) for x, _ in w.graph_points)
        if vals[0] == vals[-1]:
            continue
        k = rng.randint(1, 3)
        t = vals[0] + (vals[-1] - vals[0]) * k / 4
        u, v = split(w, a, t)
        if u is not None and v is not None and u.is_full_dim and v.is_full_dim:
            return u, v, a, t
    raise DomainError("could not split the fixture")


def staircase(n: int, m: int):
    """Staircase ``u_i = ι_{[i-1,i]×[0,1]^{n-1}} + ℓ_{i e_1} - (i²-i)/2``.

    Returns ``(us, joins, v_m)`` with ``joins[i-1] = u_i ∨ u_{i+1}`` and
    ``v_m = u_1 ∧ ... ∧ u_m``.
    """
    if m < 1:
        raise InputError("staircase length must be >= 1")
    us = []
    for i in range(1, m + 1):
        box = Polytope.box([i - 1] + [0] * (n - 1), [i] + [1] * (n - 1))
        us.append(PLConvexS.cone(box, tuple(i * c for c in unit(n, 0)), -Fraction(i * i - i, 2)))
    joins = [join_S(a, b) for a, b in zip(us, us[1:])]
    v = us[0]
    for w in us[1:]:
        v = meet_S(v, w)
    return us, joins, v


def staircase_join_formula(n: int, i: int) -> PLConvexS:
    """``ι_{{i}×[0,1]^{n-1}} + (i²+i)/2``."""
    face = Polytope.box([i] + [0] * (n - 1), [i] + [1] * (n - 1))
    return PLConvexS.indicator(face, Fraction(i * i + i, 2))


def normalize_min(u: PLConvexS) -> PLConvexS:
    """Shift ``u`` vertically so that ``min u = 0``."""
    return u.add_const(-u.minimum)


def nonnegative_weight(rng: random.Random):
    return rand_rat(rng, 0, 3) or ONE
