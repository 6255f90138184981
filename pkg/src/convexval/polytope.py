"""Exact rational polytopes in V-representation."""

from __future__ import annotations

import json
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError, InputError
from .hull import HullResult, convex_hull
from .rational import (
    ONE,
    ZERO,
    Rat,
    Vec,
    add,
    det,
    dot,
    factorial,
    fmt_rat,
    mat_vec,
    neg,
    sub,
    to_rat,
    vec,
)

MAX_DIM = 4


class Polytope:
    """Convex hull of finitely many rational points (possibly empty).

    Instances are immutable; derived data (facets, triangulation, volume and
    moment) is computed on first use and cached.
    """

    def __init__(self, points: Iterable[Sequence] = (), ambient_dim: int | None = None):
        pts = [vec(p) for p in points]
        if ambient_dim is None:
            if not pts:
                raise InputError("ambient dimension required for an empty polytope")
            ambient_dim = len(pts[0])
        if any(len(p) != ambient_dim for p in pts):
            raise InputError("dimension mismatch among points")
        self.ambient_dim = ambient_dim
        if pts:
            self._hull = convex_hull(pts)
            self.vertices = self._hull.vertices
            self.dim = self._hull.dim
        else:
            self._hull = None
            self.vertices = ()
            self.dim = -1

    @classmethod
    def empty(cls, n: int) -> "Polytope":
        return cls((), ambient_dim=n)

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "Polytope":
        return cls(product(*[(to_rat(a), to_rat(b)) for a, b in zip(lo, hi)]))

    @classmethod
    def cube(cls, n: int, lo=0, hi=1) -> "Polytope":
        return cls.box([lo] * n, [hi] * n)

    @classmethod
    def simplex(cls, n: int) -> "Polytope":
        """Standard simplex conv{0, e_1, ..., e_n}."""
        pts = [(ZERO,) * n] + [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
        return cls(pts)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def hull_data(self) -> HullResult | None:
        return self._hull

    @property
    def facets(self):
        return self._hull.facets if self._hull else ()

    @property
    def equalities(self):
        return self._hull.equalities if self._hull else ()

    def __repr__(self):
        return f"Polytope(dim={self.dim}, n={self.ambient_dim}, vertices={len(self.vertices)})"

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    # -- queries ---------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        return self._hull.contains(vec(x))

    def support(self, x: Sequence) -> Rat:
        if self.is_empty:
            raise DomainError("support function of the empty set")
        x = vec(x)
        return max(dot(x, v) for v in self.vertices)

    def min_dot(self, x: Sequence) -> Rat:
        """``-h_{-P}(x) = min over P of x . y``."""
        if self.is_empty:
            raise DomainError("support function of the empty set")
        x = vec(x)
        return min(dot(x, v) for v in self.vertices)

    @cached_property
    def edges(self) -> tuple:
        """Index pairs of adjacent vertices.

        ``v, w`` span an edge iff the smallest face containing both (the
        intersection of their common facets) has no other vertex.
        """
        nv = len(self.vertices)
        if nv < 2:
            return ()
        if self.dim == 1:
            return ((0, 1),)
        on = [set() for _ in range(nv)]
        for f, fc in enumerate(self.facets):
            for i in fc.vertices:
                on[i].add(f)
        out = []
        for i in range(nv):
            for j in range(i + 1, nv):
                common = on[i] & on[j]
                if len(common) < self.dim - 1:
                    continue
                if not any(common <= on[k] for k in range(nv) if k != i and k != j):
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def triangulation(self) -> tuple:
        """Fan triangulation from the lexicographically smallest vertex.

        Each simplex is a tuple of ``dim + 1`` indices into :attr:`vertices`.
        """
        if self.is_empty:
            return ()
        return tuple(_fan(self.vertices, tuple(range(len(self.vertices))), {}))

    @cached_property
    def volume(self) -> Rat:
        if self.dim < self.ambient_dim:
            return ZERO
        return sum((simplex_volume([self.vertices[i] for i in s]) for s in self.triangulation), ZERO)

    @cached_property
    def moment(self) -> Vec:
        n = self.ambient_dim
        m = [ZERO] * n
        if self.dim < n:
            return tuple(m)
        for s in self.triangulation:
            pts = [self.vertices[i] for i in s]
            vol = simplex_volume(pts)
            for c in range(n):
                m[c] += vol * sum(p[c] for p in pts) / (n + 1)
        return tuple(m)

    def measures(self):
        """``(V_0, V_n, m)``: Euler characteristic, volume, moment vector."""
        return (ZERO if self.is_empty else ONE), self.volume, self.moment

    # -- constructions ---------------------------------------------------

    def clip_points(self, a: Sequence, t) -> list:
        """A point set whose hull is ``P ∩ {a . x <= t}``.

        Kept vertices plus the crossings of edges with the hyperplane; no
        hull is computed, so duplicates and non-vertices may occur.
        """
        a = vec(a)
        if len(a) != self.ambient_dim:
            raise InputError("direction has wrong dimension")
        if all(c == 0 for c in a):
            raise InputError("clip direction must be nonzero")
        t = to_rat(t)
        vals = [dot(a, v) for v in self.vertices]
        out = [v for v, s in zip(self.vertices, vals) if s <= t]
        if not out or len(out) == len(self.vertices):
            return out
        for i, j in self.edges:
            (s, v), (r, w) = sorted(((vals[i], self.vertices[i]), (vals[j], self.vertices[j])))
            if s < t < r:
                lam = (t - s) / (r - s)
                out.append(tuple(vi + lam * (wi - vi) for vi, wi in zip(v, w)))
        return out

    def clip(self, a: Sequence, t) -> "Polytope":
        """``P`` intersected with the half-space ``a . x <= t``."""
        pts = self.clip_points(a, t)
        if len(pts) == len(self.vertices) and pts == list(self.vertices):
            return self
        if not pts:
            return Polytope.empty(self.ambient_dim)
        return Polytope(pts)

    def slice(self, a: Sequence, t) -> "Polytope":
        """``P`` intersected with the hyperplane ``a . x = t``."""
        return self.clip(a, t).clip(neg(vec(a)), -to_rat(t))

    def intersect(self, other: "Polytope") -> "Polytope":
        _check_same_dim(self, other)
        if self.is_empty or other.is_empty:
            return Polytope.empty(self.ambient_dim)
        out = self
        for e, f in other.equalities:
            out = out.clip(e, f).clip(neg(e), -f)
            if out.is_empty:
                return out
        for fc in other.facets:
            out = out.clip(fc.normal, fc.offset)
            if out.is_empty:
                return out
        return out

    def reflect(self) -> "Polytope":
        if self.is_empty:
            return self
        return Polytope([neg(v) for v in self.vertices])

    def translate(self, y: Sequence) -> "Polytope":
        y = vec(y)
        if len(y) != self.ambient_dim:
            raise InputError("translation vector has wrong dimension")
        if self.is_empty:
            return self
        return Polytope([add(v, y) for v in self.vertices])

    def minkowski(self, other: "Polytope") -> "Polytope":
        _check_same_dim(self, other)
        if self.is_empty or other.is_empty:
            return Polytope.empty(self.ambient_dim)
        return Polytope([add(v, w) for v in self.vertices for w in other.vertices])

    def apply_map(self, phi) -> "Polytope":
        """Image under a linear map (anything with ``.matrix`` or a matrix)."""
        matrix = getattr(phi, "matrix", phi)
        if len(matrix) != self.ambient_dim:
            raise InputError("map has wrong dimension")
        if self.is_empty:
            return self
        return Polytope([mat_vec(matrix, v) for v in self.vertices])

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "vertices": [[fmt_rat(c) for c in v] for v in self.vertices],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Polytope":
        try:
            n = int(data["dim"])
            verts = [vec(v) for v in data["vertices"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"invalid polytope JSON: {exc}") from exc
        return cls(verts, ambient_dim=n)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Polytope":
        return cls.from_dict(json.loads(text))


def simplex_volume(pts: Sequence[Vec]) -> Rat:
    """Volume of a full-dimensional simplex given by ``n + 1`` vertices."""
    n = len(pts) - 1
    base = pts[0]
    d = det([sub(p, base) for p in pts[1:]])
    return abs(d) / factorial(n)


def _fan(verts: Sequence[Vec], idx: tuple, memo: dict) -> list:
    key = frozenset(idx)
    if key in memo:
        return memo[key]
    h = convex_hull([verts[i] for i in idx])
    where = {verts[i]: i for i in idx}
    own = [where[v] for v in h.vertices]
    if h.dim == 0:
        out = [(own[0],)]
    elif h.dim == 1:
        out = [tuple(sorted(own, key=lambda i: verts[i]))]
    else:
        apex = min(own, key=lambda i: verts[i])
        out = []
        for fc in h.facets:
            face = tuple(sorted(own[j] for j in fc.vertices))
            if apex in face:
                continue
            for s in _fan(verts, face, memo):
                out.append((apex,) + s)
    memo[key] = out
    return out


def _check_same_dim(p: Polytope, q: Polytope):
    if p.ambient_dim != q.ambient_dim:
        raise InputError("polytopes live in different dimensions")


def hull(points: Iterable[Sequence]) -> Polytope:
    pts = [vec(p) for p in points]
    if not pts:
        raise InputError("hull of an empty point list")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise InputError("dimension mismatch among points")
    if not 1 <= n <= MAX_DIM:
        raise InputError(f"ambient dimension must be in 1..{MAX_DIM}")
    return Polytope(pts)


def clip(P: Polytope, a, t) -> Polytope:
    return P.clip(a, t)


def support(P: Polytope, x) -> Rat:
    return P.support(x)


def reflect(P: Polytope) -> Polytope:
    return P.reflect()


def minkowski(P: Polytope, Q: Polytope) -> Polytope:
    return P.minkowski(Q)


def apply_map(P: Polytope, phi) -> Polytope:
    return P.apply_map(phi)


def translate(P: Polytope, y) -> Polytope:
    return P.translate(y)


def measures(P: Polytope):
    return P.measures()
