"""Exact convex hull kernel (beneath-beyond over Q, any dimension).

The kernel works in the affine hull of the input: points are projected onto
pivot coordinates chosen by row reduction, which is an affine isomorphism
from the affine hull onto Q^k.  Facets are built as simplicial facets by the
incremental algorithm and then merged by hyperplane; a point is reported as a
vertex iff the normals of the facets through it have full rank.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .rational import ZERO, Rat, Vec, dot, nullspace, rank, rref, sub, to_rat


@dataclass(frozen=True)
class Facet:
    """Inequality ``normal . x <= offset`` valid on the affine hull.

    ``vertices`` indexes into :attr:`HullResult.vertices`.
    """

    normal: Vec
    offset: Rat
    vertices: frozenset


@dataclass(frozen=True)
class HullResult:
    vertices: tuple
    dim: int
    ambient_dim: int
    pivots: tuple
    equalities: tuple  # ((normal, offset), ...) cutting out the affine hull
    facets: tuple

    def contains(self, x: Sequence) -> bool:
        if not self.vertices:
            return False
        for e, f in self.equalities:
            if dot(e, x) != f:
                return False
        return all(dot(fc.normal, x) <= fc.offset for fc in self.facets)


def affine_frame(points: Sequence[Vec]):
    """Affine dimension, pivot coordinates and affine-hull equations."""
    n = len(points[0])
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if diffs:
        _, pivots = rref(diffs, n)
    else:
        pivots = []
    eqs = tuple((e, dot(e, p0)) for e in nullspace(diffs, n))
    return len(pivots), tuple(pivots), eqs


def _normalize(a: Vec, b: Rat):
    s = next(abs(x) for x in a if x != 0)
    return tuple(x / s for x in a), b / s


def _small_det(m) -> Rat:
    size = len(m)
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if size == 3:
        (a, b, c), (d, e, f), (g, h, i) = m
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return sum(
        (-1) ** j * m[0][j] * _small_det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(size)
        if m[0][j]
    )


def _cofactor_normal(rows) -> Vec:
    """Vector orthogonal to ``k - 1`` rows in Q^k (generalized cross product)."""
    k = len(rows) + 1
    return tuple(
        (-1) ** j * _small_det([r[:j] + r[j + 1:] for r in rows]) for j in range(k)
    )


def _hyperplane(pts: Sequence[Vec], inside: Vec):
    base = pts[0]
    rows = [sub(p, base) for p in pts[1:]]
    a = _cofactor_normal(rows)
    if all(x == 0 for x in a):
        raise ArithmeticError("degenerate facet in hull construction")
    b = dot(a, base)
    if dot(a, inside) > b:
        a = tuple(-x for x in a)
        b = -b
    return _normalize(a, b)


def _full_dim_facets(q: list[Vec]):
    """Facets of conv(q) for full-dimensional q in Q^k, k >= 2.

    Returns ``{hyperplane: set(point indices on it)}`` after merging coplanar
    simplicial facets, plus the candidate boundary indices.
    """
    k = len(q[0])
    order = sorted(range(len(q)), key=lambda i: q[i])
    simplex = [order[0]]
    for i in order[1:]:
        trial = simplex + [i]
        if rank([sub(q[j], q[trial[0]]) for j in trial[1:]]) == len(trial) - 1:
            simplex = trial
            if len(simplex) == k + 1:
                break
    if len(simplex) != k + 1:
        raise ArithmeticError("input is not full-dimensional")
    inside = tuple(sum(q[i][c] for i in simplex) / (k + 1) for c in range(k))
    facets = {}
    for combo in combinations(simplex, k):
        facets[frozenset(combo)] = _hyperplane([q[i] for i in combo], inside)
    in_simplex = set(simplex)
    for idx in order:
        if idx in in_simplex:
            continue
        p = q[idx]
        visible = [f for f, (a, b) in facets.items() if dot(a, p) > b]
        if not visible:
            continue
        ridges = Counter()
        for f in visible:
            for r in combinations(sorted(f), k - 1):
                ridges[r] += 1
        for f in visible:
            del facets[f]
        for r, count in ridges.items():
            if count == 1:
                new = frozenset(r + (idx,))
                facets[new] = _hyperplane([q[i] for i in new], inside)
    planes = {}
    candidates = set()
    for f, hp in facets.items():
        planes.setdefault(hp, set()).update(f)
        candidates.update(f)
    return planes, candidates


def convex_hull(points: Sequence[Sequence]) -> HullResult:
    """Irredundant V-representation plus facets of ``conv(points)``."""
    pts = sorted({tuple(to_rat(c) for c in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("dimension mismatch among points")
    k, pivots, eqs = affine_frame(pts)
    if k == 0:
        return HullResult((pts[0],), 0, n, pivots, eqs, ())
    q = [tuple(p[c] for c in pivots) for p in pts]

    def embed(a):
        full = [ZERO] * n
        for c, v in zip(pivots, a):
            full[c] = v
        return tuple(full)

    if k == 1:
        lo = min(range(len(q)), key=lambda i: q[i][0])
        hi = max(range(len(q)), key=lambda i: q[i][0])
        verts = tuple(sorted((pts[lo], pts[hi])))
        planes = [((-1,), -q[lo][0], pts[lo]), ((1,), q[hi][0], pts[hi])]
        facets = tuple(
            Facet(embed(tuple(to_rat(x) for x in a)), b, frozenset({verts.index(v)}))
            for a, b, v in planes
        )
        return HullResult(verts, 1, n, pivots, eqs, facets)

    planes, candidates = _full_dim_facets(q)
    incident = {i: [] for i in candidates}
    for (a, b) in planes:
        for i in candidates:
            if dot(a, q[i]) == b:
                incident[i].append(a)
    vert_idx = sorted(i for i in candidates if rank(incident[i]) == k)
    verts = tuple(pts[i] for i in vert_idx)
    pos = {i: j for j, i in enumerate(vert_idx)}
    facets = []
    for (a, b) in sorted(planes):
        on = frozenset(pos[i] for i in vert_idx if dot(a, q[i]) == b)
        facets.append(Facet(embed(a), b, on))
    return HullResult(verts, k, n, pivots, eqs, tuple(facets))
