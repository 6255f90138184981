"""Polyhedral convex functions and log-concave wrappers.

Two computable classes are provided:

* :class:`PLConvexS` -- a convex function with polytope domain, stored as the
  vertices ``(x, t)`` of the lower convex hull of its graph.  It equals the
  convex envelope of these points on their convex hull and ``+inf`` elsewhere.
* :class:`PLConvexF` -- a finite max-affine function ``max_i a_i·x + b_i``.

Both canonical forms are vertex sets of the same lower-hull computation, so
the Legendre transform between them is a relabelling of points.
"""

from __future__ import annotations

import json
import math
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ClassError, DomainError, InputError, UnsupportedError
from .hpreal import ExpRat
from .hull import HullResult, convex_hull
from .polytope import Polytope
from .rational import (
    ONE,
    ZERO,
    Rat,
    Vec,
    add,
    dot,
    fmt_rat,
    inverse,
    mat_vec,
    scale,
    to_rat,
    transpose,
    vec,
)

INF = math.inf


def is_inf(value) -> bool:
    return isinstance(value, float) and value == INF


def _matrix(phi):
    return getattr(phi, "matrix", phi)


def _inverse_matrix(phi):
    inv = getattr(phi, "inverse", None)
    if inv is not None and hasattr(inv, "matrix"):
        return inv.matrix
    return inverse(_matrix(phi))


def _lower_hull(points: Sequence[tuple]) -> tuple:
    """Lower-hull vertices of lifted points ``(x, t)`` (sorted, deduplicated)."""
    lifted = _cap_points(points, None)
    h = convex_hull(lifted[0])
    top = lifted[1]
    return tuple(sorted((v[:-1], v[-1]) for v in h.vertices if v[-1] < top))


def _cap_points(points, cap):
    ts = [t for _, t in points]
    top = max(ts) + 1 if cap is None else cap
    lifted = [x + (t,) for x, t in points]
    lifted += [x + (top,) for x, _ in points]
    return lifted, top


def _parse_points(points: Iterable) -> list:
    out = []
    for item in points:
        if isinstance(item, dict):
            x, t = item["x"], item["t"]
        else:
            x, t = item
        out.append((vec(x), to_rat(t)))
    if not out:
        raise DomainError("a proper function needs at least one graph point")
    n = len(out[0][0])
    if any(len(x) != n for x, _ in out):
        raise InputError("dimension mismatch among graph points")
    return out


class PLConvexS:
    """Polyhedral super-coercive convex function (compact polytope domain)."""

    kind = "S"

    def __init__(self, points: Iterable):
        pts = _parse_points(points)
        self.n = len(pts[0][0])
        self.graph_points = _lower_hull(pts)

    @classmethod
    def _trusted(cls, n: int, graph_points) -> "PLConvexS":
        obj = cls.__new__(cls)
        obj.n = n
        obj.graph_points = tuple(sorted(graph_points))
        return obj

    @classmethod
    def indicator(cls, P: Polytope, t=0) -> "PLConvexS":
        """``ι_P + t``."""
        if P.is_empty:
            raise DomainError("indicator of the empty set is not proper")
        t = to_rat(t)
        return cls._trusted(P.ambient_dim, [(v, t) for v in P.vertices])

    @classmethod
    def cone(cls, P: Polytope, y, t=0) -> "PLConvexS":
        """``ι_P + ℓ_y + t``."""
        return cls.indicator(P, t).dual_translate(y)

    def __repr__(self):
        return f"PLConvexS(n={self.n}, points={len(self.graph_points)})"

    def __eq__(self, other):
        if not isinstance(other, PLConvexS):
            return NotImplemented
        return self.graph_points == other.graph_points

    def __hash__(self):
        return hash(("S", self.graph_points))

    # -- derived geometry --------------------------------------------------

    @cached_property
    def top(self) -> Rat:
        return max(t for _, t in self.graph_points) + 1

    @cached_property
    def epigraph(self) -> Polytope:
        """``epi u ∩ {t <= max u + 1}`` as a polytope in R^{n+1}."""
        return self.capped_epigraph(self.top)

    def capped_epigraph(self, cap) -> Polytope:
        lifted, _ = _cap_points(self.graph_points, to_rat(cap))
        return Polytope(lifted)

    @property
    def _hull(self) -> HullResult:
        return self.epigraph.hull_data

    @cached_property
    def domain(self) -> Polytope:
        return Polytope([x for x, _ in self.graph_points])

    @cached_property
    def pieces(self) -> tuple:
        """Affine pieces ``(α, β)`` of the lower facets, one per cell."""
        return tuple((a, b) for a, b, _ in self._cells)

    @cached_property
    def _cells(self) -> tuple:
        h = self._hull
        out = []
        for fc in h.facets:
            at = fc.normal[-1]
            if at >= 0:
                continue
            alpha = tuple(c / -at for c in fc.normal[:-1])
            beta = fc.offset / at
            out.append((alpha, beta, tuple(sorted(fc.vertices))))
        return tuple(out)

    def cells(self):
        """``[(α, β, Polytope)]``: maximal regions where ``u = α·x + β``."""
        verts = self._hull.vertices
        return [(a, b, Polytope([verts[i][:-1] for i in idx])) for a, b, idx in self._cells]

    def in_domain(self, x: Vec) -> bool:
        h = self._hull
        for e, f in h.equalities:
            if dot(e[:-1], x) != f:
                return False
        for fc in h.facets:
            if fc.normal[-1] == 0 and dot(fc.normal[:-1], x) > fc.offset:
                return False
        return True

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        x = vec(x)
        if len(x) != self.n:
            raise InputError("evaluation point has wrong dimension")
        if len(self.graph_points) == 1:
            x0, t0 = self.graph_points[0]
            return t0 if x == x0 else INF
        if not self.in_domain(x):
            return INF
        return max(dot(a, x) + b for a, b in self.pieces)

    @cached_property
    def minimum(self) -> Rat:
        return min(t for _, t in self.graph_points)

    @cached_property
    def is_full_dim(self) -> bool:
        return self.domain.dim == self.n

    # -- affine operations -------------------------------------------------

    def translate(self, y) -> "PLConvexS":
        """``τ_y u = u(· - y)``."""
        y = _vec_n(y, self.n)
        return PLConvexS._trusted(self.n, [(add(x, y), t) for x, t in self.graph_points])

    def dual_translate(self, y) -> "PLConvexS":
        """``u + ℓ_y``."""
        y = _vec_n(y, self.n)
        return PLConvexS._trusted(self.n, [(x, t + dot(x, y)) for x, t in self.graph_points])

    def add_const(self, c) -> "PLConvexS":
        c = to_rat(c)
        return PLConvexS._trusted(self.n, [(x, t + c) for x, t in self.graph_points])

    def scale_arg(self, lam) -> "PLConvexS":
        """``u∘λ``, i.e. ``x -> u(λx)``."""
        lam = _nonzero(lam)
        return PLConvexS._trusted(self.n, [(scale(1 / lam, x), t) for x, t in self.graph_points])

    def scale_val(self, lam) -> "PLConvexS":
        """``λu`` for ``λ > 0``."""
        lam = _positive(lam)
        if lam == 1:
            return self
        return PLConvexS._trusted(self.n, [(x, lam * t) for x, t in self.graph_points])

    def compose(self, phi) -> "PLConvexS":
        """``u∘φ^{-1}``."""
        m = _matrix(phi)
        return PLConvexS._trusted(self.n, [(mat_vec(m, x), t) for x, t in self.graph_points])

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "points": [
                {"x": [fmt_rat(c) for c in x], "t": fmt_rat(t)} for x, t in self.graph_points
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PLConvexS":
        try:
            return cls(data["points"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, (InputError, DomainError)):
                raise
            raise InputError(f"invalid class-S function JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class PLConvexF:
    """Finite max-affine convex function ``max_i a_i·x + b_i`` (canonical)."""

    kind = "F"

    def __init__(self, pieces: Iterable):
        parsed = []
        for item in pieces:
            if isinstance(item, dict):
                a, b = item["a"], item["b"]
            else:
                a, b = item
            parsed.append((vec(a), to_rat(b)))
        if not parsed:
            raise DomainError("a max-affine function needs at least one piece")
        n = len(parsed[0][0])
        if any(len(a) != n for a, _ in parsed):
            raise InputError("dimension mismatch among pieces")
        self.n = n
        self.pieces = tuple((a, -t) for a, t in _lower_hull([(a, -b) for a, b in parsed]))
        self.canonical = True

    @classmethod
    def _trusted(cls, n: int, pieces) -> "PLConvexF":
        obj = cls.__new__(cls)
        obj.n = n
        obj.pieces = tuple(sorted(pieces))
        obj.canonical = True
        return obj

    @classmethod
    def support(cls, P: Polytope) -> "PLConvexF":
        """``h_P``."""
        if P.is_empty:
            raise DomainError("support function of the empty set")
        return cls._trusted(P.ambient_dim, [(v, ZERO) for v in P.vertices])

    @classmethod
    def linear(cls, y) -> "PLConvexF":
        """``ℓ_y``."""
        y = vec(y)
        return cls._trusted(len(y), [(y, ZERO)])

    @classmethod
    def constant(cls, n: int, c) -> "PLConvexF":
        return cls._trusted(n, [((ZERO,) * n, to_rat(c))])

    def __repr__(self):
        return f"PLConvexF(n={self.n}, pieces={len(self.pieces)})"

    def __eq__(self, other):
        if not isinstance(other, PLConvexF):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(("F", self.pieces))

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x) -> Rat:
        x = vec(x)
        if len(x) != self.n:
            raise InputError("evaluation point has wrong dimension")
        return max(dot(a, x) + b for a, b in self.pieces)

    @cached_property
    def dual_points(self) -> tuple:
        """Graph points ``(a_i, -b_i)`` of the conjugate."""
        return tuple((a, -b) for a, b in self.pieces)

    @cached_property
    def witnesses(self) -> tuple:
        """For each piece a point where it is the unique maximal piece."""
        if len(self.pieces) == 1:
            return ((ZERO,) * self.n,)
        lifted, _ = _cap_points(self.dual_points, None)
        h = convex_hull(lifted)
        out = []
        for a, t in self.dual_points:
            j = h.vertices.index(a + (t,))
            total = [ZERO] * (self.n + 1)
            for fc in h.facets:
                if j in fc.vertices:
                    total = [p + q for p, q in zip(total, fc.normal)]
            if total[-1] >= 0:
                raise ArithmeticError("lower-hull vertex without a lower facet")
            out.append(tuple(c / -total[-1] for c in total[:-1]))
        return tuple(out)

    def translate(self, y) -> "PLConvexF":
        y = _vec_n(y, self.n)
        return PLConvexF._trusted(self.n, [(a, b - dot(a, y)) for a, b in self.pieces])

    def dual_translate(self, y) -> "PLConvexF":
        y = _vec_n(y, self.n)
        return PLConvexF._trusted(self.n, [(add(a, y), b) for a, b in self.pieces])

    def add_const(self, c) -> "PLConvexF":
        c = to_rat(c)
        return PLConvexF._trusted(self.n, [(a, b + c) for a, b in self.pieces])

    def scale_arg(self, lam) -> "PLConvexF":
        lam = _nonzero(lam)
        return PLConvexF._trusted(self.n, [(scale(lam, a), b) for a, b in self.pieces])

    def scale_val(self, lam) -> "PLConvexF":
        lam = _positive(lam)
        return PLConvexF._trusted(self.n, [(scale(lam, a), lam * b) for a, b in self.pieces])

    def compose(self, phi) -> "PLConvexF":
        """``u∘φ^{-1}``: slopes map by ``φ^{-t}``."""
        m = transpose(_inverse_matrix(phi))
        return PLConvexF._trusted(self.n, [(mat_vec(m, a), b) for a, b in self.pieces])

    def to_dict(self) -> dict:
        return {"pieces": [{"a": [fmt_rat(c) for c in a], "b": fmt_rat(b)} for a, b in self.pieces]}

    @classmethod
    def from_dict(cls, data: dict) -> "PLConvexF":
        try:
            return cls(data["pieces"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, (InputError, DomainError)):
                raise
            raise InputError(f"invalid class-F function JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class LogConcaveFn:
    """``f = e^{-u}`` with ``u`` of class S (compact support) or F (positive)."""

    def __init__(self, base):
        if not isinstance(base, (PLConvexS, PLConvexF)):
            raise ClassError("base must be a PLConvexS or PLConvexF")
        self.base = base

    @property
    def kind(self) -> str:
        return self.base.kind

    @property
    def n(self) -> int:
        return self.base.n

    def __repr__(self):
        return f"LogConcaveFn(kind={self.kind}, base={self.base!r})"

    def __eq__(self, other):
        if not isinstance(other, LogConcaveFn):
            return NotImplemented
        return self.base == other.base

    def __hash__(self):
        return hash(("LC", self.base))

    def __call__(self, x) -> ExpRat:
        return self.eval(x)

    def eval(self, x) -> ExpRat:
        """Exact value ``e^{-u(x)}`` (zero off the support)."""
        v = self.base.eval(x)
        if is_inf(v):
            return ExpRat(ZERO, ZERO)
        return ExpRat(ONE, -v)

    def translate(self, y) -> "LogConcaveFn":
        """``τ_y f``."""
        return LogConcaveFn(self.base.translate(y))

    def mul_exp_linear(self, y) -> "LogConcaveFn":
        """``e^{-ℓ_y} f``."""
        return LogConcaveFn(self.base.dual_translate(y))

    def mul_const_exp(self, c) -> "LogConcaveFn":
        """``e^{-c} f``."""
        return LogConcaveFn(self.base.add_const(c))

    def compose(self, phi) -> "LogConcaveFn":
        return LogConcaveFn(self.base.compose(phi))

    def scale_arg(self, lam) -> "LogConcaveFn":
        return LogConcaveFn(self.base.scale_arg(lam))

    def power(self, lam) -> "LogConcaveFn":
        """``f^λ = e^{-λu}`` for ``λ > 0``."""
        return LogConcaveFn(self.base.scale_val(lam))

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        d.update(self.base.to_dict())
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "LogConcaveFn":
        kind = data.get("kind")
        if kind == "S":
            return cls(PLConvexS.from_dict(data))
        if kind == "F":
            return cls(PLConvexF.from_dict(data))
        raise InputError(f"unknown log-concave kind {kind!r}")

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def function_from_dict(data: dict):
    """Parse any of the three function JSON shapes."""
    if "kind" in data:
        return LogConcaveFn.from_dict(data)
    if "points" in data:
        return PLConvexS.from_dict(data)
    if "pieces" in data:
        return PLConvexF.from_dict(data)
    raise InputError("function JSON needs 'points', 'pieces' or 'kind'")


# -- lattice operations ------------------------------------------------------


def _same_class(u, v):
    if type(u) is not type(v):
        raise ClassError("lattice operations need two functions of the same class")
    if u.n != v.n:
        raise InputError("functions live in different dimensions")


def join_S(u: PLConvexS, v: PLConvexS):
    """``u ∨ v`` or ``None`` when the epigraphs do not meet (nowhere finite)."""
    _same_class(u, v)
    cap = max(u.top, v.top)
    inter = u.capped_epigraph(cap).intersect(v.capped_epigraph(cap))
    pts = [(p[:-1], p[-1]) for p in inter.vertices if p[-1] < cap]
    if not pts:
        return None
    return PLConvexS._trusted(u.n, pts)


def meet_S(u: PLConvexS, v: PLConvexS) -> PLConvexS:
    """``u ∧̃ v``: the largest convex minorant of ``min(u, v)``."""
    _same_class(u, v)
    return PLConvexS(list(u.graph_points) + list(v.graph_points))


def is_min_convex_S(u: PLConvexS, v: PLConvexS) -> bool:
    """Whether ``min(u, v)`` is convex.

    Capped at a common height the epigraph of ``min(u, v)`` is ``E_u ∪ E_v``,
    which is convex iff it fills its convex hull.  Volumes are taken in the
    affine hull of ``conv(E_u ∪ E_v)`` via its pivot coordinates, which
    scales all of them by the same factor.
    """
    _same_class(u, v)
    cap = max(u.top, v.top)
    eu, ev = u.capped_epigraph(cap), v.capped_epigraph(cap)
    whole = convex_hull(list(eu.vertices) + list(ev.vertices))
    if whole.dim == 0:
        return True
    piv = whole.pivots

    def rel_volume(P: Polytope):
        if P.is_empty:
            return ZERO
        return Polytope([tuple(p[c] for c in piv) for p in P.vertices]).volume

    inter = eu.intersect(ev)
    total = rel_volume(Polytope(whole.vertices))
    return total == rel_volume(eu) + rel_volume(ev) - rel_volume(inter)


def join_meet(u, v):
    """``(u ∨ v, u ∧̃ v, min(u, v) is convex)`` for two functions of one class.

    For class S the join is ``None`` when it is nowhere finite.  For class F
    the meet is ``None`` when it is unbounded below.
    """
    _same_class(u, v)
    if isinstance(u, PLConvexS):
        return join_S(u, v), meet_S(u, v), is_min_convex_S(u, v)
    us, vs = PLConvexS._trusted(u.n, u.dual_points), PLConvexS._trusted(v.n, v.dual_points)
    join = PLConvexF(list(u.pieces) + list(v.pieces))
    dual = join_S(us, vs)
    meet = None if dual is None else PLConvexF._trusted(u.n, [(x, -t) for x, t in dual.graph_points])
    return join, meet, is_min_convex_S(us, vs)


def inf_conv(u, v) -> PLConvexS:
    """``u □ v``: epigraph Minkowski sum (class S only)."""
    if isinstance(u, PLConvexF) or isinstance(v, PLConvexF):
        raise UnsupportedError("inf-convolution is only implemented for class S")
    _same_class(u, v)
    return PLConvexS(
        [(add(x, y), s + t) for x, s in u.graph_points for y, t in v.graph_points]
    )


# -- helpers -----------------------------------------------------------------


def _vec_n(y, n) -> Vec:
    y = vec(y)
    if len(y) != n:
        raise InputError("vector has wrong dimension")
    return y


def _nonzero(lam) -> Rat:
    lam = to_rat(lam)
    if lam == 0:
        raise InputError("scale factor must be nonzero")
    return lam


def _positive(lam) -> Rat:
    lam = to_rat(lam)
    if lam <= 0:
        raise InputError("value scale must be positive")
    return lam
