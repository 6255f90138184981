"""Transform handles and the dual-valuation bridge ``Ψ*(u) = Ψ(u*)``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ClassError, InputError
from .families import DUAL_VARIANTS, FamilyParams, dual_family_eval, family_eval
from .functions import LogConcaveFn, PLConvexF, PLConvexS
from .polytope import Polytope
from .rational import fmt_rat, to_rat
from .transforms import legendre_F, legendre_S

# Input class of each base transform.  Class "S" inputs double as LC_sc
# (f = e^{-u}); class "F" inputs double as LC_+.
_BASE_CLASS = {
    "legendre": "S",
    "laplace": "S",
    "polar": "S",
    "weird": "S",
    "thm13": "S",
    "family": None,  # from params
    "dual_family": "F",
}

_FLIP = {"S": "F", "F": "S"}


@dataclass(frozen=True)
class TransformHandle:
    """A transform id with parameters and a dualization flag.

    ``params`` is a tuple of ``(key, value)`` pairs so handles stay hashable.
    """

    transform: str
    params: tuple = ()
    dualized: bool = False
    _family: FamilyParams | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.transform not in _BASE_CLASS:
            raise InputError(f"unknown transform {self.transform!r}")
        # canonical params so a JSON round trip yields an equal handle
        p = {k: (v if k == "variant" or v is None else to_rat(v)) for k, v in self.params}
        object.__setattr__(self, "params", tuple(sorted(p.items())))
        fam = None
        if self.transform == "family":
            fam = FamilyParams(**p)
        elif self.transform in ("legendre", "polar", "laplace", "thm13"):
            variant = self.transform
            fam = FamilyParams(variant, **{k: v for k, v in p.items()})
        elif self.transform == "weird":
            fam = FamilyParams("weird")
        elif self.transform == "dual_family":
            if p.get("variant") not in DUAL_VARIANTS:
                raise InputError(f"dual family needs variant in {DUAL_VARIANTS}")
        object.__setattr__(self, "_family", fam)
        if self.dualized and self.base_class == "polytope":
            raise ClassError("polytope families have no dual valuation")

    @classmethod
    def make(cls, transform: str, dualized: bool = False, **params) -> "TransformHandle":
        return cls(transform, tuple(sorted(params.items())), dualized)

    @classmethod
    def family(cls, params: FamilyParams) -> "TransformHandle":
        d = {k: v for k, v in params.__dict__.items()}
        return cls.make("family", **d)

    @property
    def base_class(self) -> str:
        if self.transform == "family":
            return "polytope" if self._family.input_class == "polytope" else "S"
        return _BASE_CLASS[self.transform]

    @property
    def input_class(self) -> str:
        c = self.base_class
        return _FLIP[c] if self.dualized and c in _FLIP else c

    @property
    def output_domain(self) -> str:
        return "R^n\\{0}" if self.base_class == "polytope" else "R^n"

    def _check(self, obj):
        base = obj.base if isinstance(obj, LogConcaveFn) else obj
        want = self.input_class
        ok = (
            (want == "S" and isinstance(base, PLConvexS))
            or (want == "F" and isinstance(base, PLConvexF))
            or (want == "polytope" and isinstance(base, Polytope))
        )
        if not ok:
            raise InputError(f"{self.describe()} expects class {want}, got {type(base).__name__}")
        return base

    def _pre(self, base):
        if not self.dualized:
            return base
        return legendre_F(base) if isinstance(base, PLConvexF) else legendre_S(base)

    def evaluator(self, obj):
        """Return ``x -> (Φ obj)(x)``."""
        base = self._pre(self._check(obj))
        if self.transform == "dual_family":
            p = dict(self.params)
            variant = p.pop("variant")
            wrap = base if variant == "id_c" else LogConcaveFn(base)
            return lambda x, prec=None: dual_family_eval(variant, p, wrap, x, prec)
        fam = self._family
        return lambda x, prec=None: family_eval(fam, base, x, prec)

    def evaluate(self, obj, x, prec: int | None = None):
        return self.evaluator(obj)(x, prec)

    def describe(self) -> str:
        inner = ",".join(f"{k}={_fmt(v)}" for k, v in self.params)
        name = f"{self.transform}({inner})" if inner else self.transform
        return f"dual[{name}]" if self.dualized else name

    def to_dict(self) -> dict:
        return {
            "transform": self.transform,
            "params": {k: _fmt(v) for k, v in self.params},
            "dualized": self.dualized,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TransformHandle":
        try:
            params = dict(data.get("params", {}))
        except (TypeError, ValueError) as exc:
            raise InputError(f"invalid handle params: {exc}") from exc
        return cls.make(data["transform"], bool(data.get("dualized", False)), **params)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _fmt(v):
    if isinstance(v, str):
        return v
    return fmt_rat(to_rat(v))


def dualize(handle: TransformHandle) -> TransformHandle:
    """``Φ -> Φ*`` with ``Φ*(u) = Φ(u*)``; an involution on handles."""
    if handle.base_class == "polytope":
        raise ClassError("polytope families have no dual valuation")
    return TransformHandle(handle.transform, handle.params, not handle.dualized)


LEGENDRE = TransformHandle.make("legendre")
