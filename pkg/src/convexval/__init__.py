"""Exact convex analysis on polyhedral functions and a law-checking harness.

The library works with exact rationals throughout; only values involving
``e^z`` leave the rational field and are returned as arb balls with a
rigorous radius.
"""

__version__ = "0.1.0"

from .duality import LEGENDRE, TransformHandle, dualize
from .errors import (
    ClassError,
    ConvexValError,
    DomainError,
    InputError,
    ParameterError,
    UnsupportedError,
)
from .families import FamilyParams, dual_family_eval, family_eval
from .functions import (
    LogConcaveFn,
    PLConvexF,
    PLConvexS,
    inf_conv,
    is_min_convex_S,
    join_meet,
    join_S,
    meet_S,
)
from .harness import cauchy_family_check, check_continuity, check_laws
from .polytope import Polytope, hull, measures
from .report import LawResult, ValuationReport, merge
from .suites import SUITES, run_suite
from .transforms import (
    laplace_logconcave,
    laplace_polytope,
    legendre,
    legendre_F,
    legendre_S,
    polar,
)
from .unimodular import UnimodularMap, random_unimodular

__all__ = [
    "ClassError",
    "ConvexValError",
    "DomainError",
    "FamilyParams",
    "InputError",
    "LEGENDRE",
    "LawResult",
    "LogConcaveFn",
    "PLConvexF",
    "PLConvexS",
    "ParameterError",
    "Polytope",
    "SUITES",
    "TransformHandle",
    "UnimodularMap",
    "UnsupportedError",
    "ValuationReport",
    "cauchy_family_check",
    "check_continuity",
    "check_laws",
    "dual_family_eval",
    "dualize",
    "family_eval",
    "hull",
    "inf_conv",
    "is_min_convex_S",
    "join_S",
    "join_meet",
    "laplace_logconcave",
    "laplace_polytope",
    "legendre",
    "legendre_F",
    "legendre_S",
    "measures",
    "meet_S",
    "merge",
    "polar",
    "random_unimodular",
    "run_suite",
]
