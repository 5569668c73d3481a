"""Exact computations with finite products of fields K^S, their idempotent
Boolean algebras, finite Stone duality and profinite presentations."""

from .boolalg import BAElement, BAHom, BoolAlg, clopen, j_iso, powerset_algebra, stone
from .boolspace import (ContinuousMap, EquivRelation, FiniteBoolSpace, InverseSystem, delta,
                        delta_functor, discrete_space, limit, quotient)
from .duality import epsilon, kcheck, khat, theta
from .errors import ContractError, DomainError, ParseError, ResourceError
from .exact import QQ, RR, Rational, RealApprox
from .report import NaturalIsoReport, Report
from .smooth import SmoothExpr, compose, evaluate, parse
from .verify import Bounds, full_pipeline_verify
from .vnring import (Idempotent, ProductRing, RingElement, RingHom, idempotent_of, idempotents,
                     quasi_inverse, spec)

__version__ = "0.1.0"

__all__ = [
    "BAElement", "BAHom", "BoolAlg", "Bounds", "ContinuousMap", "ContractError", "DomainError",
    "EquivRelation", "FiniteBoolSpace", "Idempotent", "InverseSystem", "NaturalIsoReport",
    "ParseError", "ProductRing", "QQ", "RR", "Rational", "RealApprox", "Report", "ResourceError",
    "RingElement", "RingHom", "SmoothExpr", "clopen", "compose", "delta", "delta_functor",
    "discrete_space", "epsilon", "evaluate", "full_pipeline_verify", "idempotent_of",
    "idempotents", "j_iso", "kcheck", "khat", "limit", "parse", "powerset_algebra",
    "quasi_inverse", "quotient", "spec", "stone", "theta",
]
