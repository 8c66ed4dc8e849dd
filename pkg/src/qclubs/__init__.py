"""Exact-arithmetic toolkit for clubs on PG(1, q^n) and their
blocking sets, KM-arcs and three-weight rank-metric codes."""

from .gfcore import FieldCtx, FieldError, get_ctx
from .linpoly import LinPoly
from .subspaces import ClassificationError, LinearSetReport, QSubspace, linear_set

__all__ = [
    "FieldCtx",
    "FieldError",
    "get_ctx",
    "LinPoly",
    "ClassificationError",
    "LinearSetReport",
    "QSubspace",
    "linear_set",
]

__version__ = "0.1.0"
