"""Surfaces satisfying the holomorphic quadratic support-function relation.

Modules: ``holo_expr`` (expressions, derivatives, jets), ``geometry_core``
(Gauss-map representation), ``hqsf`` (holomorphic data to surface),
``rotation`` (rotational family), ``meshio`` (OBJ/CSV export), ``cli``.
"""
from .errors import DegeneratePoint, DegenerateWronskian, SingularGaussMap, SurfaceError
from .holo_expr import DomainError, HoloExpr, ParseError, parse
from .hqsf import HQSFData, defining_residual, evaluate_point
from .rotation import Case, RotationParams, discriminant

__all__ = [
    "Case", "DegeneratePoint", "DegenerateWronskian", "DomainError", "HQSFData", "HoloExpr",
    "ParseError", "RotationParams", "SingularGaussMap", "SurfaceError", "defining_residual",
    "discriminant", "evaluate_point", "parse",
]
