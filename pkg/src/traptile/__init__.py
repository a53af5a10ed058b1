"""Exact construction and verification of trapezoid tilings by homothetic copies."""

from .errors import (
    DivisionByZero,
    DomainError,
    KindMismatch,
    MixedContext,
    ParseError,
    PreconditionError,
    SingularSystem,
    TraptileError,
)
from .field import BACKEND, FieldContext, QuadraticNumber, parse_qnum

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DivisionByZero",
    "DomainError",
    "FieldContext",
    "KindMismatch",
    "MixedContext",
    "ParseError",
    "PreconditionError",
    "QuadraticNumber",
    "SingularSystem",
    "TraptileError",
    "parse_qnum",
]
