from __future__ import annotations

from fractions import Fraction
from math import isqrt

from ..errors import DomainError


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


class FieldContext:
    """The field Q[sqrt(d)] for a fixed positive non-square rational ``d``.

    Contexts compare by value, so two separately parsed ``sqrt(2)`` inputs
    interoperate.  ``d`` is kept exactly as given: Q[sqrt(8)] and Q[sqrt(2)]
    are the same field but different contexts.
    """

    __slots__ = ("d", "dn", "dd", "_hash")

    def __init__(self, d):
        d = Fraction(d)
        if d <= 0:
            raise DomainError(f"d must be positive, got {d}")
        if _is_square(d.numerator) and _is_square(d.denominator):
            raise DomainError(f"sqrt({d}) is rational")
        self.d = d
        self.dn = d.numerator
        self.dd = d.denominator
        self._hash = hash(("FieldContext", d))

    def __eq__(self, other):
        if self is other:
            return True
        if isinstance(other, FieldContext):
            return self.d == other.d
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FieldContext({str(self.d)!r})"

    def __reduce__(self):
        return (FieldContext, (str(self.d),))
