"""Text grammar for field elements.

    rational ::= int | int "/" posint
    qnum     ::= rational | rational ("+"|"-") rational "*sqrt(" rational ")"

The parser is a little more forgiving than the grammar (whitespace, a bare
``sqrt(d)`` or ``k*sqrt(d)`` without a rational part); the formatter always
emits the strict canonical form.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError

_RAT = r"[+-]?\d+(?:/\d+)?"
_SQRT_TERM = re.compile(
    rf"^(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>{_RAT})\s*\)$"
)
_RAT_ONLY = re.compile(rf"^{_RAT}$")


def parse_rational(text: str) -> Fraction:
    s = text.strip().replace(" ", "")
    if not _RAT_ONLY.match(s):
        raise ParseError(f"not a rational: {text!r}")
    value = Fraction(s)
    if "/" in s and int(s.split("/")[1]) == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return value


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def split_qnum(text: str) -> tuple[Fraction, Fraction, Fraction | None]:
    """Split ``text`` into (rational part, irrational coefficient, d or None)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty number")
    if "sqrt" not in s:
        try:
            return Fraction(s) if _RAT_ONLY.match(s) else _fail(text), Fraction(0), None
        except ZeroDivisionError:
            raise ParseError(f"zero denominator: {text!r}") from None
    idx = s.find("sqrt")
    # walk back over "coef*" and the joining sign
    j = idx
    if j > 0 and s[j - 1] == "*":
        j -= 1
        while j > 0 and (s[j - 1].isdigit() or s[j - 1] == "/"):
            j -= 1
    if j > 0 and s[j - 1] in "+-":
        j -= 1
    head, tail = s[:j], s[j:]
    m = _SQRT_TERM.match(tail)
    if m is None:
        raise ParseError(f"malformed sqrt term in {text!r}")
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    if m.group("sign") == "-":
        coef = -coef
    try:
        d = Fraction(m.group("d"))
        rat = Fraction(0) if head == "" else (Fraction(head) if _RAT_ONLY.match(head) else _fail(text))
    except ZeroDivisionError:
        raise ParseError(f"zero denominator: {text!r}") from None
    return rat, coef, d


def format_qnum(rat: Fraction, irr: Fraction, d: Fraction | None) -> str:
    if irr == 0:
        return format_rational(rat)
    op = "+" if irr > 0 else "-"
    return f"{format_rational(rat)}{op}{format_rational(abs(irr))}*sqrt({format_rational(d)})"


def _fail(text):
    raise ParseError(f"cannot parse {text!r}")
