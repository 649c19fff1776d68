"""Parser and serializer for interface code strings.

Canonical form: ``TYPE-P<p>-H<h>-A<a>-T<t>-I<i>-D<d>``, e.g.
``M1-P3-H1-A2-T1-I0-D0``. Input letters are case-insensitive and surrounding
whitespace is trimmed; anything else off-grammar raises :class:`MalformedCode`.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .model import FACTOR_ORDER, FACTOR_SCORES, InterfaceCode, InterfaceType, TaskFactors

TYPE_TOKENS = tuple(t.value for t in InterfaceType)

# (segment letter, number of legal digits starting at the low bound, low bound)
_SEGMENTS = (("P", 4, 1),) + tuple((k, len(FACTOR_SCORES[k]), 0) for k in FACTOR_ORDER)


class MalformedCode(ValueError):
    """An interface code string that does not match the grammar."""

    def __init__(self, text: str, position: int, expected: str, found: str | None = None):
        self.text = text
        self.position = position
        self.expected = expected
        self.found = found
        got = f"found {found!r}" if found is not None else "found end of input"
        super().__init__(f"malformed interface code {text!r} at position {position}: expected {expected}, {got}")


def parse_code(s: str) -> InterfaceCode:
    text = s.strip()
    raw = text.upper()
    for pos, ch in enumerate(raw):
        if ch.isspace():
            raise MalformedCode(text, pos, "no internal whitespace", ch)

    end = raw.find("-")
    token = raw if end < 0 else raw[:end]
    if token not in TYPE_TOKENS:
        raise MalformedCode(text, 0, "interface type " + "/".join(TYPE_TOKENS), token or None)
    pos = len(token)

    values = []
    for letter, count, low in _SEGMENTS:
        for want in ("-", letter):
            if pos >= len(raw) or raw[pos] != want:
                raise MalformedCode(text, pos, repr(want), raw[pos] if pos < len(raw) else None)
            pos += 1
        high = low + count - 1
        if pos >= len(raw) or raw[pos] not in "0123456789" or not low <= int(raw[pos]) <= high:
            raise MalformedCode(
                text, pos, f"{letter} digit {low}-{high}", raw[pos] if pos < len(raw) else None
            )
        values.append(int(raw[pos]))
        pos += 1
        # a second digit would be swallowed silently without this check
        if pos < len(raw) and raw[pos] != "-":
            raise MalformedCode(text, pos, "'-' or end of code", raw[pos])

    if pos != len(raw):
        raise MalformedCode(text, pos, "end of code", raw[pos])

    priority, *levels = values
    return InterfaceCode(InterfaceType(token), priority, TaskFactors(*levels))


def serialize_code(c: InterfaceCode) -> str:
    parts = [c.itype.value, f"P{c.priority}"]
    parts += [f"{k}{lvl}" for k, lvl in zip(FACTOR_ORDER, c.factors.levels())]
    return "-".join(parts)


def all_codes() -> Iterator[InterfaceCode]:
    """Every grammar-valid code (6 types x 4 priorities x 4*5*3*3*3 levels = 12960)."""
    ranges = [range(len(FACTOR_SCORES[k])) for k in FACTOR_ORDER]
    for itype, p, *levels in product(InterfaceType, range(1, 5), *ranges):
        yield InterfaceCode(itype, p, TaskFactors(*levels))
