"""Text grammar for polynomials: terms `c*x^i*y^j` joined by `+`/`-`.

Coefficients are integers reduced mod p.  Variables are x and y; the aliases
u and v are accepted and mapped by chart context (u -> x-slot, v -> y-slot in
the base chart; v -> y-slot in the middle chart).
"""

from __future__ import annotations

import re

from .field import Fq
from .poly import Poly2


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z])|(\^)|(\*)|(\+)|(-)|(\()|(\)))")

# variable aliases -> abstract slot
_SLOTS = {"x": 0, "y": 1, "u": 0, "v": 1}


def parse_poly(text: str, field: Fq) -> Poly2:
    """Parse a polynomial in the two chart variables over F_q."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        groups = m.groups()
        for kind, val in enumerate(groups):
            if val is not None:
                tokens.append((kind, val, m.start()))
                break
        pos = m.end()

    result = Poly2.zero(field)
    idx = 0
    sign = 1
    expect_term = True
    while idx < len(tokens):
        kind, val, tpos = tokens[idx]
        if kind == 4:  # +
            idx += 1
            expect_term = True
            continue
        if kind == 5:  # -
            sign = -sign
            idx += 1
            expect_term = True
            continue
        if not expect_term:
            raise ParseError("expected + or - between terms", tpos)
        coeff = 1
        exps = [0, 0]
        saw_factor = False
        while idx < len(tokens):
            kind, val, tpos = tokens[idx]
            if kind == 0:  # integer
                coeff *= int(val)
                idx += 1
                saw_factor = True
            elif kind == 1:  # variable
                if val not in _SLOTS:
                    raise ParseError(f"unknown variable {val!r}", tpos)
                slot = _SLOTS[val]
                e = 1
                idx += 1
                if idx < len(tokens) and tokens[idx][0] == 2:  # ^
                    idx += 1
                    if idx >= len(tokens) or tokens[idx][0] != 0:
                        raise ParseError("expected integer exponent after ^", tpos)
                    e = int(tokens[idx][1])
                    idx += 1
                exps[slot] += e
                saw_factor = True
            elif kind == 3:  # *
                idx += 1
            else:
                break
        if not saw_factor:
            raise ParseError("empty term", tpos)
        c = field.of_int(sign * coeff)
        result = result + Poly2.monomial(field, exps[0], exps[1], c)
        sign = 1
        expect_term = False
    if expect_term and tokens:
        raise ParseError("dangling operator", tokens[-1][2])
    return result
