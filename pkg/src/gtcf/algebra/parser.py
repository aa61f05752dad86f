"""Text syntax for polynomials.

Grammar (EBNF)::

    poly    = [ "+" | "-" ] term { ( "+" | "-" ) term } ;
    term    = factor { "*" factor } ;
    factor  = base [ "^" INT ] ;
    base    = NUMBER [ "/" NUMBER ] | IDENT | "zeta" | "(" poly ")" ;
    NUMBER  = digit { digit } ;
    INT     = digit { digit } ;            (* no sign: negative exponents are rejected *)
    IDENT   = letter { letter | digit | "_" } ;

``zeta`` names the cyclotomic generator and is only legal over Q(zeta_n).
Whitespace is insignificant.  The printer emits terms in descending
graded reverse lexicographic order and its output parses back to the same
polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from ..errors import ParseError, ValidationError
from .poly import Poly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", position=m.start(3))
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, ch):
        t = self.take()
        if t[0] != "op" or t[1] != ch:
            raise ParseError(f"expected {ch!r}, found {t[1] or 'end of input'!r}", position=t[2])

    def poly(self) -> Poly:
        t = self.peek()
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        base = self.base()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] == "op" and e[1] == "-":
                raise ParseError("negative exponent", position=e[2])
            if e[0] != "num":
                raise ParseError("exponent must be a non-negative integer", position=e[2])
            return base ** int(e[1])
        return base

    def base(self) -> Poly:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            num = int(val)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("expected denominator", position=d[2])
                if int(d[1]) == 0:
                    raise ParseError("zero denominator", position=d[2])
                return self.ring.const(Fraction(num, int(d[1])))
            return self.ring.const(num)
        if kind == "id":
            if val == "zeta" and "zeta" not in self.ring.index:
                if self.ring.field.kind != "cyclotomic":
                    raise ValidationError(
                        f"zeta used over the rational field (at position {pos})",
                        kind="zeta-in-rational-field",
                        position=pos,
                    )
                return self.ring.zeta()
            if val not in self.ring.index:
                raise ValidationError(
                    f"unknown variable {val!r} (at position {pos})", kind="unknown-variable", position=pos
                )
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.poly()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", position=pos)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` into a polynomial of ``ring``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial", position=0)
    out = p.poly()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", position=t[2])
    return out


def _format_coeff(c, field) -> Tuple[str, str]:
    """Return (sign, magnitude text); magnitude is '' for a unit coefficient."""
    if isinstance(c, Fraction):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        return sign, ("" if mag == 1 else str(mag))
    return "+", "(" + field.format(c) + ")"


def format_poly(p: Poly) -> str:
    ring = p.ring
    if not p.terms:
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        sign, mag = _format_coeff(c, ring.field)
        mono = "*".join(
            (v if k == 1 else f"{v}^{k}") for v, k in zip(ring.vars, e) if k
        )
        if not mono:
            body = mag or "1"
        elif not mag:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append((sign, body))
    s0, b0 = pieces[0]
    out = ("-" if s0 == "-" else "") + b0
    for s, b in pieces[1:]:
        out += f" {s} {b}"
    return out
