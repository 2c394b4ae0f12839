"""Parsing polynomial expressions like ``(x^2+x+1)^3`` or ``(t+1)*x^2 + t``.

Grammar (whitespace ignored)::

    expr    := [+|-] term ((+|-) term)*
    term    := power ([*] power)*          juxtaposition multiplies, e.g. 2x
    power   := primary [^ INT]
    primary := INT | x | t | ( expr )

``x`` is the ring variable and ``t`` the generator of F_q over F_p (only
valid when l > 1).  Integer literals are reduced mod p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import FieldSpec, Poly
from .errors import CoeffOutOfField, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class PolyExpr:
    source: str
    poly: Poly

    def __str__(self):
        return format_poly(self.poly)


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("int", num, start))
        elif name is not None:
            toks.append(("name", name, start))
        else:
            toks.append(("sym", sym, start))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, spec: FieldSpec, var: str):
        self.toks = _tokenize(src)
        self.i = 0
        self.spec = spec
        self.var = var

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_sym(self, sym: str):
        kind, text, pos = self.take()
        if kind != "sym" or text != sym:
            raise ParseError(f"unexpected {text or 'end of input'!r}", pos, repr(sym))

    def parse(self) -> Poly:
        out = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", pos, "an operator or end of input")
        return out

    def expr(self) -> Poly:
        sign = 1
        kind, text, _ = self.peek()
        if kind == "sym" and text in "+-":
            self.take()
            sign = -1 if text == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while True:
            kind, text, _ = self.peek()
            if kind == "sym" and text in "+-":
                self.take()
                rhs = self.term()
                out = out + rhs if text == "+" else out - rhs
            else:
                return out

    def _starts_primary(self) -> bool:
        kind, text, _ = self.peek()
        return kind in ("int", "name") or (kind == "sym" and text == "(")

    def term(self) -> Poly:
        out = self.power()
        while True:
            kind, text, _ = self.peek()
            if kind == "sym" and text == "*":
                self.take()
                out = out * self.power()
            elif self._starts_primary():
                out = out * self.power()
            else:
                return out

    def power(self) -> Poly:
        base = self.primary()
        kind, text, _ = self.peek()
        if kind == "sym" and text == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos, "an integer")
            return base ** int(text)
        return base

    def primary(self) -> Poly:
        spec = self.spec
        kind, text, pos = self.take()
        if kind == "int":
            return Poly.const(spec, spec.from_int(int(text)))
        if kind == "name":
            if text == self.var:
                return Poly.x(spec)
            if text == "t":
                if spec.l == 1:
                    raise CoeffOutOfField(f"'t' at position {pos}: {spec} has no extension generator")
                return Poly.const(spec, spec.p)  # code p is the generator t
            raise ParseError(f"unknown name {text!r}", pos, f"{self.var!r}, 't' or a number")
        if kind == "sym" and text == "(":
            inner = self.expr()
            self.expect_sym(")")
            return inner
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos, "a number, variable or '('")


def parse_poly(src: str, spec: FieldSpec, var: str = "x") -> Poly:
    return _Parser(src, spec, var).parse()


def parse_expr(src: str, spec: FieldSpec, var: str = "x") -> PolyExpr:
    return PolyExpr(src, parse_poly(src, spec, var))


def format_poly(f: Poly, var: str = "x") -> str:
    return f.to_str(var)
