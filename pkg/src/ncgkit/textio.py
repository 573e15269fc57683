"""A small parser for the plain-text polynomial grammar used on the command line
and in JSON files.

Examples of accepted input::

    3/2 x^2 y - z(4) x
    (1 + 2*z)/3
    2 + z^-1

The parser returns a sparse dict mapping monomials to exact scalars.  A
monomial is a sorted tuple of (variable, exponent) pairs.  ``z(m)`` is the
root of unity exp(2 pi i/m); any other identifier is a variable.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .cyclo import CycloScalar, coerce, format_scalar, inv, simplify

_TOKEN = re.compile(r"\s*(?:(\d+)|(z\(\s*\d+\s*\))|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, zeta, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif zeta is not None:
            out.append(("zeta", int(zeta[2:-1])))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def _mono_mul(a: tuple, b: tuple) -> tuple:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            k = _mono_mul(ma, mb)
            out[k] = out.get(k, 0) + ca * cb
    return {k: simplify(v) for k, v in out.items() if v != 0}


def poly_add(p: dict, q: dict, sign=1) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: simplify(v) for k, v in out.items() if v != 0}


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = {k: -v for k, v in acc.items()}
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                acc = poly_add(acc, self.term(), -1 if val == "-" else 1)
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = poly_mul(acc, self.power())
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                if list(d) != [()]:
                    raise ParseError("division is only allowed by a constant")
                c = inv(d[()])
                acc = {k: simplify(v * c) for k, v in acc.items()}
            elif kind in ("num", "zeta", "id") or (kind == "op" and val == "("):
                acc = poly_mul(acc, self.power())
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            e = sign * val
            if len(base) != 1:
                if e < 0:
                    raise ParseError("negative power of a sum")
                out = {(): 1}
                for _ in range(e):
                    out = poly_mul(out, base)
                return out
            (mono, c), = base.items()
            if e < 0:
                c = inv(c)
            return {tuple((v, k * e) for v, k in mono): simplify(c ** abs(e))}
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {(): val}
        if kind == "zeta":
            return {(): simplify(CycloScalar.root_of_unity(val))}
        if kind == "id":
            return {((val, 1),): 1}
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val = self.take()
            if (kind, val) != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str) -> dict:
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    p = _Parser(toks)
    out = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input near token {p.i}")
    return out


def parse_scalar(text, conductor: int = 1):
    """Parse a scalar: a polynomial in z standing for zeta_conductor, or z(m) roots."""
    if isinstance(text, (int, Fraction)):
        return text
    poly = parse_poly(str(text))
    total = 0
    for mono, c in poly.items():
        term = c
        for v, e in mono:
            if v != "z":
                raise ParseError(f"unexpected variable {v!r} in scalar")
            term = term * CycloScalar.root_of_unity(conductor, e)
        total = total + term
    return simplify(total)


def format_coeff(c) -> str:
    """A scalar as it appears in front of a monomial: roots of unity as z(m)."""
    c = simplify(c)
    if isinstance(c, (int, Fraction)):
        return str(c)
    cs = coerce(c)
    # a bare root of unity prints as z(m)
    if sum(1 for v in cs.num if v) == 1:
        k = next(i for i, v in enumerate(cs.num) if v)
        sgn = "-" if cs.num[k] < 0 else ""
        mag = Fraction(abs(cs.num[k]), cs.den)
        root = f"z({cs.m})" if k == 1 else f"z({cs.m})^{k}"
        return sgn + (root if mag == 1 else f"{mag}*{root}")
    body = format_scalar(cs, var=f"z({cs.m})")
    return body if body.startswith("(") else f"({body})"
