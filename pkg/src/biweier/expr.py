"""Tiny recursive-descent parser for polynomial expressions.

Grammar: integers and a/b literals, identifiers, + - * / ^ and parentheses.
Division is only allowed by constants.  ``sqrt(n)`` is accepted in scalar
context and produces an element of Q(sqrt(n)).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactalg import FieldElt, Poly, as_rational

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^():;,]))")


class ExprSyntaxError(ValueError):
    def __init__(self, msg, text, pos):
        pointer = " " * pos + "^"
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {pointer}")
        self.pos = pos


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[pos + skip]!r}", text, pos + skip)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("id", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Poly:
    """Sparse multivariate polynomial used only during parsing."""

    def __init__(self, nvars, terms=None):
        self.n = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c})

    def constant(self):
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {(0,) * self.n}:
            return None
        return self.terms[(0,) * self.n]

    def __add__(self, o):
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return _Poly(self.n, out)

    def __neg__(self):
        return _Poly(self.n, {k: -v for k, v in self.terms.items()})

    def __mul__(self, o):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return _Poly(self.n, out)

    def scale(self, c):
        return _Poly(self.n, {k: v * c for k, v in self.terms.items()})


class _Parser:
    def __init__(self, text, variables, allow_sqrt):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = list(variables)
        self.allow_sqrt = allow_sqrt
        self.radicand = None
        self.n = len(self.vars)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, self.text, tok[2])

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self):
        out = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return out

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + (rhs if op == "+" else -rhs)
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                acc = acc * rhs
            else:
                c = rhs.constant()
                if c is None:
                    self.error("division by a non-constant expression", op)
                if not c:
                    self.error("division by zero", op)
                acc = acc.scale(1 / c)
        return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer literal", tok)
            out = _Poly.const(self.n, Fraction(1))
            for _ in range(tok[1]):
                out = out * base
            return out
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return _Poly.const(self.n, Fraction(val))
        if kind == "id":
            if val == "sqrt" and self.peek()[1] == "(":
                return self.sqrt(tok)
            if val not in self.vars:
                self.error(f"unknown identifier {val!r} (expected one of {', '.join(self.vars)})", tok)
            exps = [0] * self.n
            exps[self.vars.index(val)] = 1
            return _Poly(self.n, {tuple(exps): Fraction(1)})
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        self.error("expected a number, variable or '('", tok)

    def sqrt(self, tok):
        if not self.allow_sqrt:
            self.error("sqrt is only allowed in scalar values", tok)
        self.expect("(")
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        num = self.take()
        if num[0] != "num":
            self.error("sqrt takes an integer literal", num)
        self.expect(")")
        d = -num[1] if neg else num[1]
        r = _isqrt_exact(abs(d))
        if r is not None and d >= 0:
            return _Poly.const(self.n, Fraction(r))
        if self.radicand is not None and self.radicand != d:
            self.error("only one distinct square root per value is supported", tok)
        self.radicand = d
        root = FieldElt(Poly((-d, 0, 1)), Poly.x())
        return _Poly.const(self.n, root)


def _isqrt_exact(n):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def parse_polynomial(text: str, variables) -> dict:
    """Parse text into {exponent tuple: Fraction} over the given variables."""
    return _Parser(text, variables, allow_sqrt=False).parse().terms


def parse_scalar(text: str):
    """Parse a constant expression; may contain one sqrt(n)."""
    p = _Parser(text, [], allow_sqrt=True)
    val = p.parse().constant()
    if val is None:
        p.error("expected a constant")
    r = as_rational(val)
    return r if r is not None else val
