"""Recursive-descent parser for polynomial expressions in ``x1..xN``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | VARIABLE | "(" expr ")"

Division is only allowed by a nonzero constant, so ``1/2`` and
``(x1^2 - 1)/2`` parse while ``1/x1`` does not.  There is no implicit
multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polynomial import Polynomial

__all__ = ["ParseError", "parse_poly"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[-+*/^()])|(?P<bad>\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group("bad") is not None:
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, num_vars: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.N = num_vars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r} (implicit multiplication is not allowed)", pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if q.degree() > 0:
                    raise ParseError("division by a non-constant expression", pos)
                c = q._terms.get((0,) * self.N, Fraction(0))
                if not c:
                    raise ParseError("division by zero", pos)
                p = p / c
        return p

    def unary(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        p = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            p = p ** int(val)
            if self.peek()[:2] == ("op", "^"):
                raise ParseError("chained exponents need parentheses", self.peek()[2])
        return p

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            return Polynomial.const(self.N, int(val))
        if kind == "var":
            i = int(val[1:])
            if not 1 <= i <= self.N:
                raise ParseError(f"unknown variable {val!r} (expected x1..x{self.N})", pos)
            return Polynomial.var(self.N, i - 1)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(text: str, num_vars: int | None = None) -> Polynomial:
    """Parse ``text`` into a :class:`Polynomial`.

    Without ``num_vars`` the variable count is the largest index used (at
    least 1).
    """
    if num_vars is None:
        idx = [int(m) for m in re.findall(r"x(\d+)", text)]
        num_vars = max(idx, default=1) or 1
    return _Parser(text, num_vars).parse()
