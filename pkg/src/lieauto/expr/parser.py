"""Expression parser.

Grammar: integers, exact decimals, fractions ``a/b``; identifiers
``[A-Za-z][A-Za-z0-9_]*``; operators ``+ - * / ^`` with the usual
precedence (``^`` right-associative, binding tighter than unary minus);
parentheses; calls ``f(x)`` for f in {exp, log, sin, cos, sqrt}.
Mathematica-style ``Log[t]``/``Exp[u]``/``Sin[u]``/``Cos[u]``/``Sqrt[u]``
are accepted on input and never emitted.  Whitespace is insignificant.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError, UnknownSymbolError
from .core import Expr, cos_of, exp_of, log_of, pow_of, sin_of, sqrt_of
from .symbols import SymbolTable

_TOKEN_RE = re.compile(r"""
    (?P<number>\d+\.\d+|\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()\[\]])
  | (?P<ws>\s+)
""", re.VERBOSE)

_FUNCTIONS = {
    "exp": exp_of, "log": log_of, "sin": sin_of, "cos": cos_of,
    "sqrt": sqrt_of,
    "Exp": exp_of, "Log": log_of, "Sin": sin_of, "Cos": cos_of,
    "Sqrt": sqrt_of,
}


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, table):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.table = table

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.advance()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def parse(self):
        e = self.expression()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {text!r}", pos)
        return e

    def expression(self):
        e = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                e = e + rhs if text == "+" else e - rhs
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                rhs = self.factor()
                if text == "*":
                    e = e * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", pos)
                    e = e / rhs
            else:
                return e

    def factor(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return -self.factor()
        if kind == "op" and text == "+":
            self.advance()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            exponent = self.factor()  # right-assoc; allows -2 and (1/2)
            if not exponent.is_rational():
                raise ParseError("exponent must be a rational constant", pos)
            q = exponent.as_fraction()
            if q.denominator == 1:
                return base ** q.numerator
            return pow_of(base, q)
        return base

    def atom(self):
        kind, text, pos = self.advance()
        if kind == "number":
            return Expr.from_fraction(Fraction(text))
        if kind == "ident":
            nkind, ntext, _ = self.peek()
            if nkind == "op" and ntext in "([":
                fn = _FUNCTIONS.get(text)
                if fn is None:
                    raise UnknownSymbolError(f"unknown function {text!r}", pos)
                close = ")" if ntext == "(" else "]"
                self.advance()
                arg = self.expression()
                self.expect(close)
                return fn(arg)
            sym = self.table.lookup(text)
            if sym is None:
                raise UnknownSymbolError(f"unknown identifier {text!r}", pos)
            return Expr.from_symbol(sym)
        if kind == "op" and text == "(":
            e = self.expression()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse_expr(text: str, table: SymbolTable) -> Expr:
    """Parse ``text`` into a normalized expression over ``table``."""
    return _Parser(text, table).parse()
