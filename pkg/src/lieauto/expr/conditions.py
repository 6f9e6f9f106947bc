"""Side conditions: relations of the form ``expr REL 0``.

Conditions accumulate along solution branches and reduction chains.
Quotient expressions are polynomialized first (``num/den > 0`` becomes
``num*den > 0``; ``num/den != 0`` becomes ``num*den != 0``) so every
stored condition compares a polynomial-form expression against zero.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .calculus import eval_float, eval_rational
from .core import Expr, ONE, Term


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator, b.numerator),
                    math.lcm(a.denominator, b.denominator))

REL_EQ = "="
REL_NE = "!="
REL_GT = ">"
REL_LT = "<"
REL_GE = ">="
REL_LE = "<="

_FLIP = {REL_GT: REL_LT, REL_LT: REL_GT, REL_GE: REL_LE, REL_LE: REL_GE,
         REL_EQ: REL_EQ, REL_NE: REL_NE}


class Condition:
    """``expr REL 0`` with expr in polynomial form and positive leading sign."""

    __slots__ = ("expr", "rel", "_str")

    def __init__(self, expr, rel):
        self.expr = expr
        self.rel = rel
        self._str = f"{expr} {rel} 0"

    def negated(self):
        neg = {REL_EQ: REL_NE, REL_NE: REL_EQ, REL_GT: REL_LE,
               REL_LE: REL_GT, REL_LT: REL_GE, REL_GE: REL_LT}
        return Condition(self.expr, neg[self.rel])

    def holds_at(self, bindings, tol=1e-9):
        """Evaluate at a numeric point; exact when rational, else float."""
        v = eval_rational(self.expr, bindings)
        if v is None:
            z = eval_float(self.expr, bindings)
            if abs(z.imag) > tol:
                return False
            x = z.real
            if self.rel == REL_EQ:
                return abs(x) <= tol
            if self.rel == REL_NE:
                return abs(x) > tol
            if self.rel == REL_GT:
                return x > tol
            if self.rel == REL_LT:
                return x < -tol
            if self.rel == REL_GE:
                return x >= -tol
            return x <= tol
        if self.rel == REL_EQ:
            return v == 0
        if self.rel == REL_NE:
            return v != 0
        if self.rel == REL_GT:
            return v > 0
        if self.rel == REL_LT:
            return v < 0
        if self.rel == REL_GE:
            return v >= 0
        return v <= 0

    def __eq__(self, other):
        return (isinstance(other, Condition)
                and other.rel == self.rel and other.expr == self.expr)

    def __hash__(self):
        return hash((self.rel, self.expr))

    def __str__(self):
        return self._str

    def __repr__(self):
        return f"Condition({self._str})"


def _static_truth(q: Fraction, rel: str) -> bool:
    if rel == REL_EQ:
        return q == 0
    if rel == REL_NE:
        return q != 0
    if rel == REL_GT:
        return q > 0
    if rel == REL_LT:
        return q < 0
    if rel == REL_GE:
        return q >= 0
    return q <= 0


def _clear_negative_powers(expr: Expr) -> Expr:
    """Multiply through by even powers to remove negative exponents.

    Even powers are positive wherever the expression is defined, so the
    sign and zero set (on the defined domain) are preserved.
    """
    mins = {}
    for t in expr.num:
        for base, e in t.bases:
            k = base.sort_key()
            if e < 0 and (k not in mins or e < mins[k][1]):
                mins[k] = (base, e)
    if not mins:
        return expr
    mult = ONE
    for base, e in mins.values():
        m = -e
        m += m % 2  # round up to an even power
        mult = mult * Expr((Term(Fraction(1), ((base, m),)),), ONE.den)
    cleared = expr * mult
    if not cleared.is_polynomial():
        return expr
    return cleared


def make_condition(expr: Expr, rel: str):
    """Normalize into a Condition, or a bool when decidable outright."""
    if rel not in _FLIP:
        raise ValueError(f"unknown relation {rel!r}")
    if not expr.is_polynomial():
        num = Expr(expr.num, ONE.den)
        den = Expr(expr.den, ONE.den)
        if rel == REL_EQ:
            expr = num
        else:
            expr = num * den
    if expr.is_polynomial():
        expr = _clear_negative_powers(expr)
    if expr.is_rational():
        return _static_truth(expr.as_fraction(), rel)
    content = None
    for t in expr.num:
        c = abs(t.coeff)
        content = c if content is None else _fraction_gcd(content, c)
    if content is not None and content not in (0, 1):
        expr = expr * Expr.from_fraction(1 / content)
    if expr.num and expr.num[0].coeff < 0:
        expr = -expr
        rel = _FLIP[rel]
    return Condition(expr, rel)


def add_condition(conditions: list, cond) -> bool:
    """Append a Condition or fold a bool; returns False on contradiction."""
    if cond is True:
        return True
    if cond is False:
        return False
    for c in conditions:
        if c.expr == cond.expr:
            if _contradicts(c.rel, cond.rel):
                return False
            if c.rel == cond.rel:
                return True
    conditions.append(cond)
    return True


_CONTRA = {
    (REL_EQ, REL_NE), (REL_EQ, REL_GT), (REL_EQ, REL_LT),
    (REL_GT, REL_LT), (REL_GT, REL_LE), (REL_LT, REL_GE),
}


def _contradicts(r1, r2):
    return (r1, r2) in _CONTRA or (r2, r1) in _CONTRA


def conditions_hold_at(conditions, bindings, tol=1e-9) -> bool:
    return all(c.holds_at(bindings, tol) for c in conditions)
