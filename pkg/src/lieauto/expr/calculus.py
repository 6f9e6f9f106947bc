"""Differentiation, substitution and evaluation of expressions."""

from __future__ import annotations

import cmath
from fractions import Fraction

from ..errors import AssumptionError, UndefinedValueError
from .core import (Atom, Expr, HEAD_COS, HEAD_EXP, HEAD_LOG, HEAD_POW,
                   HEAD_SIN, ONE, Term, ZERO, cos_of, exp_of, log_of, pow_of,
                   sin_of)
from .symbols import Symbol


def _base_expr(base, k=1):
    e = Expr((Term(Fraction(1), ((base, 1),)),), ONE.den)
    return e if k == 1 else e ** k


def differentiate(e: Expr, v: Symbol) -> Expr:
    """Exact partial derivative with respect to ``v``."""
    if not e.contains_symbol(v):
        return ZERO
    if not e.is_polynomial():
        num = Expr(e.num, ONE.den)
        den = Expr(e.den, ONE.den)
        dn = differentiate(num, v)
        dd = differentiate(den, v)
        return (dn * den - num * dd) / (den * den)
    total = ZERO
    for t in e.num:
        for i, (base, k) in enumerate(t.bases):
            dbase = _diff_base(base, v)
            if dbase.is_zero():
                continue
            part = Expr.from_fraction(t.coeff * k)
            for j, (b2, k2) in enumerate(t.bases):
                part = part * _base_expr(b2, k2 - 1 if j == i else k2)
            total = total + part * dbase
    return total


def _diff_base(base, v):
    if isinstance(base, Symbol):
        return ONE if base == v else ZERO
    du = differentiate(base.arg, v)
    if du.is_zero():
        return ZERO
    if base.head == HEAD_EXP:
        return exp_of(base.arg) * du
    if base.head == HEAD_LOG:
        return du / base.arg
    if base.head == HEAD_SIN:
        return cos_of(base.arg) * du
    if base.head == HEAD_COS:
        return -sin_of(base.arg) * du
    if base.head == HEAD_POW:
        return Expr.from_fraction(base.power) * pow_of(base.arg, base.power - 1) * du
    raise ValueError(f"unknown atom head {base.head!r}")


def substitute(e: Expr, sym_map, atom_map=None) -> Expr:
    """Simultaneous substitution followed by normalization.

    ``sym_map`` maps symbols to expressions (or Fractions/ints);
    ``atom_map`` optionally maps whole atoms (matched structurally after
    inner substitution) to expressions.  Raises AssumptionError when a
    rational binding violates the symbol's assumption and
    UndefinedValueError when the substitution divides by zero.
    """
    clean = {}
    for sym, val in sym_map.items():
        if not isinstance(val, Expr):
            val = Expr.from_fraction(val)
        if (sym.assumption is not None and val.is_rational()
                and not sym.assumption.allows(val.as_fraction())):
            raise AssumptionError(
                f"binding {sym.name} = {val} violates assumption "
                f"{sym.assumption}")
        clean[sym] = val
    return _sub_expr(e, clean, atom_map or {})


def _sub_expr(e, sym_map, atom_map):
    num = _sub_poly(e.num, sym_map, atom_map)
    if e.is_polynomial():
        return num
    den = _sub_poly(e.den, sym_map, atom_map)
    return num / den


def _sub_poly(terms, sym_map, atom_map):
    acc = ZERO
    for t in terms:
        val = Expr.from_fraction(t.coeff)
        for base, k in t.bases:
            bv = _sub_base(base, sym_map, atom_map)
            val = val * (bv ** k)
        acc = acc + val
    return acc


def _sub_base(base, sym_map, atom_map):
    if isinstance(base, Symbol):
        got = sym_map.get(base)
        return got if got is not None else Expr.from_symbol(base)
    arg = _sub_expr(base.arg, sym_map, atom_map)
    if atom_map:
        probe = Atom(base.head, arg, base.power)
        got = atom_map.get(probe)
        if got is not None:
            return got
    if base.head == HEAD_EXP:
        return exp_of(arg)
    if base.head == HEAD_LOG:
        return log_of(arg)
    if base.head == HEAD_SIN:
        return sin_of(arg)
    if base.head == HEAD_COS:
        return cos_of(arg)
    if base.head == HEAD_POW:
        return pow_of(arg, base.power)
    raise ValueError(f"unknown atom head {base.head!r}")


def eval_rational(e: Expr, bindings=None):
    """Exact rational value, or None when transcendental atoms remain."""
    r = substitute(e, bindings or {})
    if r.is_rational():
        return r.as_fraction()
    return None


def eval_float(e: Expr, bindings=None) -> complex:
    """64-bit numeric evaluation; transcendental atoms go through cmath."""
    bindings = bindings or {}
    return _ev_expr(e, bindings)


def _ev_expr(e, bindings):
    num = _ev_poly(e.num, bindings)
    if e.is_polynomial():
        return num
    den = _ev_poly(e.den, bindings)
    if den == 0:
        raise UndefinedValueError("denominator evaluated to zero")
    return num / den


def _ev_poly(terms, bindings):
    total = 0j
    for t in terms:
        val = complex(t.coeff)
        for base, k in t.bases:
            bv = _ev_base(base, bindings)
            if bv == 0 and k < 0:
                raise UndefinedValueError("zero raised to a negative power")
            val *= bv ** k
        total += val
    return total


def _ev_base(base, bindings):
    if isinstance(base, Symbol):
        if base not in bindings:
            raise UndefinedValueError(f"unbound symbol {base.name} in numeric eval")
        return complex(bindings[base])
    a = _ev_expr(base.arg, bindings)
    if base.head == HEAD_EXP:
        return cmath.exp(a)
    if base.head == HEAD_LOG:
        if a == 0:
            raise UndefinedValueError("log of zero in numeric eval")
        return cmath.log(a)
    if base.head == HEAD_SIN:
        return cmath.sin(a)
    if base.head == HEAD_COS:
        return cmath.cos(a)
    if base.head == HEAD_POW:
        if a == 0:
            if base.power > 0:
                return 0j
            raise UndefinedValueError("zero to a non-positive power")
        return cmath.exp(complex(base.power) * cmath.log(a))
    raise ValueError(f"unknown atom head {base.head!r}")
