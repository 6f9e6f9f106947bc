"""Conservative sign and non-vanishing decisions.

The decision procedure combines symbol assumptions, structural facts
(exp is positive; even powers are non-negative), and recorded branch
conditions.  It answers definitely or not at all; "don't know" is a
valid outcome that callers turn into case splits or recorded conditions.
"""

from __future__ import annotations

from .conditions import REL_EQ, REL_GE, REL_GT, REL_LE, REL_LT, REL_NE
from .core import Expr, HEAD_COS, HEAD_EXP, HEAD_LOG, HEAD_POW, HEAD_SIN
from .symbols import Symbol

POS = "+"
NEG = "-"
ZERO_SIGN = "0"
NONNEG = "+0"
NONPOS = "-0"


def _mul_sign(a, b):
    if a is None or b is None:
        return None
    if a == ZERO_SIGN or b == ZERO_SIGN:
        return ZERO_SIGN
    table = {POS: 1, NEG: -1, NONNEG: 2, NONPOS: -2}
    x, y = table[a], table[b]
    strict = abs(x) == 1 and abs(y) == 1
    positive = (x > 0) == (y > 0)
    if strict:
        return POS if positive else NEG
    return NONNEG if positive else NONPOS


def _pow_sign(s, k):
    if s is None:
        return NONNEG if k % 2 == 0 else None
    if s == ZERO_SIGN:
        return ZERO_SIGN
    if k % 2 == 0:
        return POS if s in (POS, NEG) else NONNEG
    return s


def _base_sign(base, conditions):
    if isinstance(base, Symbol):
        s = None
        if base.assumption is not None:
            s = base.assumption.sign()
            if s is None and base.assumption.excludes_zero():
                s = "nz"
        cond_s = _condition_sign_for(Expr.from_symbol(base), conditions)
        return cond_s if cond_s is not None else (None if s == "nz" else s)
    if base.head == HEAD_EXP:
        return POS
    if base.head == HEAD_POW:
        # even roots are defined only for positive arguments
        if base.power.denominator % 2 == 0:
            return POS
        return None
    if base.head in (HEAD_SIN, HEAD_COS, HEAD_LOG):
        return None
    return None


def _condition_sign_for(e, conditions):
    for c in conditions or ():
        if c.expr == e:
            return {REL_GT: POS, REL_LT: NEG, REL_GE: NONNEG,
                    REL_LE: NONPOS, REL_EQ: ZERO_SIGN}.get(c.rel)
        if c.expr == -e:
            return {REL_GT: NEG, REL_LT: POS, REL_GE: NONPOS,
                    REL_LE: NONNEG, REL_EQ: ZERO_SIGN}.get(c.rel)
    return None


def sign_of(e: Expr, conditions=()):
    """Return "+", "-", "0", "+0", "-0", or None when undecided."""
    if e.is_zero():
        return ZERO_SIGN
    if e.is_rational():
        return POS if e.as_fraction() > 0 else NEG
    direct = _condition_sign_for(e, conditions)
    if direct is not None:
        return direct
    if not e.is_polynomial():
        num = sign_of(_poly_expr(e.num), conditions)
        den = sign_of(_poly_expr(e.den), conditions)
        return _mul_sign(num, den)
    overall = None
    for t in e.num:
        s = POS if t.coeff > 0 else NEG
        for base, k in t.bases:
            s = _mul_sign(s, _pow_sign(_base_sign(base, conditions), k))
            if s is None:
                break
        if s is None:
            return None
        if overall is None:
            overall = s
        else:
            overall = _sum_sign(overall, s)
            if overall is None:
                return None
    return overall


def _poly_expr(terms):
    from .core import ONE
    return Expr(terms, ONE.den)


def _sum_sign(a, b):
    pos = {POS, NONNEG, ZERO_SIGN}
    neg = {NEG, NONPOS, ZERO_SIGN}
    if a in pos and b in pos:
        if POS in (a, b):
            return POS
        return ZERO_SIGN if a == b == ZERO_SIGN else NONNEG
    if a in neg and b in neg:
        if NEG in (a, b):
            return NEG
        return ZERO_SIGN if a == b == ZERO_SIGN else NONPOS
    return None


def decide_nonzero(e: Expr, conditions=()):
    """True / False / None (= cannot decide)."""
    if e.is_zero():
        return False
    if e.is_rational():
        return True
    for c in conditions or ():
        if c.expr == e or c.expr == -e:
            if c.rel in (REL_NE, REL_GT, REL_LT):
                return True
            if c.rel == REL_EQ:
                return False
    s = sign_of(e, conditions)
    if s in (POS, NEG):
        return True
    if s == ZERO_SIGN:
        return False
    # single term: nonzero iff every factor is nonzero
    if e.is_polynomial() and len(e.num) == 1:
        t = e.num[0]
        ok = True
        for base, _ in t.bases:
            if isinstance(base, Symbol):
                nz = (base.assumption is not None
                      and base.assumption.excludes_zero())
                if not nz:
                    bexpr = Expr.from_symbol(base)
                    for c in conditions or ():
                        if c.expr == bexpr and c.rel in (REL_NE, REL_GT, REL_LT):
                            nz = True
                            break
                if not nz:
                    ok = False
                    break
            elif base.head == HEAD_EXP:
                continue
            else:
                ok = False
                break
        if ok:
            return True
    return None


def provably_nonreal(e: Expr) -> bool:
    """True when some atom forces a non-real value (even root of a
    negative constant).  Conservative: unknown arguments pass."""
    for atom in e.atoms_iter():
        if atom.head == HEAD_POW and atom.power.denominator % 2 == 0:
            arg = atom.arg
            if arg.is_rational() and arg.as_fraction() < 0:
                return True
            if sign_of(arg) == NEG:
                return True
    return False
