"""Exact symbolic expressions: Laurent polynomials over Q in symbols and
opaque transcendental atoms, with an optional polynomial denominator.

Canonical form
--------------
An expression is ``num / den`` where both parts are sums of terms
``coeff * prod(base ** exponent)`` with rational coefficients, integer
exponents, and bases that are either symbols or atoms
(exp/log/sin/cos and rational powers).  Invariants:

* no zero coefficients; terms sorted by a fixed graded-lexicographic
  order (symbols graded first, then atom parts);
* exp atoms merge multiplicatively (``exp(u)*exp(v) == exp(u+v)``,
  ``exp(u)**k == exp(k*u)``) and rational-coefficient ``log`` terms are
  pulled out of exp arguments (``exp(2*log(u)) == u**2``);
* sin/cos of sums and of integer multiples expand through the addition
  formulas, so equal trigonometric polynomials are structurally equal;
* ``exp(0)=1``, ``sin(0)=0``, ``cos(0)=1``, ``log(1)=0`` never appear;
* the denominator is 1 whenever possible (single-term denominators fold
  into negative exponents, exact multivariate division is attempted);
  otherwise it is monic, shares no monomial factor with the numerator,
  and quotient form carries only non-negative exponents.

Structural equality therefore coincides with mathematical equality on
the polynomial-with-atoms fragment; general quotients are compared
conservatively.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from ..errors import UndefinedValueError
from .symbols import Symbol

_ZERO_F = Fraction(0)
_ONE_F = Fraction(1)

HEAD_EXP = "exp"
HEAD_LOG = "log"
HEAD_SIN = "sin"
HEAD_COS = "cos"
HEAD_POW = "pow"


class Atom:
    """Opaque transcendental building block with a normalized argument."""

    __slots__ = ("head", "arg", "power", "_key", "_hash")

    def __init__(self, head, arg, power=None):
        self.head = head
        self.arg = arg
        self.power = power
        p = power if power is not None else _ONE_F
        self._key = (1, head, p.numerator, p.denominator, arg.sort_key())
        self._hash = hash(self._key)

    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Atom) and other._key == self._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Atom({self.head}, {self.arg!r}, {self.power})"


class Term:
    """coeff * prod(base ** exponent); bases sorted, exponents nonzero ints."""

    __slots__ = ("coeff", "bases", "_mkey")

    def __init__(self, coeff, bases):
        self.coeff = coeff
        self.bases = bases
        deg = 0
        syms = []
        atoms = []
        for base, e in bases:
            if isinstance(base, Symbol):
                deg += e
                syms.append((base.sort_key(), e))
            else:
                atoms.append((base.sort_key(), e))
        self._mkey = (deg, tuple(syms), tuple(atoms))

    def monomial_key(self):
        return self._mkey

    def full_key(self):
        return (self._mkey, (self.coeff.numerator, self.coeff.denominator))

    def is_constant(self):
        return not self.bases


def _sparse_cmp(a, b):
    """Lexicographic compare of sparse exponent vectors (missing = 0).

    Earlier base keys take precedence; a larger exponent there means a
    larger monomial.  This makes the order multiplication-compatible.
    """
    i = j = 0
    while i < len(a) and j < len(b):
        ka, ea = a[i]
        kb, eb = b[j]
        if ka == kb:
            if ea != eb:
                return 1 if ea > eb else -1
            i += 1
            j += 1
        elif ka < kb:
            return 1 if ea > 0 else -1
        else:
            return -1 if eb > 0 else 1
    if i < len(a):
        return 1 if a[i][1] > 0 else -1
    if j < len(b):
        return -1 if b[j][1] > 0 else 1
    return 0


def _mono_cmp(ka, kb):
    if ka[0] != kb[0]:
        return 1 if ka[0] > kb[0] else -1
    c = _sparse_cmp(ka[1], kb[1])
    if c:
        return c
    return _sparse_cmp(ka[2], kb[2])


def _term_cmp(t1, t2):
    return _mono_cmp(t1.monomial_key(), t2.monomial_key())


_TERM_SORT_KEY = functools.cmp_to_key(_term_cmp)


def _sorted_terms(terms):
    return tuple(sorted(terms, key=_TERM_SORT_KEY, reverse=True))


_ONE_TERM = Term(_ONE_F, ())
_ONE_TERMS = (_ONE_TERM,)


def _poly_key(terms):
    return tuple(t.full_key() for t in terms)


class Expr:
    """Immutable exact expression; see module docstring for the invariants."""

    __slots__ = ("num", "den", "_key", "_hash", "_str")

    def __init__(self, num, den):
        # Internal: callers must supply canonical term tuples.  Use the
        # arithmetic API or ``Expr.from_fraction`` to build expressions.
        self.num = num
        self.den = den
        self._key = (_poly_key(num), _poly_key(den))
        self._hash = hash(self._key)
        self._str = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_fraction(q):
        q = Fraction(q)
        if q == 0:
            return ZERO
        return Expr((Term(q, ()),), _ONE_TERMS)

    @staticmethod
    def from_symbol(sym):
        return Expr((Term(_ONE_F, ((sym, 1),)),), _ONE_TERMS)

    # -- basic predicates ---------------------------------------------
    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _ONE_TERMS and self.den == _ONE_TERMS

    def is_rational(self):
        return self.den == _ONE_TERMS and (
            not self.num or (len(self.num) == 1 and self.num[0].is_constant()))

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.num[0].coeff if self.num else _ZERO_F

    def is_polynomial(self):
        return self.den == _ONE_TERMS

    def sort_key(self):
        return self._key

    # -- containers ----------------------------------------------------
    def free_symbols(self):
        out = set()
        for terms in (self.num, self.den):
            for t in terms:
                for base, _ in t.bases:
                    if isinstance(base, Symbol):
                        out.add(base)
                    else:
                        out |= base.arg.free_symbols()
        return out

    def atoms_iter(self):
        for terms in (self.num, self.den):
            for t in terms:
                for base, _ in t.bases:
                    if isinstance(base, Atom):
                        yield base
                        yield from base.arg.atoms_iter()

    def contains_symbol(self, sym):
        return sym in self.free_symbols()

    def term_count(self):
        return len(self.num)

    def size(self):
        """Rough node count, used as a complexity measure for ordering."""
        n = 0
        for terms in (self.num, self.den):
            for t in terms:
                n += 1
                for base, _ in t.bases:
                    n += 1 if isinstance(base, Symbol) else 1 + base.arg.size()
        return n

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return _make(_poly_add(self.num, other.num), self.den)
        n1 = _poly_mul(self.num, other.den)
        n2 = _poly_mul(other.num, self.den)
        den = _poly_mul(self.den, other.den)
        if (isinstance(n1, Expr) or isinstance(n2, Expr)
                or isinstance(den, Expr)):
            n1 = n1 if isinstance(n1, Expr) else Expr(n1, _ONE_TERMS)
            n2 = n2 if isinstance(n2, Expr) else Expr(n2, _ONE_TERMS)
            dn = den if isinstance(den, Expr) else Expr(den, _ONE_TERMS)
            return (n1 + n2) / dn
        return _make(_poly_add(n1, n2), den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Expr(tuple(Term(-t.coeff, t.bases) for t in self.num), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        num = _poly_mul(self.num, other.num)
        den = _poly_mul(self.den, other.den)
        return _quot(num, den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise UndefinedValueError("division by zero expression")
        if self.is_zero():
            return ZERO
        num = _poly_mul(self.num, other.den)
        den = _poly_mul(self.den, other.num)
        return _quot(num, den)

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer power expected; use pow_of for rationals")
        if k == 0:
            return ONE
        if k < 0:
            return ONE / (self ** (-k))
        result = ONE
        base = self
        n = k
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expr.from_fraction(other)
        return isinstance(other, Expr) and other._key == self._key

    def __hash__(self):
        return self._hash

    # -- printing --------------------------------------------------------
    def __str__(self):
        if self._str is None:
            if self.den == _ONE_TERMS:
                self._str = _poly_str(self.num)
            else:
                self._str = f"({_poly_str(self.num)})/({_poly_str(self.den)})"
        return self._str

    def __repr__(self):
        return f"Expr({self})"


def _coerce(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Expr.from_fraction(x)
    return NotImplemented


ZERO = Expr((), _ONE_TERMS)
ONE = Expr(_ONE_TERMS, _ONE_TERMS)


def _quot(num, den):
    """Build num/den where each part is a term tuple or an Expr."""
    if isinstance(num, Expr) or isinstance(den, Expr):
        num = num if isinstance(num, Expr) else Expr(num, _ONE_TERMS)
        den = den if isinstance(den, Expr) else Expr(den, _ONE_TERMS)
        return num / den
    return _make(num, den)


# ---------------------------------------------------------------------------
# raw polynomial layer (term tuples; rewrite rules deferred)
# ---------------------------------------------------------------------------

def _poly_add(p1, p2):
    acc = {t.monomial_key(): (t.coeff, t.bases) for t in p1}
    for t in p2:
        k = t.monomial_key()
        if k in acc:
            c = acc[k][0] + t.coeff
            if c == 0:
                del acc[k]
            else:
                acc[k] = (c, acc[k][1])
        else:
            acc[k] = (t.coeff, t.bases)
    return _sorted_terms(Term(c, b) for c, b in acc.values())


def _merge_bases(b1, b2):
    merged = {}
    for base, e in b1:
        merged[base.sort_key()] = [base, e]
    for base, e in b2:
        k = base.sort_key()
        if k in merged:
            merged[k][1] += e
        else:
            merged[k] = [base, e]
    out = [(b, e) for b, e in (tuple(v) for v in merged.values()) if e != 0]
    out.sort(key=lambda be: be[0].sort_key())
    return tuple(out)


def _term_fixups_needed(bases):
    exp_count = 0
    pow_args = set()
    for base, e in bases:
        if isinstance(base, Atom):
            if base.head == HEAD_EXP:
                exp_count += 1
                if e != 1:
                    return True
            elif base.head == HEAD_POW:
                if e != 1:
                    return True
                k = base.arg.sort_key()
                if k in pow_args:
                    return True
                pow_args.add(k)
    return exp_count > 1


def _rebuild_term(coeff, bases):
    """Re-canonicalize a raw term by replaying the atom merge rules."""
    plain = []
    exp_arg = None
    pow_groups = {}
    for base, e in bases:
        if isinstance(base, Atom) and base.head == HEAD_EXP:
            contrib = base.arg * e
            exp_arg = contrib if exp_arg is None else exp_arg + contrib
        elif isinstance(base, Atom) and base.head == HEAD_POW:
            k = base.arg.sort_key()
            q = base.power * e
            if k in pow_groups:
                pow_groups[k] = (base.arg, pow_groups[k][1] + q)
            else:
                pow_groups[k] = (base.arg, q)
        else:
            plain.append((base, e))
    result = Expr((Term(coeff, tuple(plain)),), _ONE_TERMS)
    if exp_arg is not None and not exp_arg.is_zero():
        result = result * exp_of(exp_arg)
    for arg, q in pow_groups.values():
        if q != 0:
            result = result * pow_of(arg, q)
    return result


def _poly_mul(p1, p2):
    """Product of two term tuples: a term tuple, or an Expr when atom
    merge rules fire (e.g. exp*exp) and the result leaves raw-poly form."""
    simple = {}
    deferred = None
    for t1 in p1:
        for t2 in p2:
            coeff = t1.coeff * t2.coeff
            bases = _merge_bases(t1.bases, t2.bases)
            if _term_fixups_needed(bases):
                fixed = _rebuild_term(coeff, bases)
                deferred = fixed if deferred is None else deferred + fixed
                continue
            t = Term(coeff, bases)
            k = t.monomial_key()
            if k in simple:
                c = simple[k][0] + coeff
                if c == 0:
                    del simple[k]
                else:
                    simple[k] = (c, bases)
            else:
                simple[k] = (coeff, bases)
    terms = _sorted_terms(Term(c, b) for c, b in simple.values())
    if deferred is None:
        return terms
    total = Expr(terms, _ONE_TERMS) if terms else ZERO
    return total + deferred


# ---------------------------------------------------------------------------
# quotient normalization
# ---------------------------------------------------------------------------

def _scale_poly(terms, factor):
    if factor == 1:
        return terms
    return tuple(Term(t.coeff * factor, t.bases) for t in terms)


def _shift_poly(terms, shifts):
    """Divide every term by prod(base**shift); shifts: key -> (base, exp)."""
    out = []
    for t in terms:
        merged = {base.sort_key(): [base, e] for base, e in t.bases}
        for k, (base, e) in shifts.items():
            if k in merged:
                merged[k][1] -= e
            else:
                merged[k] = [base, -e]
        bases = [(v[0], v[1]) for v in merged.values() if v[1] != 0]
        bases.sort(key=lambda be: be[0].sort_key())
        out.append(Term(t.coeff, tuple(bases)))
    return _sorted_terms(out)


def _joint_monomial_content(polys):
    """Min exponent per base across all terms (missing counts as 0)."""
    mins = {}
    total = 0
    for terms in polys:
        for t in terms:
            total += 1
            for base, e in t.bases:
                k = base.sort_key()
                if k in mins:
                    rec = mins[k]
                    rec[1] = min(rec[1], e)
                    rec[2] += 1
                else:
                    mins[k] = [base, e, 1]
    out = {}
    for k, (base, m, cnt) in mins.items():
        if cnt < total:
            m = min(m, 0)
        if m != 0:
            out[k] = (base, m)
    return out


def _fold_single_term_den(num, den_term):
    inv_bases = tuple((b, -e) for b, e in den_term.bases)
    inv_coeff = 1 / den_term.coeff
    out = [Term(t.coeff * inv_coeff, _merge_bases(t.bases, inv_bases))
           for t in num]
    return _sorted_terms(out)


def _make(num, den):
    if not den:
        raise UndefinedValueError("zero denominator")
    if not num:
        return ZERO
    if den == _ONE_TERMS:
        return Expr(num, _ONE_TERMS)
    if len(den) == 1:
        return Expr(_fold_single_term_den(num, den[0]), _ONE_TERMS)
    shifts = _joint_monomial_content((num, den))
    if shifts:
        num = _shift_poly(num, shifts)
        den = _shift_poly(den, shifts)
        if len(den) == 1:
            return Expr(_fold_single_term_den(num, den[0]), _ONE_TERMS)
    lead = den[0].coeff
    if lead != 1:
        num = _scale_poly(num, 1 / lead)
        den = _scale_poly(den, 1 / lead)
    q = _poly_divide_exact(num, den)
    if q is not None:
        return Expr(q, _ONE_TERMS)
    return Expr(num, den)


def _mono_divide(t, d):
    """Divide term t by term d; None unless exponents stay non-negative."""
    db = {base.sort_key(): e for base, e in d.bases}
    out = []
    for base, e in t.bases:
        k = base.sort_key()
        if k in db:
            e2 = e - db.pop(k)
            if e2 < 0:
                return None
            if e2:
                out.append((base, e2))
        else:
            out.append((base, e))
    if db:
        return None
    return Term(t.coeff / d.coeff, tuple(out))


def _poly_divide_exact(num, den):
    """Exact multivariate division; requires non-negative exponents."""
    for terms in (num, den):
        for t in terms:
            for _, e in t.bases:
                if e < 0:
                    return None
    remainder = num
    quotient = []
    dlead = den[0]
    guard = 0
    while remainder:
        guard += 1
        if guard > 2000:
            return None
        q = _mono_divide(remainder[0], dlead)
        if q is None:
            return None
        quotient.append(q)
        remainder = _poly_add(remainder, tuple(
            Term(-q.coeff * t.coeff, _merge_bases(q.bases, t.bases))
            for t in den))
    return _sorted_terms(quotient)


# ---------------------------------------------------------------------------
# atom constructors (all rewrite rules live here)
# ---------------------------------------------------------------------------

def _atom_expr(atom):
    return Expr((Term(_ONE_F, ((atom, 1),)),), _ONE_TERMS)


def _single_term(e):
    if e.den == _ONE_TERMS and len(e.num) == 1:
        return e.num[0]
    return None


def exp_of(arg):
    """exp(arg); merges via exp(u)*exp(v)=exp(u+v), exp(k*log(u)) = u**k."""
    arg = _coerce(arg)
    if arg.is_zero():
        return ONE
    factors = []
    if arg.den == _ONE_TERMS:
        rest = []
        for t in arg.num:
            if (len(t.bases) == 1 and t.bases[0][1] == 1
                    and isinstance(t.bases[0][0], Atom)
                    and t.bases[0][0].head == HEAD_LOG):
                factors.append((t.bases[0][0].arg, t.coeff))
            else:
                rest.append(t)
        arg = Expr(tuple(rest), _ONE_TERMS) if rest else ZERO
    result = ONE
    for base_arg, q in factors:
        result = result * pow_of(base_arg, q)
    if not arg.is_zero():
        result = result * _atom_expr(Atom(HEAD_EXP, arg))
    return result


def log_of(arg):
    """Natural log atom; log(1)=0, log(exp(u))=u, log(1/u)=-log(u);
    log(0) is undefined."""
    arg = _coerce(arg)
    if arg.is_zero():
        raise UndefinedValueError("log of zero")
    if arg.is_one():
        return ZERO
    t = _single_term(arg)
    if (t is not None and t.coeff == 1 and len(t.bases) == 1
            and t.bases[0][1] == 1 and isinstance(t.bases[0][0], Atom)
            and t.bases[0][0].head == HEAD_EXP):
        return t.bases[0][0].arg
    if (t is not None and t.coeff.numerator == 1
            and all(e <= 0 for _, e in t.bases)
            and (t.coeff < 1 or any(e < 0 for _, e in t.bases))):
        inv = Term(Fraction(t.coeff.denominator),
                   tuple((b, -e) for b, e in t.bases))
        return -log_of(Expr((inv,), _ONE_TERMS))
    return _atom_expr(Atom(HEAD_LOG, arg))


def _leading_coeff(e):
    return e.num[0].coeff if e.num else _ZERO_F


def sin_of(arg):
    """Sine with canonical expansion of sums and integer multiples."""
    arg = _coerce(arg)
    if arg.is_zero():
        return ZERO
    if _leading_coeff(arg) < 0:
        return -sin_of(-arg)
    if arg.den == _ONE_TERMS and len(arg.num) > 1:
        head = Expr((arg.num[0],), _ONE_TERMS)
        tail = Expr(arg.num[1:], _ONE_TERMS)
        return sin_of(head) * cos_of(tail) + cos_of(head) * sin_of(tail)
    t = _single_term(arg)
    if t is not None:
        a = t.coeff.numerator
        if a > 1:
            unit = Expr((Term(t.coeff / a, t.bases),), _ONE_TERMS)
            rest = unit * (a - 1)
            return sin_of(rest) * cos_of(unit) + cos_of(rest) * sin_of(unit)
    return _atom_expr(Atom(HEAD_SIN, arg))


def cos_of(arg):
    """Cosine with canonical expansion of sums and integer multiples."""
    arg = _coerce(arg)
    if arg.is_zero():
        return ONE
    if _leading_coeff(arg) < 0:
        arg = -arg
    if arg.den == _ONE_TERMS and len(arg.num) > 1:
        head = Expr((arg.num[0],), _ONE_TERMS)
        tail = Expr(arg.num[1:], _ONE_TERMS)
        return cos_of(head) * cos_of(tail) - sin_of(head) * sin_of(tail)
    t = _single_term(arg)
    if t is not None:
        a = t.coeff.numerator
        if a > 1:
            unit = Expr((Term(t.coeff / a, t.bases),), _ONE_TERMS)
            rest = unit * (a - 1)
            return cos_of(rest) * cos_of(unit) - sin_of(rest) * sin_of(unit)
    return _atom_expr(Atom(HEAD_COS, arg))


def _fraction_root(q, n):
    """Exact n-th root of a positive Fraction, or None."""
    def iroot(v):
        if v == 0:
            return 0
        r = round(v ** (1.0 / n))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** n == v:
                return cand
        return None
    pn = iroot(q.numerator)
    pd = iroot(q.denominator)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)


def pow_of(base, q):
    """base ** q for rational q, collapsing nested powers and exp atoms."""
    base = _coerce(base)
    q = Fraction(q)
    if q.denominator == 1:
        return base ** q.numerator
    if base.is_zero():
        if q > 0:
            return ZERO
        raise UndefinedValueError("zero to a non-positive power")
    if base.is_rational():
        r = base.as_fraction()
        if r > 0:
            root = _fraction_root(r, q.denominator)
            if root is not None:
                return Expr.from_fraction(root ** q.numerator)
        elif r < 0 and q.denominator % 2 == 1:
            root = _fraction_root(-r, q.denominator)
            if root is not None:
                return Expr.from_fraction(-(root ** q.numerator))
    t = _single_term(base)
    if (t is not None and t.coeff == 1 and len(t.bases) == 1
            and t.bases[0][1] == 1 and isinstance(t.bases[0][0], Atom)):
        inner = t.bases[0][0]
        if inner.head == HEAD_POW:
            return pow_of(inner.arg, inner.power * q)
        if inner.head == HEAD_EXP:
            return exp_of(inner.arg * q)
    if t is not None:
        extracted = _extract_power_content(t, q)
        if extracted is not None:
            return extracted
    return _atom_expr(Atom(HEAD_POW, base, q))


def _largest_power_root(n, d):
    """Largest integer s with s**d dividing n (n > 0)."""
    if n == 1:
        return 1
    bound = int(round(n ** (1.0 / d))) + 1
    for s in range(min(bound, 100000), 1, -1):
        if n % (s ** d) == 0:
            return s
    return 1


def _extract_power_content(t, q):
    """Pull exact rational d-th-power content out of (coeff*mono)**q.

    Only the rational coefficient is taken apart (symbol or atom factors
    may be negative, so their even roots must stay inside the atom).
    Returns None when nothing can be extracted.
    """
    d = q.denominator
    c = t.coeff
    sign_out = ONE
    if c < 0:
        if d % 2 == 0:
            return None
        sign_out = Expr.from_fraction(Fraction(-1) ** q.numerator)
        c = -c
    sn = _largest_power_root(c.numerator, d)
    sd = _largest_power_root(c.denominator, d)
    if sn == 1 and sd == 1 and sign_out == ONE:
        return None
    root = Fraction(sn, sd)
    rest_coeff = c / root ** d
    outer = sign_out * Expr.from_fraction(root ** q.numerator)
    inner = Expr((Term(rest_coeff, t.bases),), _ONE_TERMS)
    if inner.is_one():
        return outer
    return outer * _atom_expr(Atom(HEAD_POW, inner, q))


def sqrt_of(base):
    return pow_of(base, Fraction(1, 2))


def numerator_of(e: Expr) -> Expr:
    return Expr(e.num, _ONE_TERMS)


def denominator_of(e: Expr) -> Expr:
    return Expr(e.den, _ONE_TERMS)


# ---------------------------------------------------------------------------
# polynomial square root (for quadratic discriminants)
# ---------------------------------------------------------------------------

def _fraction_sqrt(q):
    if q < 0:
        return None
    n = math.isqrt(q.numerator)
    d = math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def poly_sqrt(e):
    """Exact square root of a polynomial Expr, or None."""
    if not isinstance(e, Expr) or e.den != _ONE_TERMS:
        return None
    if e.is_zero():
        return ZERO
    terms = e.num
    shifts = _joint_monomial_content((terms,))
    neg = {k: (b, x) for k, (b, x) in shifts.items() if x < 0}
    if neg:
        for _, (_, x) in neg.items():
            if x % 2 != 0:
                return None
        terms = _shift_poly(terms, neg)
    lead = terms[0]
    c0 = _fraction_sqrt(lead.coeff)
    if c0 is None:
        return None
    half = []
    for base, x in lead.bases:
        if x % 2 != 0:
            return None
        half.append((base, x // 2))
    s_terms = (Term(c0, tuple(half)),)
    two_t0 = Term(2 * c0, tuple(half))
    target = Expr(terms, _ONE_TERMS)
    for _ in range(len(terms) * len(terms) + 4):
        s_expr = Expr(s_terms, _ONE_TERMS)
        r = target - s_expr * s_expr
        if r.is_zero():
            if neg:
                # undo the shift: sqrt(P) = sqrt(P_shifted) * base**(x/2)
                back = {k: (b, -(x // 2)) for k, (b, x) in neg.items()}
                result = _shift_poly(s_terms, back)
                return Expr(result, _ONE_TERMS)
            return Expr(s_terms, _ONE_TERMS)
        if not isinstance(r, Expr) or r.den != _ONE_TERMS:
            return None
        t = _mono_divide(r.num[0], two_t0)
        if t is None:
            return None
        if _mono_cmp(t.monomial_key(), s_terms[-1].monomial_key()) >= 0:
            return None
        s_terms = _poly_add(s_terms, (t,))
    return None


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _base_str(base):
    if isinstance(base, Symbol):
        return base.name
    if base.head == HEAD_POW:
        return f"({base.arg})^({base.power.numerator}/{base.power.denominator})"
    return f"{base.head}({base.arg})"


def _term_str(t):
    parts = []
    for base, e in t.bases:
        s = _base_str(base)
        if e != 1:
            s = f"{s}^({e})" if e < 0 else f"{s}^{e}"
        parts.append(s)
    c = t.coeff
    if not parts:
        return str(abs(c)), c < 0
    body = "*".join(parts)
    if abs(c) != 1:
        body = f"{abs(c)}*{body}"
    return body, c < 0


def _poly_str(terms):
    if not terms:
        return "0"
    chunks = []
    for i, t in enumerate(terms):
        body, negative = _term_str(t)
        if i == 0:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f" - {body}" if negative else f" + {body}")
    return "".join(chunks)
