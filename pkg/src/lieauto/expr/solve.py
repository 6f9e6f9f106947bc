"""Restricted univariate solving with explicit side conditions.

Supported fragment for ``solve_for(eq, v, field)`` (solving eq == 0):

* affine and quadratic polynomials in ``v``;
* affine in a single exponential atom whose argument is linear in ``v``
  (a common exponential factor across all terms is stripped first,
  since an exponential never vanishes);
* affine in a sin/cos pair sharing one argument (real field only); the
  two circle intersections come back as atom-level bindings.

Anything else yields an explicit "unsupported" result.  Every solution
carries the side conditions under which it is valid; degenerate branches
(vanishing leading coefficients) are reported as replacement equation
sets for the case-splitting driver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .conditions import Condition, make_condition
from .core import (Atom, Expr, HEAD_COS, HEAD_EXP, HEAD_LOG, HEAD_POW,
                   HEAD_SIN, ONE, Term, ZERO, exp_of, log_of, poly_sqrt,
                   pow_of)
from .signs import NEG, decide_nonzero, sign_of
from .symbols import Symbol

REAL = "real"
COMPLEX = "complex"

STATUS_SOLVED = "solved"
STATUS_ABSENT = "absent"
STATUS_UNSUPPORTED = "unsupported"


@dataclass
class Solution:
    """One solution branch: a value for the unknown or atom bindings."""
    value: Expr | None
    conditions: list
    atom_bindings: dict | None = None


@dataclass
class SolveResult:
    status: str
    solutions: list = field(default_factory=list)
    degenerations: list = field(default_factory=list)

    @property
    def solved(self):
        return self.status == STATUS_SOLVED


def _term_without(t, drop_key):
    bases = tuple((b, e) for b, e in t.bases if b.sort_key() != drop_key)
    return Term(t.coeff, bases)


def _expr_of_terms(terms):
    if not terms:
        return ZERO
    acc = ZERO
    for t in terms:
        acc = acc + Expr((t,), ONE.den)
    return acc


def _classify(eq, v):
    """Split terms by v-degree and catalog atoms whose argument uses v."""
    poly = {}
    atom_terms = []
    for t in eq.num:
        v_exp = 0
        v_atoms = []
        for base, e in t.bases:
            if isinstance(base, Symbol):
                if base == v:
                    v_exp = e
            elif base.arg.contains_symbol(v):
                v_atoms.append((base, e))
        if v_atoms:
            atom_terms.append((t, v_exp, v_atoms))
        else:
            poly.setdefault(v_exp, []).append(t)
    return poly, atom_terms


def _linear_arg(u, v):
    """Return (lam, mu) with u == lam*v + mu and lam, mu free of v, or None."""
    if not u.is_polynomial():
        return None
    lam_terms = []
    mu_terms = []
    for t in u.num:
        v_e = 0
        rest = []
        for base, e in t.bases:
            if isinstance(base, Symbol) and base == v:
                v_e = e
            else:
                if (isinstance(base, Atom) and base.arg.contains_symbol(v)) :
                    return None
                rest.append((base, e))
        if v_e == 0:
            mu_terms.append(t)
        elif v_e == 1:
            lam_terms.append(Term(t.coeff, tuple(rest)))
        else:
            return None
    return _expr_of_terms(lam_terms), _expr_of_terms(mu_terms)


def _nonzero_or_record(expr, field_name, conditions, known):
    """Decide nonvanishing; append a condition when undecided.

    Returns False when the expression is structurally/decidably zero.
    """
    d = decide_nonzero(expr, known)
    if d is False:
        return False
    if d is None:
        c = make_condition(expr, "!=")
        if c is False:
            return False
        if c is not True and c not in conditions:
            conditions.append(c)
    return True


def solve_for(eq: Expr, v: Symbol, field_name: str = COMPLEX,
              known_conditions=()) -> SolveResult:
    """Solve eq == 0 for ``v`` inside the supported fragment."""
    if eq.is_zero():
        return SolveResult(STATUS_ABSENT)
    if not eq.is_polynomial():
        num = Expr(eq.num, ONE.den)
        return solve_for(num, v, field_name, known_conditions)
    if not eq.contains_symbol(v):
        return SolveResult(STATUS_ABSENT)

    poly, atom_terms = _classify(eq, v)

    if not atom_terms:
        return _solve_polynomial(poly, v, field_name, known_conditions)

    heads = {a.head for _, _, v_atoms in atom_terms for a, _ in v_atoms}
    if heads <= {HEAD_EXP}:
        return _solve_exponential(eq, poly, atom_terms, v, field_name,
                                  known_conditions)
    if heads <= {HEAD_SIN, HEAD_COS} and not poly and field_name == REAL:
        return _solve_trig(eq, atom_terms, v, field_name, known_conditions)
    return SolveResult(STATUS_UNSUPPORTED)


def _solve_polynomial(poly, v, field_name, known):
    degree = max(poly)
    alpha = _expr_of_terms(poly.get(0, ()))
    if degree == 1:
        beta = _expr_of_terms(
            [_term_without(t, v.sort_key()) for t in poly[1]])
        conditions = []
        degenerations = []
        d = decide_nonzero(beta, known)
        if d is False:
            return SolveResult(STATUS_ABSENT)
        if d is None:
            c = make_condition(beta, "!=")
            if c is not True and c is not False:
                conditions.append(c)
            degenerations.append([beta, alpha])
        value = (-alpha) / beta
        return SolveResult(STATUS_SOLVED, [Solution(value, conditions)],
                           degenerations)
    if degree == 2:
        a2 = _expr_of_terms([_term_without(t, v.sort_key())
                             for t in poly[2]])
        b1 = _expr_of_terms([_term_without(t, v.sort_key())
                             for t in poly.get(1, ())])
        conditions = []
        degenerations = []
        d = decide_nonzero(a2, known)
        if d is False:
            return SolveResult(STATUS_ABSENT)
        if d is None:
            c = make_condition(a2, "!=")
            if c is not True and c is not False:
                conditions.append(c)
            # a2 == 0 turns the equation affine
            reduced = b1 * Expr.from_symbol(v) + alpha
            degenerations.append([a2, reduced])
        disc = b1 * b1 - Expr.from_fraction(4) * a2 * alpha
        root = poly_sqrt(disc)
        solutions = []
        if root is None:
            if field_name == REAL and sign_of(disc, known) == NEG:
                return SolveResult(STATUS_SOLVED, [], degenerations)
            extra = list(conditions)
            if field_name == REAL:
                c = make_condition(disc, ">=")
                if c is False:
                    return SolveResult(STATUS_SOLVED, [], degenerations)
                if c is not True:
                    extra.append(c)
            root = pow_of(disc, Fraction(1, 2))
            conditions = extra
        two_a = Expr.from_fraction(2) * a2
        for sgn in (1, -1):
            value = (-b1 + root * sgn) / two_a
            sol = Solution(value, list(conditions))
            if all(s.value != sol.value for s in solutions):
                solutions.append(sol)
        return SolveResult(STATUS_SOLVED, solutions, degenerations)
    return SolveResult(STATUS_UNSUPPORTED)


def _solve_exponential(eq, poly, atom_terms, v, field_name, known):
    # When every term carries an exponential in v, strip a common factor
    # (exponentials never vanish), then re-classify.
    if not poly:
        pivot = None
        for t, _, v_atoms in atom_terms:
            exps = [(a, e) for a, e in v_atoms if a.head == HEAD_EXP]
            if len(exps) != 1 or exps[0][1] != 1:
                return SolveResult(STATUS_UNSUPPORTED)
            if pivot is None:
                pivot = exps[0][0].arg
        stripped = eq * exp_of(-pivot)
        if stripped == eq:
            return SolveResult(STATUS_UNSUPPORTED)
        return solve_for(stripped, v, field_name, known)

    if set(poly) != {0}:
        return SolveResult(STATUS_UNSUPPORTED)
    # affine in a single exp atom: alpha + beta * exp(lam*v + mu) == 0
    target = None
    beta_terms = []
    for t, v_exp, v_atoms in atom_terms:
        if v_exp != 0 or len(v_atoms) != 1 or v_atoms[0][1] != 1:
            return SolveResult(STATUS_UNSUPPORTED)
        atom = v_atoms[0][0]
        if target is None:
            target = atom
        elif atom != target:
            return SolveResult(STATUS_UNSUPPORTED)
        beta_terms.append(_term_without(t, atom.sort_key()))
    lin = _linear_arg(target.arg, v)
    if lin is None:
        return SolveResult(STATUS_UNSUPPORTED)
    lam, mu = lin
    alpha = _expr_of_terms(poly.get(0, ()))
    beta = _expr_of_terms(beta_terms)

    conditions = []
    degenerations = []
    d = decide_nonzero(beta, known)
    if d is False:
        return SolveResult(STATUS_ABSENT)
    if d is None:
        c = make_condition(beta, "!=")
        if c is not True and c is not False:
            conditions.append(c)
        degenerations.append([beta, alpha])
    if not _nonzero_or_record(lam, field_name, conditions, known):
        return SolveResult(STATUS_UNSUPPORTED)

    q = (-alpha) / beta
    if q.is_zero():
        return SolveResult(STATUS_SOLVED, [], degenerations)
    if field_name == REAL:
        s = sign_of(q, known)
        if s in (NEG, "-0"):
            return SolveResult(STATUS_SOLVED, [], degenerations)
        c = make_condition(q, ">")
        if c is False:
            return SolveResult(STATUS_SOLVED, [], degenerations)
        if c is not True:
            conditions.append(c)
    else:
        c = make_condition(q, "!=")
        if c is not True and c is not False:
            conditions.append(c)
    value = (log_of(q) - mu) / lam
    return SolveResult(STATUS_SOLVED, [Solution(value, conditions)],
                       degenerations)


def _solve_trig(eq, atom_terms, v, field_name, known):
    # affine in (sin(u), cos(u)) with one shared argument u
    arg = None
    beta_terms = []
    gamma_terms = []
    const_terms = []
    for t in eq.num:
        v_atoms = [(b, e) for b, e in t.bases
                   if isinstance(b, Atom) and b.arg.contains_symbol(v)]
        if not v_atoms:
            const_terms.append(t)
            continue
        if len(v_atoms) != 1 or v_atoms[0][1] != 1:
            return SolveResult(STATUS_UNSUPPORTED)
        atom = v_atoms[0][0]
        if arg is None:
            arg = atom.arg
        elif atom.arg != arg:
            return SolveResult(STATUS_UNSUPPORTED)
        rest = _term_without(t, atom.sort_key())
        if rest.bases and any(
                isinstance(b, Symbol) and b == v for b, _ in rest.bases):
            return SolveResult(STATUS_UNSUPPORTED)
        if atom.head == HEAD_SIN:
            beta_terms.append(rest)
        else:
            gamma_terms.append(rest)
    alpha = _expr_of_terms(const_terms)
    if alpha.contains_symbol(v):
        return SolveResult(STATUS_UNSUPPORTED)
    beta = _expr_of_terms(beta_terms)
    gamma = _expr_of_terms(gamma_terms)

    dd = beta * beta + gamma * gamma
    conditions = []
    if not _nonzero_or_record(dd, field_name, conditions, known):
        return SolveResult(STATUS_SOLVED, [])
    disc = dd - alpha * alpha
    root = poly_sqrt(disc)
    if root is None:
        if sign_of(disc, known) == NEG:
            return SolveResult(STATUS_SOLVED, [])
        c = make_condition(disc, ">=")
        if c is False:
            return SolveResult(STATUS_SOLVED, [])
        if c is not True:
            conditions.append(c)
        root = pow_of(disc, Fraction(1, 2))

    sin_atom = Atom(HEAD_SIN, arg)
    cos_atom = Atom(HEAD_COS, arg)
    solutions = []
    for sgn in (1, -1):
        s_val = (-alpha * beta + gamma * root * sgn) / dd
        c_val = (-alpha * gamma - beta * root * sgn) / dd
        bindings = {sin_atom: s_val, cos_atom: c_val}
        if all(sol.atom_bindings != bindings for sol in solutions):
            solutions.append(Solution(None, list(conditions), bindings))
    return SolveResult(STATUS_SOLVED, solutions)
