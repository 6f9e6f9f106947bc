"""Exact symbolic expression engine.

Parsing, canonical normal forms, differentiation, substitution, exact
and floating evaluation, and restricted univariate solving with side
conditions.  All values are immutable and safe to share across threads;
symbol tables are append-only.
"""

from .calculus import differentiate, eval_float, eval_rational, substitute
from .conditions import (Condition, add_condition, conditions_hold_at,
                         make_condition)
from .core import (Atom, Expr, ONE, ZERO, cos_of, denominator_of, exp_of,
                   log_of, numerator_of, poly_sqrt, pow_of, sin_of, sqrt_of)
from .parser import parse_expr
from .signs import decide_nonzero, provably_nonreal, sign_of
from .solve import (COMPLEX, REAL, STATUS_ABSENT, STATUS_SOLVED,
                    STATUS_UNSUPPORTED, Solution, SolveResult, solve_for)
from .symbols import (Assumption, EPSILON, FIELD_VAR, MATRIX_ENTRY,
                      PARAMETER, RENAMED, Symbol, SymbolTable,
                      parse_assumption)

__all__ = [
    "Assumption", "Atom", "COMPLEX", "Condition", "EPSILON", "Expr",
    "FIELD_VAR", "MATRIX_ENTRY", "ONE", "PARAMETER", "REAL", "RENAMED",
    "STATUS_ABSENT", "STATUS_SOLVED", "STATUS_UNSUPPORTED", "Solution",
    "SolveResult", "Symbol", "SymbolTable", "ZERO", "add_condition",
    "conditions_hold_at", "cos_of", "decide_nonzero", "denominator_of",
    "differentiate", "eval_float", "eval_rational", "exp_of", "log_of",
    "make_condition", "numerator_of", "parse_assumption", "parse_expr",
    "poly_sqrt", "pow_of", "provably_nonreal", "sign_of", "sin_of",
    "solve_for", "sqrt_of", "substitute",
]
