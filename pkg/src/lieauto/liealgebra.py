"""Lie algebra core: structure constants, adjoint matrices, vector-field
brackets, extraction of structure constants from a field basis, and
commutator tables.

Structure-constant input lists any subset of (i, j, k) entries with
1-based indices; unlisted entries default to zero.  Antisymmetry is
checked against that completion, so supplying c[2,3,1]=1 without
c[3,2,1]=-1 is flagged rather than silently completed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (LieAutoError, ParseError, RankError, SpanError,
                     ValidationError)
from .expr import (Expr, FIELD_VAR, PARAMETER, REAL, COMPLEX, SymbolTable,
                   ZERO, decide_nonzero, differentiate, parse_assumption,
                   parse_expr)
from .matrix import Matrix, mat_from_rows

_FIELDS = (REAL, COMPLEX)


@dataclass(frozen=True)
class ValidationIssue:
    kind: str          # "index" | "duplicate" | "antisymmetry" | "jacobi"
    indices: tuple
    detail: str

    def __str__(self):
        return f"{self.kind} violation at {self.indices}: {self.detail}"


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.issues

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(i) for i in self.issues)


class StructureConstants:
    """Antisymmetric tensor c_{ij}^k with exact expression entries."""

    def __init__(self, dim, field_name, entries, parameters=(), table=None,
                 raw=None):
        if field_name not in _FIELDS:
            raise ValueError(f"field must be one of {_FIELDS}")
        self.dim = dim
        self.field = field_name
        self.table = table if table is not None else SymbolTable()
        self.parameters = tuple(parameters)
        # canonical storage: i < j only, nonzero entries only
        self.entries = {}
        for (i, j, k), v in entries.items():
            if v.is_zero():
                continue
            if i < j:
                self.entries[(i, j, k)] = v
            elif i > j:
                self.entries[(j, i, k)] = -v
        self.raw = tuple(raw) if raw is not None else tuple(
            ((i, j, k), v) for (i, j, k), v in sorted(
                self.entries.items()) ) + tuple(
            ((j, i, k), -v) for (i, j, k), v in sorted(self.entries.items()))

    def get(self, i, j, k) -> Expr:
        if i == j:
            return ZERO
        if i < j:
            return self.entries.get((i, j, k), ZERO)
        v = self.entries.get((j, i, k))
        return -v if v is not None else ZERO

    def is_abelian(self) -> bool:
        return not self.entries

    def bracket_coeffs(self, i, j):
        """Coefficients of [e_i, e_j] in the basis."""
        return tuple(self.get(i, j, k) for k in range(1, self.dim + 1))

    def __repr__(self):
        return (f"StructureConstants(dim={self.dim}, field={self.field!r}, "
                f"{len(self.entries)} nonzero entries)")


def _check_raw(dim, raw):
    """Index/duplicate/antisymmetry checks on raw (i, j, k) -> Expr pairs."""
    issues = []
    seen = {}
    for (i, j, k), v in raw:
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            issues.append(ValidationIssue("index", (i, j, k),
                                          f"out of range for dim {dim}"))
            continue
        if (i, j, k) in seen and seen[(i, j, k)] != v:
            issues.append(ValidationIssue(
                "duplicate", (i, j, k),
                f"listed twice with values {seen[(i, j, k)]} and {v}"))
        seen[(i, j, k)] = v
    for (i, j, k), v in list(seen.items()):
        if i == j:
            if not v.is_zero():
                issues.append(ValidationIssue(
                    "antisymmetry", (i, j, k),
                    f"diagonal entry must vanish, got {v}"))
            continue
        mirror = seen.get((j, i, k), ZERO)
        if not (v + mirror).is_zero():
            lo = (i, j, k) if (i, j) < (j, i) else (j, i, k)
            issue = ValidationIssue(
                "antisymmetry", lo,
                f"c{[i, j, k]} = {v} but c{[j, i, k]} = {mirror}")
            if not any(x.kind == "antisymmetry" and x.indices == lo
                       for x in issues):
                issues.append(issue)
    return issues, seen


def _jacobi_issues(sc: StructureConstants):
    issues = []
    n = sc.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for ell in range(1, n + 1):
                    acc = ZERO
                    for m in range(1, n + 1):
                        acc = (acc
                               + sc.get(i, j, m) * sc.get(m, k, ell)
                               + sc.get(j, k, m) * sc.get(m, i, ell)
                               + sc.get(k, i, m) * sc.get(m, j, ell))
                    if not acc.is_zero():
                        issues.append(ValidationIssue(
                            "jacobi", (i, j, k, ell), f"residual {acc}"))
    return issues


def structure_constants_from_raw(dim, field_name, raw, parameters=(),
                                 table=None, check=True):
    """Build the tensor from raw entries, reporting validation issues."""
    issues, seen = _check_raw(dim, raw)
    entries = {}
    for (i, j, k), v in seen.items():
        if i < j and not v.is_zero():
            entries[(i, j, k)] = v
        elif i > j and (j, i, k) not in seen and not v.is_zero():
            entries[(j, i, k)] = -v
    sc = StructureConstants(dim, field_name, entries, parameters, table,
                            raw=raw)
    report = ValidationReport(list(issues))
    if check and report.ok:
        report.issues.extend(_jacobi_issues(sc))
    return sc, report


def validate_structure(sc: StructureConstants) -> ValidationReport:
    """Antisymmetry (against the raw input) and Jacobi residual report."""
    issues, _ = _check_raw(sc.dim, sc.raw)
    report = ValidationReport(list(issues))
    report.issues.extend(_jacobi_issues(sc))
    return report


def adjoint_matrix(sc: StructureConstants, j: int) -> Matrix:
    """Matrix of x -> [x, e_j]: entry (row i, column k) is c_{ij}^k."""
    if not 1 <= j <= sc.dim:
        raise IndexError(f"basis index {j} out of range 1..{sc.dim}")
    return mat_from_rows(
        [[sc.get(i, j, k) for k in range(1, sc.dim + 1)]
         for i in range(1, sc.dim + 1)])


# ---------------------------------------------------------------------------
# vector fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VectorField:
    """First-order operator sum(coeffs[i] * d/d vars[i])."""
    vars: tuple
    coeffs: tuple

    def __post_init__(self):
        if len(self.vars) != len(self.coeffs):
            raise ValueError("one coefficient per variable required")

    def apply(self, e: Expr) -> Expr:
        out = ZERO
        for v, c in zip(self.vars, self.coeffs):
            if c.is_zero():
                continue
            out = out + c * differentiate(e, v)
        return out

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)


def lie_bracket_fields(vars_, x1: VectorField, x2: VectorField) -> VectorField:
    """[X1, X2] componentwise: X1(X2_k) - X2(X1_k)."""
    if tuple(vars_) != tuple(x1.vars) or tuple(vars_) != tuple(x2.vars):
        raise LieAutoError("vector fields must share the variable list")
    coeffs = tuple(x1.apply(c2) - x2.apply(c1)
                   for c1, c2 in zip(x1.coeffs, x2.coeffs))
    return VectorField(tuple(vars_), coeffs)


def _field_blocks(e: Expr, var_set):
    """Decompose a polynomialized Expr into {field-part: parameter-part}."""
    from .expr.core import Term, ONE as _ONE

    blocks = {}
    for t in e.num:
        fbases = []
        pbases = []
        for base, k in t.bases:
            if _is_field_base(base, var_set):
                fbases.append((base, k))
            else:
                pbases.append((base, k))
        fkey = Expr((Term(Expr.from_fraction(1).as_fraction(),
                          tuple(fbases)),), _ONE.den)
        ppart = Expr((Term(t.coeff, tuple(pbases)),), _ONE.den)
        if fkey in blocks:
            blocks[fkey] = blocks[fkey] + ppart
        else:
            blocks[fkey] = ppart
    return blocks


def _is_field_base(base, var_set):
    from .expr import Symbol
    if isinstance(base, Symbol):
        return base in var_set
    return any(s in var_set for s in base.arg.free_symbols())


def _solve_linear_system(equations, unknowns, conditions=()):
    """Exact elimination for systems linear in ``unknowns``.

    Returns {unknown: Expr}; raises SpanError on inconsistency and
    RankError when a pivot cannot be decided or an unknown stays free.
    """
    eqs = [e for e in equations if not e.is_zero()]
    solution = {}
    remaining = list(unknowns)
    while True:
        eqs = [e if e.is_polynomial() else Expr(e.num, e.den[:1]) for e in eqs]
        eqs = [e for e in eqs if not e.is_zero()]
        if not eqs:
            break
        eqs.sort(key=lambda e: (e.term_count(), e.size(), str(e)))
        progress = False
        for idx, eq in enumerate(eqs):
            pick = None
            for u in remaining:
                coeff, rest, ok = _linear_coefficient(eq, u)
                if not ok or coeff.is_zero():
                    continue
                d = decide_nonzero(coeff, conditions)
                if d is True:
                    rank = 0 if coeff.is_rational() else 1
                    if pick is None or rank < pick[0]:
                        pick = (rank, u, coeff, rest)
                        if rank == 0:
                            break
            if pick is None:
                continue
            _, u, coeff, rest = pick
            value = (-rest) / coeff
            solution[u] = value
            remaining.remove(u)
            new_eqs = []
            for j, other in enumerate(eqs):
                if j == idx:
                    continue
                sub = _substitute_linear(other, u, value)
                if not sub.is_zero():
                    new_eqs.append(sub)
            eqs = new_eqs
            progress = True
            break
        if not progress:
            if any(any(e.contains_symbol(u) for u in remaining) for e in eqs):
                raise RankError(
                    "cannot decide a nonzero pivot for the linear system")
            for e in eqs:
                if not e.is_zero():
                    raise SpanError(f"inconsistent linear system: {e} != 0")
            break
    for u in remaining:
        raise RankError(f"underdetermined system: {u} is unconstrained")
    # back-substitute so values are mutually resolved
    resolved = {}
    for u in reversed(list(solution)):
        v = solution[u]
        from .expr import substitute as _subst
        resolved[u] = _subst(v, resolved)
    return {u: resolved[u] for u in solution}


def _linear_coefficient(eq, u):
    """(coeff, rest, linear?) of ``u`` in polynomial eq."""
    from .expr.core import Term, ONE as _ONE
    coeff_terms = []
    rest_terms = []
    for t in eq.num:
        e_u = 0
        others = []
        for base, k in t.bases:
            if base == u:
                e_u = k
            else:
                others.append((base, k))
        if e_u == 0:
            rest_terms.append(t)
        elif e_u == 1:
            coeff_terms.append(Term(t.coeff, tuple(others)))
        else:
            return ZERO, ZERO, False
    for t in coeff_terms + rest_terms:
        for base, _ in t.bases:
            if not isinstance(base, type(u)) and base.arg.contains_symbol(u):
                return ZERO, ZERO, False
    c = ZERO
    for t in coeff_terms:
        c = c + Expr((t,), _ONE.den)
    r = ZERO
    for t in rest_terms:
        r = r + Expr((t,), _ONE.den)
    return c, r, True


def _substitute_linear(eq, u, value):
    from .expr import substitute as _subst
    sub = _subst(eq, {u: value})
    if not sub.is_polynomial():
        sub = Expr(sub.num, sub.den[:0] + (sub.den[0],)) if False else \
            Expr(sub.num, sub.den)
        # clear the denominator: it is a power of a decided-nonzero pivot
        sub = Expr(sub.num, sub.den)
        from .expr.core import _ONE_TERMS
        sub = Expr(sub.num, _ONE_TERMS)
    return sub


def structure_constants_from_fields(vars_, basis, parameters=(),
                                    field_name=COMPLEX, table=None):
    """Compute c_{ij}^k from a vector-field basis by coefficient matching.

    The coefficients of every basis field and bracket are decomposed
    into monomial blocks over the field variables (parameters and
    rational factors stay on the coefficient side); matching blockwise
    yields a linear system for the constants of each bracket.
    """
    table = table if table is not None else SymbolTable()
    dim = len(basis)
    var_set = set(vars_)
    unknowns = [table.fresh(f"cc_{k}", PARAMETER) for k in range(1, dim + 1)]
    entries = {}
    raw = []
    for i in range(dim):
        for j in range(i + 1, dim):
            br = lie_bracket_fields(vars_, basis[i], basis[j])
            equations = []
            for slot in range(len(vars_)):
                eq = -br.coeffs[slot]
                for k in range(dim):
                    cu = Expr.from_symbol(unknowns[k])
                    eq = eq + cu * basis[k].coeffs[slot]
                if not eq.is_polynomial():
                    eq = Expr(eq.num, eq.den[:1]) if len(eq.den) == 1 else eq
                    from .expr.core import _ONE_TERMS
                    eq = Expr(eq.num, _ONE_TERMS)
                blocks = _field_blocks(eq, var_set)
                equations.extend(blocks.values())
            try:
                sol = _solve_linear_system(equations, unknowns)
            except SpanError as exc:
                raise SpanError(
                    f"bracket [X_{i+1}, X_{j+1}] is not in the span of the "
                    f"basis: {exc}") from exc
            except RankError as exc:
                raise RankError(
                    f"ambiguous structure constants for [X_{i+1}, X_{j+1}]: "
                    f"{exc}") from exc
            for k in range(dim):
                v = sol[unknowns[k]]
                if v.contains_symbol(unknowns[k]):
                    raise RankError(
                        f"unresolved constant for [X_{i+1}, X_{j+1}]")
                if not v.is_zero():
                    entries[(i + 1, j + 1, k + 1)] = v
                    raw.append(((i + 1, j + 1, k + 1), v))
                    raw.append(((j + 1, i + 1, k + 1), -v))
    return StructureConstants(dim, field_name, entries, parameters, table,
                              raw=raw)


# ---------------------------------------------------------------------------
# commutator table rendering
# ---------------------------------------------------------------------------

def _combo_str(coeffs, symbol_name):
    pieces = []
    for k, c in enumerate(coeffs, start=1):
        if c.is_zero():
            continue
        name = f"{symbol_name}_{k}"
        if c.is_one():
            body, neg = name, False
        elif c == Expr.from_fraction(-1):
            body, neg = name, True
        elif c.is_rational():
            q = c.as_fraction()
            body, neg = f"{abs(q)}*{name}", q < 0
        else:
            body, neg = f"({c})*{name}", False
        pieces.append((body, neg))
    if not pieces:
        return "0"
    out = []
    for idx, (body, neg) in enumerate(pieces):
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def commutator_table(sc: StructureConstants, symbol_name: str = "X") -> str:
    """(n+1) x (n+1) grid of [X_i, X_j] rendered from the tensor."""
    n = sc.dim
    header = ["[,]"] + [f"{symbol_name}_{j}" for j in range(1, n + 1)]
    rows = [header]
    for i in range(1, n + 1):
        row = [f"{symbol_name}_{i}"]
        for j in range(1, n + 1):
            if i == j:
                row.append("0")
            else:
                row.append(_combo_str(sc.bracket_coeffs(i, j), symbol_name))
        rows.append(row)
    widths = [max(len(rows[r][c]) for r in range(n + 1)) for c in range(n + 1)]
    lines = []
    for r, row in enumerate(rows):
        line = " | ".join(cell.ljust(w) for cell, w in zip(row, widths))
        lines.append(line.rstrip())
        if r == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# JSON input
# ---------------------------------------------------------------------------

def load_algebra(source) -> StructureConstants:
    """Load an algebra description from a path, file object, or dict.

    Schema: {"dim": n, "field": "real"|"complex",
             "parameters": [{"name": ..., "assume": ...}, ...],
             "structure_constants": [[i, j, k, "expr"], ...]}
    or, instead of structure_constants,
            {"vector_fields": {"vars": [...], "basis": [["expr", ...], ...]}}.
    Validation failures raise ValidationError carrying the report.
    """
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)

    field_name = doc.get("field", "complex")
    if field_name not in _FIELDS:
        raise ParseError(f"unknown field {field_name!r}")
    table = SymbolTable()
    parameters = []
    for p in doc.get("parameters", ()):
        assume = p.get("assume")
        assumption = parse_assumption(assume, p["name"]) if assume else None
        parameters.append(table.register(p["name"], PARAMETER,
                                         assumption=assumption))

    has_sc = "structure_constants" in doc
    has_vf = "vector_fields" in doc
    if has_sc == has_vf:
        raise ParseError(
            "exactly one of structure_constants / vector_fields is required")

    if has_sc:
        dim = doc.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise ParseError("dim must be a positive integer")
        raw = []
        for item in doc["structure_constants"]:
            if len(item) != 4:
                raise ParseError(f"bad structure constant entry {item!r}")
            i, j, k, text = item
            raw.append(((i, j, k), parse_expr(str(text), table)))
        sc, report = structure_constants_from_raw(
            dim, field_name, raw, parameters, table)
        if not report.ok:
            raise ValidationError(str(report), report)
        return sc

    vf = doc["vector_fields"]
    vars_ = tuple(table.register(name, FIELD_VAR) for name in vf["vars"])
    basis = []
    for row in vf["basis"]:
        coeffs = tuple(parse_expr(str(c), table) for c in row)
        if len(coeffs) != len(vars_):
            raise ParseError("vector field arity mismatch")
        basis.append(VectorField(vars_, coeffs))
    declared = doc.get("dim")
    if declared is not None and declared != len(basis):
        raise ParseError(f"dim {declared} does not match basis size "
                         f"{len(basis)}")
    sc = structure_constants_from_fields(vars_, basis, parameters,
                                         field_name, table)
    report = validate_structure(sc)
    if not report.ok:
        raise ValidationError(str(report), report)
    return sc
