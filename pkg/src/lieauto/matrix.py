"""Symbolic matrices as immutable tuples of expression rows."""

from __future__ import annotations

from .expr import Expr, ONE, ZERO, eval_float, substitute

Matrix = tuple


def mat_from_rows(rows) -> Matrix:
    return tuple(tuple(_as_expr(x) for x in row) for row in rows)


def _as_expr(x):
    if isinstance(x, Expr):
        return x
    return Expr.from_fraction(x)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n))
                 for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple((ZERO,) * n for _ in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    m = len(b[0])
    k = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for r in range(k):
                if a[i][r].is_zero() or b[r][j].is_zero():
                    continue
                acc = acc + a[i][r] * b[r][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_scale(a: Matrix, s) -> Matrix:
    s = _as_expr(s)
    return tuple(tuple(x * s for x in row) for row in a)


def mat_map(a: Matrix, fn) -> Matrix:
    return tuple(tuple(fn(x) for x in row) for row in a)


def mat_substitute(a: Matrix, sym_map, atom_map=None) -> Matrix:
    return tuple(tuple(substitute(x, sym_map, atom_map) for x in row)
                 for row in a)


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_is_diagonal(a: Matrix) -> bool:
    return all(a[i][j].is_zero()
               for i in range(len(a)) for j in range(len(a[i])) if i != j)


def mat_is_identity(a: Matrix) -> bool:
    return all((a[i][j].is_one() if i == j else a[i][j].is_zero())
               for i in range(len(a)) for j in range(len(a[i])))


def mat_det(a: Matrix) -> Expr:
    """Exact determinant by minor expansion with column-mask memoization."""
    n = len(a)
    memo = {}

    def minor(row, mask):
        if row == n:
            return ONE
        key = mask
        got = memo.get(key)
        if got is not None:
            return got
        acc = ZERO
        sign = 1
        for col in range(n):
            bit = 1 << col
            if mask & bit:
                continue
            entry = a[row][col]
            if not entry.is_zero():
                sub = minor(row + 1, mask | bit)
                piece = entry * sub
                acc = acc + (piece if sign > 0 else -piece)
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, 0)


def mat_free_symbols(a: Matrix):
    out = set()
    for row in a:
        for x in row:
            out |= x.free_symbols()
    return out


def mat_eval_float(a: Matrix, bindings):
    return [[eval_float(x, bindings) for x in row] for row in a]


def mat_str(a: Matrix, indent="") -> str:
    cells = [[str(x) for x in row] for row in a]
    widths = [max(len(cells[i][j]) for i in range(len(a)))
              for j in range(len(a[0]))]
    lines = []
    for row in cells:
        padded = [c.rjust(w) for c, w in zip(row, widths)]
        lines.append(indent + "[ " + "  ".join(padded) + " ]")
    return "\n".join(lines)


def mat_to_strings(a: Matrix):
    return [[str(x) for x in row] for row in a]
