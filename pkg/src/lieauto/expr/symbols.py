"""Symbols, assumptions and the per-session symbol table.

A symbol is an interned named scalar with a fixed kind (matrix entry,
scaling parameter, algebra parameter, renamed parameter, or field
variable) and an optional assumption restricting its real values to an
interval with excluded points, e.g. ``a > 0`` or ``-1 < a < 1 && a != 0``.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from typing import Optional

from ..errors import AssumptionError, ParseError

MATRIX_ENTRY = "matrix-entry"
EPSILON = "epsilon-parameter"
PARAMETER = "algebra-parameter"
RENAMED = "renamed-parameter"
FIELD_VAR = "field-variable"

_KINDS = (MATRIX_ENTRY, EPSILON, PARAMETER, RENAMED, FIELD_VAR)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Assumption:
    """Interval-with-exclusions predicate on the real values of a symbol."""

    __slots__ = ("lower", "lower_strict", "upper", "upper_strict", "excluded")

    def __init__(self, lower=None, lower_strict=True, upper=None,
                 upper_strict=True, excluded=()):
        self.lower = lower
        self.lower_strict = lower_strict
        self.upper = upper
        self.upper_strict = upper_strict
        self.excluded = frozenset(Fraction(x) for x in excluded)

    def allows(self, value: Fraction) -> bool:
        value = Fraction(value)
        if value in self.excluded:
            return False
        if self.lower is not None:
            if value < self.lower or (self.lower_strict and value == self.lower):
                return False
        if self.upper is not None:
            if value > self.upper or (self.upper_strict and value == self.upper):
                return False
        return True

    def is_satisfiable(self) -> bool:
        if self.lower is not None and self.upper is not None:
            if self.lower > self.upper:
                return False
            if self.lower == self.upper and (self.lower_strict or self.upper_strict):
                return False
        # The interval contains infinitely many rationals unless it is a
        # single point, so finitely many exclusions cannot empty it.
        if (self.lower is not None and self.upper is not None
                and self.lower == self.upper):
            return self.lower not in self.excluded
        return True

    def sign(self) -> Optional[str]:
        """Return "+", "-", or None when the sign is not forced."""
        if self.lower is not None and (self.lower > 0 or
                                       (self.lower == 0 and self.lower_strict)):
            return "+"
        if self.upper is not None and (self.upper < 0 or
                                       (self.upper == 0 and self.upper_strict)):
            return "-"
        return None

    def excludes_zero(self) -> bool:
        return Fraction(0) in self.excluded or self.sign() is not None

    def sample(self, rng, max_numer=6, max_denom=4) -> Fraction:
        """Draw an admissible rational, biased toward small fractions."""
        lo = self.lower if self.lower is not None else Fraction(-max_numer)
        hi = self.upper if self.upper is not None else Fraction(max_numer)
        for _ in range(400):
            den = rng.randint(1, max_denom)
            num = rng.randint(int(lo * den) - 1, int(hi * den) + 1)
            v = Fraction(num, den)
            if self.allows(v):
                return v
        raise AssumptionError(f"could not sample an admissible value in {self}")

    def __eq__(self, other):
        return (isinstance(other, Assumption)
                and (self.lower, self.lower_strict, self.upper,
                     self.upper_strict, self.excluded)
                == (other.lower, other.lower_strict, other.upper,
                    other.upper_strict, other.excluded))

    def __hash__(self):
        return hash((self.lower, self.lower_strict, self.upper,
                     self.upper_strict, self.excluded))

    def __repr__(self):
        return f"Assumption({self})"

    def __str__(self):
        parts = []
        if self.lower is not None and self.upper is not None:
            lrel = "<" if self.lower_strict else "<="
            urel = "<" if self.upper_strict else "<="
            parts.append(f"{self.lower} {lrel} x {urel} {self.upper}")
        elif self.lower is not None:
            parts.append(f"x {'>' if self.lower_strict else '>='} {self.lower}")
        elif self.upper is not None:
            parts.append(f"x {'<' if self.upper_strict else '<='} {self.upper}")
        for x in sorted(self.excluded):
            parts.append(f"x != {x}")
        return " && ".join(parts) if parts else "true"


_NUM_RE = r"[+-]?\d+(?:/\d+|\.\d+)?"
_CMP_RE = re.compile(
    rf"^(?:({_NUM_RE})\s*(<=|<)\s*)?([A-Za-z][A-Za-z0-9_]*)\s*(<=|<|>=|>|!=|=)\s*({_NUM_RE})$"
)


def _as_fraction(text: str) -> Fraction:
    return Fraction(text)


def parse_assumption(text: str, name: str) -> Assumption:
    """Parse predicates like "a>0", "-1<a<1 && a!=0" for symbol ``name``."""
    lower = upper = None
    lower_strict = upper_strict = True
    excluded = set()
    have_any = False
    for clause in text.split("&&"):
        clause = clause.strip()
        if not clause:
            continue
        m = _CMP_RE.match(clause)
        if not m or m.group(3) != name:
            raise ParseError(f"cannot parse assumption clause {clause!r} for {name!r}")
        have_any = True
        lo_txt, lo_rel, _, rel, rhs_txt = m.groups()
        rhs = _as_fraction(rhs_txt)
        if lo_txt is not None:
            lower = _as_fraction(lo_txt)
            lower_strict = lo_rel == "<"
        if rel in ("<", "<="):
            upper = rhs if upper is None else min(upper, rhs)
            upper_strict = rel == "<"
        elif rel in (">", ">="):
            lower = rhs if lower is None else max(lower, rhs)
            lower_strict = rel == ">"
        elif rel == "!=":
            excluded.add(rhs)
        elif rel == "=":
            lower = upper = rhs
            lower_strict = upper_strict = False
    if not have_any:
        raise ParseError(f"empty assumption for {name!r}")
    a = Assumption(lower, lower_strict, upper, upper_strict, excluded)
    if not a.is_satisfiable():
        raise AssumptionError(f"assumption {text!r} for {name!r} is unsatisfiable")
    return a


class Symbol:
    """Interned named scalar. Identity is the name; kind never changes."""

    __slots__ = ("name", "kind", "meta", "assumption", "_key")

    def __init__(self, name: str, kind: str, meta=(), assumption=None):
        if not _NAME_RE.match(name):
            raise ParseError(f"invalid symbol name {name!r}")
        if kind not in _KINDS:
            raise ValueError(f"unknown symbol kind {kind!r}")
        if assumption is not None and not assumption.is_satisfiable():
            raise AssumptionError(f"unsatisfiable assumption on {name!r}")
        self.name = name
        self.kind = kind
        self.meta = tuple(meta)
        self.assumption = assumption
        self._key = (0, name, 0, 1, ())

    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Symbol) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.kind!r})"

    def __str__(self):
        return self.name


class SymbolTable:
    """Append-only registry mapping names to symbols, safe for shared use."""

    def __init__(self):
        self._symbols: dict[str, Symbol] = {}
        self._lock = threading.Lock()

    def register(self, name: str, kind: str, meta=(), assumption=None) -> Symbol:
        with self._lock:
            existing = self._symbols.get(name)
            if existing is not None:
                if existing.kind != kind:
                    raise ParseError(
                        f"symbol {name!r} already registered with kind {existing.kind!r}")
                return existing
            sym = Symbol(name, kind, meta, assumption)
            self._symbols[name] = sym
            return sym

    def lookup(self, name: str) -> Optional[Symbol]:
        return self._symbols.get(name)

    def fresh(self, radical: str, kind: str, meta=(), assumption=None) -> Symbol:
        """Register ``radical``, or the first free ``radical_2``, ``radical_3``..."""
        with self._lock:
            name = radical
            i = 1
            while name in self._symbols:
                i += 1
                name = f"{radical}_{i}"
            sym = Symbol(name, kind, meta, assumption)
            self._symbols[name] = sym
            return sym

    def symbols(self):
        return list(self._symbols.values())

    def __contains__(self, name):
        return name in self._symbols
