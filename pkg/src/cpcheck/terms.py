"""Sorts, terms, exact rationals and the n-ary clause view.

Terms are immutable and hash-consed only in the weak sense that their hash is
cached on first use; structural equality is plain syntactic equality (no
alpha-renaming, no AC).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivisionByZero, SortError

__all__ = [
    "Sort", "BOOL", "INT", "REAL", "uninterpreted",
    "Term", "Var", "IntLit", "RatLit", "BoolLit", "App", "Forall", "ToReal",
    "FunSym", "TRUE", "FALSE",
    "well_sorted", "flatten_or", "rebuild_or", "flatten_and", "rebuild_and",
    "rat_arith", "const_value", "substitute", "free_vars",
    "mk_not", "mk_eq", "mk_le", "mk_lt", "mk_add", "mk_mul", "mk_sub",
    "quote_symbol", "term_to_str",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*\Z")


@dataclass(frozen=True)
class Sort:
    kind: str
    name: str | None = None

    def __post_init__(self):
        if self.kind == "Uninterpreted":
            if not self.name or not _IDENT.match(self.name):
                raise ValueError(f"bad sort name {self.name!r}")
        elif self.kind in ("Bool", "Int", "Real"):
            if self.name is not None:
                raise ValueError("built-in sorts carry no name")
        else:
            raise ValueError(f"unknown sort kind {self.kind!r}")

    @property
    def is_arith(self):
        return self.kind in ("Int", "Real")

    def __str__(self):
        return quote_symbol(self.name) if self.name else self.kind

    __repr__ = __str__


BOOL = Sort("Bool")
INT = Sort("Int")
REAL = Sort("Real")


def uninterpreted(name: str) -> Sort:
    return Sort("Uninterpreted", name)


@dataclass(frozen=True)
class FunSym:
    """An uninterpreted function symbol with its signature."""

    name: str
    arg_sorts: tuple
    result: Sort

    def __str__(self):
        return quote_symbol(self.name)


# -- terms --------------------------------------------------------------------

class Term:
    __slots__ = ("_hash",)

    def _key(self):
        raise NotImplementedError

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not type(self):
            return False
        if hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__, self._key()))
            object.__setattr__(self, "_hash", h)
            return h

    def __repr__(self):
        return term_to_str(self)


class Var(Term):
    """A named constant or a bound variable."""

    __slots__ = ("name", "sort")

    def __init__(self, name: str, sort: Sort):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "sort", sort)

    def _key(self):
        return (self.name, self.sort)

    def __eq__(self, other):
        # hot in clause scans; a field compare beats hashing both sides
        return self is other or (type(other) is Var and self.name == other.name
                                 and self.sort == other.sort)

    __hash__ = Term.__hash__


class IntLit(Term):
    __slots__ = ("value",)

    def __init__(self, value: int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"IntLit needs an int, got {value!r}")
        object.__setattr__(self, "value", value)

    def _key(self):
        return (self.value,)


class RatLit(Term):
    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", Fraction(value))

    def _key(self):
        return (self.value,)


class BoolLit(Term):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        object.__setattr__(self, "value", bool(value))

    def _key(self):
        return (self.value,)


class App(Term):
    """Application of a built-in operator (a string) or a FunSym."""

    __slots__ = ("op", "args")

    def __init__(self, op, args: Iterable[Term]):
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", tuple(args))

    def _key(self):
        return (self.op, self.args)


class Forall(Term):
    __slots__ = ("bound", "body")

    def __init__(self, bound: Iterable[tuple[str, Sort]], body: Term):
        bound = tuple((n, s) for n, s in bound)
        if not bound:
            raise ValueError("forall needs at least one bound variable")
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "body", body)

    def _key(self):
        return (self.bound, self.body)

    @property
    def bound_vars(self):
        return tuple(Var(n, s) for n, s in self.bound)


class ToReal(Term):
    __slots__ = ("arg",)

    def __init__(self, arg: Term):
        object.__setattr__(self, "arg", arg)

    def _key(self):
        return (self.arg,)


TRUE = BoolLit(True)
FALSE = BoolLit(False)

BOOL_OPS = {"not", "and", "or", "implies", "iff"}
REL_OPS = {"<", "<=", ">", ">="}
ARITH_OPS = {"+", "-", "*", "/", "neg"}
BUILTIN_OPS = BOOL_OPS | REL_OPS | ARITH_OPS | {"=", "distinct"}


# -- builders -----------------------------------------------------------------

def mk_not(t: Term) -> Term:
    return App("not", (t,))


def mk_eq(a: Term, b: Term) -> Term:
    return App("=", (a, b))


def mk_le(a: Term, b: Term) -> Term:
    return App("<=", (a, b))


def mk_lt(a: Term, b: Term) -> Term:
    return App("<", (a, b))


def mk_add(a: Term, b: Term) -> Term:
    return App("+", (a, b))


def mk_sub(a: Term, b: Term) -> Term:
    return App("-", (a, b))


def mk_mul(a: Term, b: Term) -> Term:
    return App("*", (a, b))


def _flatten_spine(t: Term, op: str, unit: Term) -> list:
    if t == unit:
        return []
    out = []
    while isinstance(t, App) and t.op == op and len(t.args) == 2:
        out.append(t.args[0])
        t = t.args[1]
    out.append(t)
    return out


def _rebuild_spine(lits: Sequence[Term], op: str, unit: Term) -> Term:
    if not lits:
        return unit
    acc = lits[-1]
    for lit in reversed(lits[:-1]):
        acc = App(op, (lit, acc))
    return acc


def flatten_or(t: Term) -> list:
    """Read ``t`` as a clause along the right spine of binary ``or``.

    The whole-term literal ``false`` is the empty clause; a left-nested ``or``
    is a single literal.
    """
    return _flatten_spine(t, "or", FALSE)


def rebuild_or(lits: Sequence[Term]) -> Term:
    return _rebuild_spine(lits, "or", FALSE)


def flatten_and(t: Term) -> list:
    return _flatten_spine(t, "and", TRUE)


def rebuild_and(lits: Sequence[Term]) -> Term:
    return _rebuild_spine(lits, "and", TRUE)


# -- rationals ----------------------------------------------------------------

def rat_arith(a, b, op: str) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise DivisionByZero(f"{a} / 0")
        return a / b
    raise ValueError(f"unknown rational operator {op!r}")


def const_value(t: Term) -> Fraction | None:
    """Value of a variable-free arithmetic term, or None."""
    if isinstance(t, IntLit):
        return Fraction(t.value)
    if isinstance(t, RatLit):
        return t.value
    if isinstance(t, ToReal):
        return const_value(t.arg)
    if isinstance(t, App) and t.op in ARITH_OPS:
        vals = [const_value(a) for a in t.args]
        if any(v is None for v in vals):
            return None
        if t.op == "neg":
            return -vals[0]
        if t.op == "-" and len(vals) == 1:
            return -vals[0]
        acc = vals[0]
        for v in vals[1:]:
            if t.op == "/" and v == 0:
                return None
            acc = rat_arith(acc, v, t.op)
        return acc
    return None


# -- sorting ------------------------------------------------------------------

def _expect(t, want, got):
    if want != got:
        raise SortError(t, want, got)


def well_sorted(t: Term) -> Sort:
    """Return the sort of ``t`` or raise SortError."""
    if isinstance(t, Var):
        return t.sort
    if isinstance(t, IntLit):
        return INT
    if isinstance(t, RatLit):
        return REAL
    if isinstance(t, BoolLit):
        return BOOL
    if isinstance(t, ToReal):
        _expect(t, INT, well_sorted(t.arg))
        return REAL
    if isinstance(t, Forall):
        _expect(t, BOOL, well_sorted(t.body))
        return BOOL
    if not isinstance(t, App):
        raise SortError(t, "term", type(t).__name__)

    arg_sorts = [well_sorted(a) for a in t.args]
    op, n = t.op, len(t.args)
    if isinstance(op, FunSym):
        if n != len(op.arg_sorts):
            raise SortError(t, len(op.arg_sorts), n, "arity mismatch")
        for want, got in zip(op.arg_sorts, arg_sorts):
            _expect(t, want, got)
        return op.result
    if op not in BUILTIN_OPS:
        raise SortError(t, "known operator", op)

    def arity(lo, hi=None):
        if n < lo or (hi is not None and n > hi):
            want = lo if hi == lo else f"{lo}..{hi if hi is not None else ''}"
            raise SortError(t, want, n, "arity mismatch")

    if op == "not":
        arity(1, 1)
        _expect(t, BOOL, arg_sorts[0])
        return BOOL
    if op in ("and", "or", "implies", "iff"):
        arity(2, 2)
        for s in arg_sorts:
            _expect(t, BOOL, s)
        return BOOL
    if op in ("=", "distinct"):
        arity(2, 2 if op == "=" else None)
        for s in arg_sorts[1:]:
            _expect(t, arg_sorts[0], s)
        return BOOL

    first = arg_sorts[0] if arg_sorts else None
    if first is None or not first.is_arith:
        raise SortError(t, "Int or Real", first)
    for s in arg_sorts[1:]:
        _expect(t, first, s)
    if op in REL_OPS:
        arity(2, 2)
        return BOOL
    if op == "neg":
        arity(1, 1)
        return first
    if op == "-":
        arity(1)
        return first
    if op in ("+", "*"):
        arity(2)
        return first
    # division: Real only, by a nonzero constant
    arity(2, 2)
    _expect(t, REAL, first)
    d = const_value(t.args[1])
    if d is None or d == 0:
        raise SortError(t, "nonzero constant divisor", t.args[1])
    return REAL


# -- substitution -------------------------------------------------------------

def free_vars(t: Term) -> set:
    """All Var nodes of ``t`` not captured by an enclosing forall."""
    out: set = set()
    stack = [(t, frozenset())]
    while stack:
        u, bound = stack.pop()
        if isinstance(u, Var):
            if (u.name, u.sort) not in bound:
                out.add(u)
        elif isinstance(u, App):
            stack.extend((a, bound) for a in u.args)
        elif isinstance(u, ToReal):
            stack.append((u.arg, bound))
        elif isinstance(u, Forall):
            stack.append((u.body, bound | set(u.bound)))
    return out


class CaptureError(ValueError):
    pass


def substitute(t: Term, mapping: dict) -> Term:
    """Replace free Var occurrences. Refuses substitutions that would capture."""
    if not mapping:
        return t
    if isinstance(t, Var):
        return mapping.get(t, t)
    if isinstance(t, App):
        args = tuple(substitute(a, mapping) for a in t.args)
        return t if args == t.args else App(t.op, args)
    if isinstance(t, ToReal):
        return ToReal(substitute(t.arg, mapping))
    if isinstance(t, Forall):
        bound = set(t.bound)
        inner = {v: r for v, r in mapping.items() if (v.name, v.sort) not in bound}
        for r in inner.values():
            if any((v.name, v.sort) in bound for v in free_vars(r)):
                raise CaptureError(f"substituting {r!r} under binder would capture")
        return Forall(t.bound, substitute(t.body, inner))
    return t


# -- printing -----------------------------------------------------------------

_SIMPLE_SYMBOL = re.compile(r"[A-Za-z~!@$%^&*_+=<>.?/\-][A-Za-z0-9~!@$%^&*_+=<>.?/\-]*\Z")
RESERVED = {
    "!", "_", "as", "exists", "forall", "let", "match", "par", "true", "false",
    "BINARY", "DECIMAL", "HEXADECIMAL", "NUMERAL", "STRING",
}
_OP_TEXT = {"implies": "=>", "neg": "-"}


def quote_symbol(name: str) -> str:
    if _SIMPLE_SYMBOL.match(name) and name not in RESERVED:
        return name
    return f"|{name}|"


def _num_text(v: Fraction, real: bool) -> str:
    mag = abs(v)
    if mag.denominator == 1:
        body = f"{mag.numerator}.0" if real else str(mag.numerator)
    else:
        body = f"(/ {mag.numerator} {mag.denominator})"
    return f"(- {body})" if v < 0 else body


def term_to_str(t: Term, free_as=frozenset()) -> str:
    """SMT-LIB text of ``t``; variables in ``free_as`` print as ``(as NAME SORT)``."""
    parts: list = []
    _emit(t, parts, free_as)
    return "".join(parts)


def _emit(t: Term, out: list, free_as=frozenset()) -> None:
    if isinstance(t, Var):
        if t in free_as:
            out.append(f"(as {quote_symbol(t.name)} {t.sort})")
        else:
            out.append(quote_symbol(t.name))
    elif isinstance(t, BoolLit):
        out.append("true" if t.value else "false")
    elif isinstance(t, IntLit):
        out.append(_num_text(Fraction(t.value), real=False))
    elif isinstance(t, RatLit):
        out.append(_num_text(t.value, real=True))
    elif isinstance(t, ToReal):
        out.append("(to_real ")
        _emit(t.arg, out, free_as)
        out.append(")")
    elif isinstance(t, Forall):
        binds = " ".join(f"({quote_symbol(n)} {s})" for n, s in t.bound)
        out.append(f"(forall ({binds}) ")
        if free_as:
            free_as = frozenset(v for v in free_as if v.name not in {n for n, _ in t.bound})
        _emit(t.body, out, free_as)
        out.append(")")
    elif isinstance(t, App):
        op = t.op
        out.append("(" + (str(op) if isinstance(op, FunSym) else _OP_TEXT.get(op, op)))
        for a in t.args:
            out.append(" ")
            _emit(a, out, free_as)
        out.append(")")
    else:
        out.append(f"<{type(t).__name__}>")
