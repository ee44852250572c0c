"""Polynomial normal forms over mixed Int/Real expressions.

Two arithmetic expressions are certified equal when their canonical
polynomials coincide. The canonical form is a tuple of monomials sorted
length-lexicographically by their variable lists, with merged like terms and
no zero coefficients, so equality of normal forms is tuple equality.

Int and Real variables share one index space: ``IntVar(i)`` is variable
``2*i`` and ``RealVar(i)`` is variable ``2*i + 1``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, MissingVariable, SortError, UnsupportedConstruct
from .terms import App, IntLit, RatLit, Term, ToReal, const_value, well_sorted

__all__ = [
    "Monomial", "Polynomial", "ZERO",
    "IntVar", "RealVar", "Const", "Add", "Sub", "Mul", "Neg", "DivConst", "Cast",
    "poly_add", "poly_mul", "poly_neg", "poly_scale", "to_poly", "denote",
    "expr_type", "certify_poly_eq", "PolyCert", "poly_to_expr",
    "ArithInterner", "term_to_arith",
]


@dataclass(frozen=True)
class Monomial:
    coeff: Fraction
    vars: tuple = ()

    def key(self):
        return (len(self.vars), self.vars)

    def __str__(self):
        c = self.coeff
        if not self.vars:
            return str(c)
        names = "*".join(f"x{v}" for v in self.vars)
        if c == 1:
            return names
        if c == -1:
            return "-" + names
        return f"{c}*{names}"


@dataclass(frozen=True)
class Polynomial:
    monos: tuple = ()

    @classmethod
    def from_terms(cls, pairs):
        """Canonicalise an iterable of (coeff, vars) pairs."""
        acc: dict = {}
        for c, vs in pairs:
            vs = tuple(vs)
            acc[vs] = acc.get(vs, 0) + Fraction(c)
        monos = [Monomial(c, vs) for vs, c in acc.items() if c != 0]
        monos.sort(key=Monomial.key)
        return cls(tuple(monos))

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls((Monomial(c, ()),)) if c else ZERO

    @classmethod
    def var(cls, index):
        return cls((Monomial(Fraction(1), (index,)),))

    def is_canonical(self):
        keys = [m.key() for m in self.monos]
        return (all(m.coeff != 0 for m in self.monos)
                and all(list(m.vars) == sorted(m.vars) for m in self.monos)
                and all(a < b for a, b in zip(keys, keys[1:])))

    def denote(self, ictx, rctx) -> Fraction:
        total = Fraction(0)
        for m in self.monos:
            v = m.coeff
            for i in m.vars:
                v *= _lookup(i, ictx, rctx)
            total += v
        return total

    def __bool__(self):
        return bool(self.monos)

    def __str__(self):
        if not self.monos:
            return "0"
        return " + ".join(str(m) for m in self.monos)


ZERO = Polynomial()


def _lookup(index, ictx, rctx):
    half, is_real = divmod(index, 2)
    ctx = rctx if is_real else ictx
    try:
        return Fraction(ctx[half])
    except (KeyError, IndexError):
        raise MissingVariable(index) from None


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial.from_terms(
        [(m.coeff, m.vars) for m in p.monos] + [(m.coeff, m.vars) for m in q.monos])


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial.from_terms(
        (a.coeff * b.coeff, tuple(heapq.merge(a.vars, b.vars)))
        for a in p.monos for b in q.monos)


def poly_scale(p: Polynomial, c) -> Polynomial:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return Polynomial(tuple(Monomial(m.coeff * c, m.vars) for m in p.monos))


def poly_neg(p: Polynomial) -> Polynomial:
    return poly_scale(p, -1)


# -- expressions --------------------------------------------------------------

class ArithExpr:
    __slots__ = ()


@dataclass(frozen=True)
class IntVar(ArithExpr):
    index: int


@dataclass(frozen=True)
class RealVar(ArithExpr):
    index: int


@dataclass(frozen=True)
class Const(ArithExpr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Add(ArithExpr):
    left: ArithExpr
    right: ArithExpr


@dataclass(frozen=True)
class Sub(ArithExpr):
    left: ArithExpr
    right: ArithExpr


@dataclass(frozen=True)
class Mul(ArithExpr):
    left: ArithExpr
    right: ArithExpr


@dataclass(frozen=True)
class Neg(ArithExpr):
    arg: ArithExpr


@dataclass(frozen=True)
class DivConst(ArithExpr):
    arg: ArithExpr
    divisor: Fraction

    def __post_init__(self):
        d = Fraction(self.divisor)
        if d == 0:
            raise DivisionByZero("DivConst by zero")
        object.__setattr__(self, "divisor", d)


@dataclass(frozen=True)
class Cast(ArithExpr):
    arg: ArithExpr


_BINARY = (Add, Sub, Mul)


def _unify(e, a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise SortError(e, a, b, "mixed Int/Real operands without a cast")


def expr_type(e: ArithExpr):
    """'int', 'real', or None for an integral constant usable at either type."""
    if isinstance(e, IntVar):
        return "int"
    if isinstance(e, RealVar):
        return "real"
    if isinstance(e, Const):
        return None if e.value.denominator == 1 else "real"
    if isinstance(e, _BINARY):
        return _unify(e, expr_type(e.left), expr_type(e.right))
    if isinstance(e, Neg):
        return expr_type(e.arg)
    if isinstance(e, DivConst):
        return _unify(e, expr_type(e.arg), "real")
    if isinstance(e, Cast):
        _unify(e, expr_type(e.arg), "int")
        return "real"
    raise SortError(e, "ArithExpr", type(e).__name__)


def to_poly(e: ArithExpr) -> Polynomial:
    if isinstance(e, IntVar):
        return Polynomial.var(2 * e.index)
    if isinstance(e, RealVar):
        return Polynomial.var(2 * e.index + 1)
    if isinstance(e, Const):
        return Polynomial.const(e.value)
    if isinstance(e, Add):
        return poly_add(to_poly(e.left), to_poly(e.right))
    if isinstance(e, Sub):
        return poly_add(to_poly(e.left), poly_neg(to_poly(e.right)))
    if isinstance(e, Mul):
        return poly_mul(to_poly(e.left), to_poly(e.right))
    if isinstance(e, Neg):
        return poly_neg(to_poly(e.arg))
    if isinstance(e, DivConst):
        return poly_scale(to_poly(e.arg), 1 / e.divisor)
    if isinstance(e, Cast):
        return to_poly(e.arg)
    raise TypeError(f"not an ArithExpr: {e!r}")


def denote(e: ArithExpr, ictx, rctx) -> Fraction:
    """Evaluate ``e`` exactly; Int variables read ``ictx``, Real ones ``rctx``."""
    if isinstance(e, IntVar):
        try:
            return Fraction(ictx[e.index])
        except (KeyError, IndexError):
            raise MissingVariable(2 * e.index) from None
    if isinstance(e, RealVar):
        try:
            return Fraction(rctx[e.index])
        except (KeyError, IndexError):
            raise MissingVariable(2 * e.index + 1) from None
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Add):
        return denote(e.left, ictx, rctx) + denote(e.right, ictx, rctx)
    if isinstance(e, Sub):
        return denote(e.left, ictx, rctx) - denote(e.right, ictx, rctx)
    if isinstance(e, Mul):
        return denote(e.left, ictx, rctx) * denote(e.right, ictx, rctx)
    if isinstance(e, Neg):
        return -denote(e.arg, ictx, rctx)
    if isinstance(e, DivConst):
        return denote(e.arg, ictx, rctx) / e.divisor
    if isinstance(e, Cast):
        return denote(e.arg, ictx, rctx)
    raise TypeError(f"not an ArithExpr: {e!r}")


@dataclass(frozen=True)
class PolyCert:
    equal: bool
    difference: Polynomial = ZERO


def certify_poly_eq(e1: ArithExpr, e2: ArithExpr) -> PolyCert:
    expr_type(e1)
    expr_type(e2)
    p1, p2 = to_poly(e1), to_poly(e2)
    if p1 == p2:
        return PolyCert(True)
    return PolyCert(False, poly_add(p1, poly_neg(p2)))


def poly_to_expr(p: Polynomial) -> ArithExpr:
    """Rebuild a Real-typed expression whose normal form is ``p``."""
    acc = None
    for m in p.monos:
        term: ArithExpr = Const(m.coeff)
        for v in m.vars:
            half, is_real = divmod(v, 2)
            term = Mul(term, RealVar(half) if is_real else Cast(IntVar(half)))
        acc = term if acc is None else Add(acc, term)
    return acc if acc is not None else Const(0)


# -- conversion from terms ----------------------------------------------------

class ArithInterner:
    """Assigns Int and Real atom indices to non-arithmetic leaves."""

    def __init__(self):
        self.ints: dict = {}
        self.reals: dict = {}

    def atom(self, t: Term, sort) -> ArithExpr:
        if sort.kind == "Int":
            return IntVar(self.ints.setdefault(t, len(self.ints)))
        if sort.kind == "Real":
            return RealVar(self.reals.setdefault(t, len(self.reals)))
        raise UnsupportedConstruct(f"{t!r} is not arithmetic")


def term_to_arith(t: Term, interner: ArithInterner) -> ArithExpr:
    if isinstance(t, IntLit):
        return Const(t.value)
    if isinstance(t, RatLit):
        return Const(t.value)
    if isinstance(t, ToReal):
        return Cast(term_to_arith(t.arg, interner))
    if isinstance(t, App) and isinstance(t.op, str):
        op, args = t.op, t.args
        if op in ("+", "*", "-") and len(args) >= 2:
            node = {"+": Add, "*": Mul, "-": Sub}[op]
            acc = term_to_arith(args[0], interner)
            for a in args[1:]:
                acc = node(acc, term_to_arith(a, interner))
            return acc
        if op in ("neg", "-") and len(args) == 1:
            return Neg(term_to_arith(args[0], interner))
        if op == "/" and len(args) == 2:
            d = const_value(args[1])
            if d is None or d == 0:
                raise UnsupportedConstruct(f"division by non-constant {args[1]!r}")
            return DivConst(term_to_arith(args[0], interner), d)
        raise UnsupportedConstruct(f"operator {op} in arithmetic position")
    # variables and uninterpreted applications become opaque atoms
    return interner.atom(t, well_sorted(t))
