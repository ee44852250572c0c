"""Per-rule decision procedures.

Every checker takes the premise conclusions, the step arguments and the
claimed conclusion, and returns None or raises a RuleError. Checkers are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    ArityMismatch, ConclusionMismatch, EmptyPremises, NormalFormMismatch,
    NotAnEquality, PivotNotFound, RuleError, UnknownRule,
)
from .poly import ArithInterner, certify_poly_eq, term_to_arith
from .terms import (
    BOOL, FALSE, INT, REAL, App, BoolLit, CaptureError, Forall, IntLit, RatLit,
    Sort, Term, ToReal, flatten_and, flatten_or, free_vars, mk_add, mk_eq,
    mk_le, mk_lt, mk_mul, mk_not, mk_sub, rebuild_or, substitute, term_to_str,
    well_sorted,
)

HOLE = "hole"


def _expect(claimed: Term, expected: Term) -> None:
    if claimed != expected:
        raise ConclusionMismatch(expected, claimed)


def _arity(rule, premises, args, n_premises=None, n_args=None):
    if n_premises is not None and len(premises) != n_premises:
        raise ArityMismatch(f"{rule} takes {n_premises} premise(s), got {len(premises)}")
    if n_args is not None and len(args) != n_args:
        raise ArityMismatch(f"{rule} takes {n_args} argument(s), got {len(args)}")


def _is_app(t, op, n=None):
    return isinstance(t, App) and t.op == op and (n is None or len(t.args) == n)


# -- resolution ---------------------------------------------------------------

def _find(clause, pivot, negated) -> int:
    # index of pivot (or of its negation) without building the negated term
    if not negated:
        try:
            return clause.index(pivot)
        except ValueError:
            return -1
    for k, lit in enumerate(clause):
        if type(lit) is App and lit.op == "not" and lit.args[0] == pivot:
            return k
    return -1


def resolve(c1: Sequence[Term], c2: Sequence[Term], pol: bool, pivot: Term) -> list:
    """Resolvent of two clauses on the first occurrences of the pivot."""
    i = _find(c1, pivot, not pol)
    if i < 0:
        raise PivotNotFound(1)
    j = _find(c2, pivot, pol)
    if j < 0:
        raise PivotNotFound(2)
    return [*c1[:i], *c1[i + 1:], *c2[:j], *c2[j + 1:]]


def check_resolution(c1: Sequence[Term], c2: Sequence[Term], pol: bool,
                     pivot: Term, claimed: Sequence[Term]) -> None:
    expected = resolve(c1, c2, pol, pivot)
    claimed = list(claimed)
    if claimed != expected:
        raise ConclusionMismatch(expected, claimed)


def _clause_for(premise: Term, lit: Term) -> list:
    lits = flatten_or(premise)
    # a premise that is itself the pivot literal counts as a unit clause
    if lit not in lits and premise == lit:
        return [premise]
    return lits


def _resolution(premises, args, claimed, deps):
    _arity("resolution", premises, args, 2, 2)
    pol, pivot = args
    if not isinstance(pol, BoolLit):
        raise RuleError(f"resolution polarity must be true or false, got {pol!r}")
    if well_sorted(pivot) != BOOL:
        raise RuleError("resolution pivot must be Boolean")
    pos, neg = (pivot, mk_not(pivot)) if pol.value else (mk_not(pivot), pivot)
    c1 = _clause_for(premises[0], pos)
    c2 = _clause_for(premises[1], neg)
    _expect(claimed, rebuild_or(resolve(c1, c2, pol.value, pivot)))


# -- arithmetic ---------------------------------------------------------------

_RELS = {"<": "lt", "<=": "le", "=": "eq"}


@dataclass(frozen=True)
class RelChain:
    rel: str
    lhs: Term
    rhs: Term
    carrier: Sort

    @classmethod
    def from_term(cls, t: Term) -> "RelChain":
        if not (isinstance(t, App) and t.op in _RELS and len(t.args) == 2):
            raise RuleError(f"expected an arithmetic relation, got {t!r}")
        carrier = well_sorted(t.args[0])
        if carrier not in (INT, REAL):
            raise RuleError(f"relation over non-arithmetic sort {carrier}")
        return cls(_RELS[t.op], t.args[0], t.args[1], carrier)


def sum_ub_conclusion(premises: Sequence[RelChain]) -> Term:
    if not premises:
        raise EmptyPremises("arith_sum_ub needs at least one premise")
    strict = any(p.rel == "lt" for p in premises)
    lift = any(p.carrier == REAL for p in premises)

    def side(t, carrier):
        return ToReal(t) if lift and carrier == INT else t

    lhs = side(premises[0].lhs, premises[0].carrier)
    rhs = side(premises[0].rhs, premises[0].carrier)
    for p in premises[1:]:
        lhs = mk_add(lhs, side(p.lhs, p.carrier))
        rhs = mk_add(rhs, side(p.rhs, p.carrier))
    return (mk_lt if strict else mk_le)(lhs, rhs)


def check_sum_ub(premises: Sequence[RelChain], claimed: Term) -> None:
    _expect(claimed, sum_ub_conclusion(premises))


def _sum_ub(premises, args, claimed, deps):
    _arity("arith_sum_ub", premises, args, n_args=0)
    check_sum_ub([RelChain.from_term(p) for p in premises], claimed)


def mult_tangent_conclusion(x: Term, y: Term, a, b, sigma: bool) -> Term:
    for t in (x, y):
        if well_sorted(t) != REAL:
            raise RuleError(f"arith_mult_tangent needs Real terms, got {t!r}")
    ca, cb = RatLit(a), RatLit(b)
    prod = mk_mul(x, y)
    tplane = mk_sub(mk_add(mk_mul(cb, x), mk_mul(ca, y)), mk_mul(ca, cb))
    if sigma:
        bound = mk_le(prod, tplane)
        cases = (App("and", (mk_le(x, ca), mk_le(cb, y))),
                 App("and", (mk_le(ca, x), mk_le(y, cb))))
    else:
        # x*y >= tplane, spelled with <= after normalisation
        bound = mk_le(tplane, prod)
        cases = (App("and", (mk_le(x, ca), mk_le(y, cb))),
                 App("and", (mk_le(ca, x), mk_le(cb, y))))
    return mk_eq(bound, App("or", cases))


def check_mult_tangent(x, y, a, b, sigma, claimed) -> None:
    expected = mult_tangent_conclusion(x, y, a, b, sigma)
    if ac_normalize(claimed) != ac_normalize(expected):
        raise ConclusionMismatch(expected, claimed)


def _rat_arg(t: Term) -> Fraction:
    if isinstance(t, IntLit):
        return Fraction(t.value)
    if isinstance(t, RatLit):
        return t.value
    raise RuleError(f"expected a rational constant, got {t!r}")


def _mult_tangent(premises, args, claimed, deps):
    _arity("arith_mult_tangent", premises, args, 0, 5)
    x, y, a, b, sigma = args
    if not isinstance(sigma, BoolLit):
        raise RuleError("arith_mult_tangent sigma must be true or false")
    check_mult_tangent(x, y, _rat_arg(a), _rat_arg(b), sigma.value, claimed)


def _equality_sides(claimed):
    if not _is_app(claimed, "=", 2):
        raise NotAnEquality(f"expected an equality, got {claimed!r}")
    return claimed.args


def check_poly_norm(claimed: Term) -> None:
    lhs, rhs = _equality_sides(claimed)
    if not well_sorted(lhs).is_arith:
        raise NotAnEquality("arith_poly_norm needs an arithmetic equality")
    interner = ArithInterner()
    cert = certify_poly_eq(term_to_arith(lhs, interner), term_to_arith(rhs, interner))
    if not cert.equal:
        raise NormalFormMismatch(cert.difference)


def _poly_norm(premises, args, claimed, deps):
    _arity("arith_poly_norm", premises, args, 0, 0)
    check_poly_norm(claimed)


def ac_normalize(t: Term) -> Term:
    """Flatten nested ``+``/``*`` chains and sort their operands."""
    if isinstance(t, App):
        args = [ac_normalize(a) for a in t.args]
        if t.op in ("+", "*"):
            flat = []
            for a in args:
                if isinstance(a, App) and a.op == t.op:
                    flat.extend(a.args)
                else:
                    flat.append(a)
            flat.sort(key=term_to_str)
            return App(t.op, flat)
        return App(t.op, args)
    if isinstance(t, ToReal):
        return ToReal(ac_normalize(t.arg))
    if isinstance(t, Forall):
        return Forall(t.bound, ac_normalize(t.body))
    return t


def check_ac_norm(claimed: Term) -> None:
    lhs, rhs = _equality_sides(claimed)
    nl, nr = ac_normalize(lhs), ac_normalize(rhs)
    if nl != nr:
        raise ConclusionMismatch(nl, nr)


def _ac_norm(premises, args, claimed, deps):
    _arity("ac_norm", premises, args, 0, 0)
    check_ac_norm(claimed)


# -- structural core ----------------------------------------------------------

def _assume_elim(premises, args, claimed, deps):
    _arity("assume_elim", premises, args, 1, 0)
    _expect(claimed, premises[0])


def _refl(premises, args, claimed, deps):
    _arity("refl", premises, args, 0, 1)
    _expect(claimed, mk_eq(args[0], args[0]))


def _symm(premises, args, claimed, deps):
    _arity("symm", premises, args, 1, 0)
    p = premises[0]
    if _is_app(p, "=", 2):
        _expect(claimed, mk_eq(p.args[1], p.args[0]))
    elif _is_app(p, "not", 1) and _is_app(p.args[0], "=", 2):
        a, b = p.args[0].args
        _expect(claimed, mk_not(mk_eq(b, a)))
    else:
        raise NotAnEquality(f"symm needs an (dis)equality, got {p!r}")


def _trans(premises, args, claimed, deps):
    _arity("trans", premises, args, n_args=0)
    if len(premises) < 2:
        raise ArityMismatch("trans needs at least two premises")
    for p in premises:
        if not _is_app(p, "=", 2):
            raise NotAnEquality(f"trans premise {p!r} is not an equality")
    for p, q in zip(premises, premises[1:]):
        if p.args[1] != q.args[0]:
            raise RuleError(f"trans chain broken between {p!r} and {q!r}")
    _expect(claimed, mk_eq(premises[0].args[0], premises[-1].args[1]))


def _cong(premises, args, claimed, deps):
    _arity("cong", premises, args, n_args=0)
    lhs, rhs = _equality_sides(claimed)
    for p in premises:
        if not _is_app(p, "=", 2):
            raise NotAnEquality(f"cong premise {p!r} is not an equality")
    if isinstance(lhs, Forall):
        if not isinstance(rhs, Forall) or lhs.bound != rhs.bound:
            raise ConclusionMismatch(mk_eq(lhs, lhs), claimed)
        _arity("cong", premises, args, 1)
        _expect(premises[0], mk_eq(lhs.body, rhs.body))
        bound = set(lhs.bound)
        for a in deps:
            if any((v.name, v.sort) in bound for v in free_vars(a)):
                raise RuleError(f"bound variable occurs free in open assumption {a!r}")
        return
    if isinstance(lhs, ToReal):
        _arity("cong", premises, args, 1)
        p = premises[0]
        _expect(claimed, mk_eq(ToReal(p.args[0]), ToReal(p.args[1])))
        return
    if not isinstance(lhs, App):
        raise RuleError(f"cong needs an application, got {lhs!r}")
    _arity("cong", premises, args, len(lhs.args))
    expected = mk_eq(App(lhs.op, [p.args[0] for p in premises]),
                     App(lhs.op, [p.args[1] for p in premises]))
    _expect(claimed, expected)


def _eq_resolve(premises, args, claimed, deps):
    _arity("eq_resolve", premises, args, 2, 0)
    phi, eq = premises
    if not _is_app(eq, "=", 2):
        raise NotAnEquality(f"eq_resolve needs an equality, got {eq!r}")
    if eq.args[0] != phi:
        raise RuleError("eq_resolve: equality does not start from the first premise")
    _expect(claimed, eq.args[1])


def _not_not_elim(premises, args, claimed, deps):
    _arity("not_not_elim", premises, args, 1, 0)
    p = premises[0]
    if not (_is_app(p, "not", 1) and _is_app(p.args[0], "not", 1)):
        raise RuleError(f"not_not_elim needs a double negation, got {p!r}")
    _expect(claimed, p.args[0].args[0])


def _contra(premises, args, claimed, deps):
    _arity("contra", premises, args, 2, 0)
    if premises[1] != mk_not(premises[0]):
        raise RuleError("contra needs a formula and its negation")
    _expect(claimed, FALSE)


def _index_arg(rule, args):
    if len(args) != 1 or not isinstance(args[0], IntLit):
        raise ArityMismatch(f"{rule} takes one integer argument")
    return args[0].value


def _and_elim(premises, args, claimed, deps):
    _arity("and_elim", premises, args, 1)
    i = _index_arg("and_elim", args)
    conj = flatten_and(premises[0])
    if not 0 <= i < len(conj):
        raise RuleError(f"and_elim index {i} out of range")
    _expect(claimed, conj[i])


def _or_intro(premises, args, claimed, deps):
    _arity("or_intro", premises, args, 1)
    i = _index_arg("or_intro", args)
    lits = flatten_or(claimed)
    if not 0 <= i < len(lits) or lits[i] != premises[0]:
        raise ConclusionMismatch(premises[0], claimed)


def _bool_eq(p, rule):
    if not _is_app(p, "=", 2) or well_sorted(p.args[0]) != BOOL:
        raise NotAnEquality(f"{rule} needs a Boolean equality, got {p!r}")
    return p.args


def _equiv_elim1(premises, args, claimed, deps):
    _arity("equiv_elim1", premises, args, 1, 0)
    phi, psi = _bool_eq(premises[0], "equiv_elim1")
    _expect(claimed, rebuild_or([mk_not(phi), psi]))


def _equiv_elim2(premises, args, claimed, deps):
    _arity("equiv_elim2", premises, args, 1, 0)
    phi, psi = _bool_eq(premises[0], "equiv_elim2")
    _expect(claimed, rebuild_or([phi, mk_not(psi)]))


# -- quantifier and scoping extensions ---------------------------------------

def _negated_bool_eq(p, rule):
    if not _is_app(p, "not", 1):
        raise RuleError(f"{rule} needs a negated equality, got {p!r}")
    return _bool_eq(p.args[0], rule)


def _not_equiv_elim1(premises, args, claimed, deps):
    _arity("not_equiv_elim1", premises, args, 1, 0)
    phi, psi = _negated_bool_eq(premises[0], "not_equiv_elim1")
    _expect(claimed, rebuild_or([phi, psi]))


def _not_equiv_elim2(premises, args, claimed, deps):
    _arity("not_equiv_elim2", premises, args, 1, 0)
    phi, psi = _negated_bool_eq(premises[0], "not_equiv_elim2")
    _expect(claimed, rebuild_or([mk_not(phi), mk_not(psi)]))


def _distinct_elim(premises, args, claimed, deps):
    _arity("distinct_elim", premises, args, 1, 0)
    p = premises[0]
    if not _is_app(p, "distinct", 2):
        raise RuleError(f"distinct_elim needs a binary distinct, got {p!r}")
    _expect(claimed, mk_not(mk_eq(*p.args)))


def _instantiate(premises, args, claimed, deps):
    _arity("instantiate", premises, args, 1)
    q = premises[0]
    if not isinstance(q, Forall):
        raise RuleError(f"instantiate needs a quantified premise, got {q!r}")
    _arity("instantiate", premises, args, n_args=len(q.bound))
    mapping = {}
    for v, t in zip(q.bound_vars, args):
        if well_sorted(t) != v.sort:
            raise RuleError(f"instantiating {v.name} : {v.sort} with {t!r}")
        mapping[v] = t
    try:
        expected = substitute(q.body, mapping)
    except CaptureError as e:
        raise RuleError(str(e)) from None
    _expect(claimed, expected)


def _local_assume(premises, args, claimed, deps):
    _arity("local_assume", premises, args, 0, 0)


def scope_conclusion(discharged: Sequence[Term], phi: Term) -> Term:
    lits = [mk_not(a) for a in discharged]
    if phi != FALSE:
        lits.append(phi)
    return rebuild_or(lits)


def _scope(premises, args, claimed, deps):
    _arity("scope", premises, args, 1)
    if not args:
        raise ArityMismatch("scope discharges at least one assumption")
    for a in args:
        if well_sorted(a) != BOOL:
            raise RuleError(f"scope argument {a!r} is not Boolean")
    _expect(claimed, scope_conclusion(args, premises[0]))


Checker = Callable[[list, tuple, Term, frozenset], None]

RULES: dict = {
    "resolution": _resolution,
    "arith_sum_ub": _sum_ub,
    "arith_mult_tangent": _mult_tangent,
    "arith_poly_norm": _poly_norm,
    "ac_norm": _ac_norm,
    "refl": _refl,
    "symm": _symm,
    "trans": _trans,
    "cong": _cong,
    "eq_resolve": _eq_resolve,
    "not_not_elim": _not_not_elim,
    "contra": _contra,
    "and_elim": _and_elim,
    "or_intro": _or_intro,
    "equiv_elim1": _equiv_elim1,
    "equiv_elim2": _equiv_elim2,
    "assume_elim": _assume_elim,
    # beyond the core list: needed for quantified refutations
    "instantiate": _instantiate,
    "distinct_elim": _distinct_elim,
    "not_equiv_elim1": _not_equiv_elim1,
    "not_equiv_elim2": _not_equiv_elim2,
    "local_assume": _local_assume,
    "scope": _scope,
}

STRUCTURAL = frozenset({
    "assume_elim", "refl", "symm", "trans", "cong", "eq_resolve",
    "not_not_elim", "contra", "and_elim", "or_intro", "equiv_elim1", "equiv_elim2",
})


def check_structural(rule, premises, args, claimed, deps=frozenset()) -> None:
    if rule not in STRUCTURAL:
        raise UnknownRule(f"{rule} is not a structural rule")
    RULES[rule](list(premises), tuple(args), claimed, deps)


def check_step(rule, premises, args, claimed, deps=frozenset()) -> None:
    """Dispatch to the checker registered for ``rule``."""
    try:
        checker = RULES[rule]
    except KeyError:
        raise UnknownRule(f"unknown rule {rule}") from None
    checker(list(premises), tuple(args), claimed, deps)
