"""From first-order goals to SMT-LIB problems.

A goal file is a sequence of S-expressions::

    (sort NAME [:nonempty])
    (const NAME SORT)          ; SORT may be Nat
    (fun NAME (SORT+) SORT)
    (hyp NAME term)
    (goal term)

Preprocessing removes ``iff``, ``>``/``>=`` and Nat variables; translation
asserts the hypotheses and the negated conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import EmptySortRisk, ParseError, SortError, UnsupportedConstruct
from .smtlib import (
    Atom, Script, Signature, SList, Source, TermParser, _decode, read_sexprs,
)
from .terms import (
    BOOL, INT, App, Forall, FunSym, IntLit, Term, ToReal, Var, mk_le,
    rebuild_and, uninterpreted, well_sorted,
)


@dataclass(frozen=True)
class Goal:
    sort_params: tuple = ()   # (name, nonempty)
    consts: tuple = ()        # (name, Sort)
    funs: tuple = ()          # FunSym
    hypotheses: tuple = ()    # (name, Term)
    conclusion: Term = None
    nat_vars: frozenset = frozenset()
    rewrites: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class TranslationRecord:
    script: Script
    obligations: dict
    rewrites: tuple


def parse_goal(text) -> Goal:
    text = _decode(text)
    src = Source(text)
    sig = Signature()
    tp = TermParser(sig, src, normalize=False, goal_mode=True)
    sorts, consts, funs, hyps = [], [], [], []
    nat_consts = set()
    conclusion = None

    def bool_term(node):
        t = tp.term(node)
        s = well_sorted(t)
        if s != BOOL:
            raise SortError(t, BOOL, s)
        return t

    def fresh(node, name):
        if sig.declared(name):
            raise src.error(node, f"duplicate declaration of {name}")

    for cmd in read_sexprs(text, src):
        if not isinstance(cmd, SList) or not cmd or not isinstance(cmd[0], Atom):
            raise src.error(cmd, "expected a goal command")
        kind = cmd[0].text
        if kind == "sort":
            if len(cmd) not in (2, 3):
                raise src.error(cmd, "malformed sort")
            name = tp.symbol(cmd[1])
            fresh(cmd, name)
            nonempty = len(cmd) == 3
            if nonempty and (not isinstance(cmd[2], Atom) or cmd[2].text != ":nonempty"):
                raise src.error(cmd[2], "expected :nonempty")
            sig.sorts[name] = uninterpreted(name)
            sorts.append((name, nonempty))
        elif kind == "const":
            if len(cmd) != 3:
                raise src.error(cmd, "malformed const")
            name = tp.symbol(cmd[1])
            fresh(cmd, name)
            if isinstance(cmd[2], Atom) and cmd[2].text == "Nat":
                s = INT
                nat_consts.add(name)
            else:
                s = tp.sort(cmd[2])
            sig.symbols[name] = Var(name, s)
            consts.append((name, s))
        elif kind == "fun":
            if len(cmd) != 4 or not isinstance(cmd[2], SList) or not cmd[2]:
                raise src.error(cmd, "malformed fun")
            name = tp.symbol(cmd[1])
            fresh(cmd, name)
            for s in list(cmd[2]) + [cmd[3]]:
                if isinstance(s, Atom) and s.text == "Nat":
                    raise UnsupportedConstruct(f"Nat in the signature of function {name}")
            f = FunSym(name, tuple(tp.sort(s) for s in cmd[2]), tp.sort(cmd[3]))
            sig.symbols[name] = f
            funs.append(f)
        elif kind == "hyp":
            if len(cmd) != 3:
                raise src.error(cmd, "malformed hyp")
            hyps.append((tp.symbol(cmd[1]), bool_term(cmd[2])))
        elif kind == "goal":
            if len(cmd) != 2 or conclusion is not None:
                raise src.error(cmd, "expected exactly one (goal term)")
            conclusion = bool_term(cmd[1])
        else:
            raise src.error(cmd, f"unknown goal command {kind}")
    if conclusion is None:
        raise ParseError(*src.where(len(text)), "missing (goal ...)")
    nat = nat_consts | tp.nat_binders
    plain = {n for n, _ in consts if n not in nat_consts} | tp.plain_binders
    if plain & nat:
        raise UnsupportedConstruct(f"names used both as Nat and non-Nat: {sorted(plain & nat)}")
    return Goal(tuple(sorts), tuple(consts), tuple(funs), tuple(hyps), conclusion,
                frozenset(nat))


# -- preprocessing ------------------------------------------------------------

def _mentions_nat(t: Term, nat: frozenset) -> bool:
    if isinstance(t, Var):
        return t.sort == INT and t.name in nat
    if isinstance(t, App):
        return any(_mentions_nat(a, nat) for a in t.args)
    if isinstance(t, ToReal):
        return _mentions_nat(t.arg, nat)
    if isinstance(t, Forall):
        return _mentions_nat(t.body, nat)
    return False


def _nonneg(v: Var) -> Term:
    return mk_le(IntLit(0), v)


class _Rewriter:
    def __init__(self, nat: frozenset):
        self.nat = nat
        self.log: list = []

    def note(self, before, after, reason):
        self.log.append((before, after, reason))
        return after

    def __call__(self, t: Term) -> Term:
        if isinstance(t, ToReal):
            return ToReal(self(t.arg))
        if isinstance(t, Forall):
            body = self(t.body)
            guards = [_nonneg(Var(n, s)) for n, s in t.bound if s == INT and n in self.nat]
            if guards:
                body = App("implies", (rebuild_and(guards), body))
                return self.note(t, Forall(t.bound, body), "Nat binder guard")
            return Forall(t.bound, body)
        if not isinstance(t, App):
            return t
        op = t.op
        if op in ("-", "neg", "/") and self.nat and _mentions_nat(t, self.nat):
            raise UnsupportedConstruct(f"truncated Nat arithmetic in {t!r}")
        args = tuple(self(a) for a in t.args)
        if op == "iff":
            return self.note(t, App("=", args), "iff to Bool equality")
        if op == ">":
            return self.note(t, App("<", (args[1], args[0])), "> to <")
        if op == ">=":
            return self.note(t, App("<=", (args[1], args[0])), ">= to <=")
        return App(op, args)


def preprocess(g: Goal) -> Goal:
    """Eliminate iff, strict/non-strict greater-than and Nat variables."""
    rw = _Rewriter(g.nat_vars)
    guards = []
    taken = {n for n, _ in g.hypotheses}
    for name, s in g.consts:
        if name in g.nat_vars:
            hname = f"{name}_nonneg"
            while hname in taken:
                hname += "_"
            taken.add(hname)
            guard = _nonneg(Var(name, s))
            rw.note(Var(name, s), guard, "Nat constant guard")
            guards.append((hname, guard))
    hyps = tuple(guards) + tuple((n, rw(h)) for n, h in g.hypotheses)
    conclusion = rw(g.conclusion)
    return replace(g, hypotheses=hyps, conclusion=conclusion, nat_vars=frozenset(),
                   rewrites=g.rewrites + tuple(rw.log))


# -- translation --------------------------------------------------------------

def _quantified_sorts(t: Term, out: set) -> set:
    if isinstance(t, Forall):
        out.update(s for _, s in t.bound)
        _quantified_sorts(t.body, out)
    elif isinstance(t, App):
        for a in t.args:
            _quantified_sorts(a, out)
    elif isinstance(t, ToReal):
        _quantified_sorts(t.arg, out)
    return out


def _unprocessed(t: Term) -> bool:
    if isinstance(t, App):
        return t.op in ("iff", ">", ">=") or any(_unprocessed(a) for a in t.args)
    if isinstance(t, Forall):
        return _unprocessed(t.body)
    if isinstance(t, ToReal):
        return _unprocessed(t.arg)
    return False


def negate_conclusion(c: Term) -> Term:
    if isinstance(c, App) and c.op == "=" and well_sorted(c.args[0]) == BOOL:
        return App("distinct", c.args)
    return App("not", (c,))


def translate(g: Goal) -> TranslationRecord:
    terms = [h for _, h in g.hypotheses] + [g.conclusion]
    if g.nat_vars or any(_unprocessed(t) for t in terms):
        raise UnsupportedConstruct("translate expects a preprocessed goal")
    quantified: set = set()
    for t in terms:
        _quantified_sorts(t, quantified)
    obligations = {}
    for name, nonempty in g.sort_params:
        s = uninterpreted(name)
        witnesses = [c for c, cs in g.consts if cs == s]
        if nonempty:
            obligations[name] = "declared nonempty"
        elif witnesses:
            obligations[name] = f"witness constant {witnesses[0]}"
        elif s in quantified:
            raise EmptySortRisk(name)
        else:
            obligations[name] = "never quantified over"
    script = Script(
        sort_decls=[n for n, _ in g.sort_params],
        const_decls=list(g.consts),
        fun_decls=list(g.funs),
        assertions=[h for _, h in g.hypotheses] + [negate_conclusion(g.conclusion)],
        has_check_sat=True,
    )
    return TranslationRecord(script, obligations, g.rewrites)
