"""Independent semantic oracles: brute-force evaluation of terms over small models."""

from __future__ import annotations

import itertools
from fractions import Fraction

from cpcheck.terms import (
    BOOL, INT, REAL, App, BoolLit, Forall, FunSym, IntLit, RatLit, ToReal, Var,
    well_sorted,
)


class Model:
    """Carriers for uninterpreted sorts, values for constants, tables for functions.

    ``int_range`` is the finite stand-in used for quantifiers over Int.
    """

    def __init__(self, carriers=None, consts=None, funs=None, int_range=range(-2, 3), nat=()):
        self.carriers = carriers or {}
        self.consts = consts or {}
        self.funs = funs or {}
        self.int_range = int_range
        self.nat = frozenset(nat)

    def domain(self, name, sort):
        if sort == BOOL:
            return (False, True)
        if sort == INT:
            return [i for i in self.int_range if name not in self.nat or i >= 0]
        if sort == REAL:
            raise ValueError("cannot enumerate Real")
        return self.carriers[sort.name]


def evaluate(t, model: Model, env=None):
    env = env or {}
    if isinstance(t, Var):
        if t.name in env:
            return env[t.name]
        return model.consts[t.name]
    if isinstance(t, BoolLit):
        return t.value
    if isinstance(t, (IntLit, RatLit)):
        return Fraction(t.value)
    if isinstance(t, ToReal):
        return evaluate(t.arg, model, env)
    if isinstance(t, Forall):
        names = [n for n, _ in t.bound]
        doms = [model.domain(n, s) for n, s in t.bound]
        for vals in itertools.product(*doms):
            inner = dict(env)
            inner.update(zip(names, vals))
            if not evaluate(t.body, model, inner):
                return False
        return True
    assert isinstance(t, App)
    op = t.op
    if isinstance(op, FunSym):
        args = tuple(evaluate(a, model, env) for a in t.args)
        return model.funs[op.name][args]
    if op in ("and", "or", "implies", "not", "iff"):
        vals = [evaluate(a, model, env) for a in t.args]
        if op == "not":
            return not vals[0]
        if op == "and":
            return all(vals)
        if op == "or":
            return any(vals)
        if op == "implies":
            return (not vals[0]) or vals[1]
        return vals[0] == vals[1]
    vals = [evaluate(a, model, env) for a in t.args]
    if op == "=":
        return vals[0] == vals[1]
    if op == "distinct":
        return len(set(vals)) == len(vals)
    if op == "<":
        return vals[0] < vals[1]
    if op == "<=":
        return vals[0] <= vals[1]
    if op == ">":
        return vals[0] > vals[1]
    if op == ">=":
        return vals[0] >= vals[1]
    if op == "+":
        return sum(vals, Fraction(0))
    if op == "*":
        out = Fraction(1)
        for v in vals:
            out *= v
        return out
    if op == "-":
        if len(vals) == 1:
            return -vals[0]
        out = vals[0]
        for v in vals[1:]:
            out -= v
        return out
    if op == "neg":
        return -vals[0]
    if op == "/":
        return vals[0] / vals[1]
    raise ValueError(f"cannot evaluate {op}")


def _tables(dom_lists, codomain):
    keys = list(itertools.product(*dom_lists))
    for outs in itertools.product(codomain, repeat=len(keys)):
        yield dict(zip(keys, outs))


def all_models(sorts, consts, funs, size=2, int_range=range(-2, 3), nat=()):
    """Every model with carriers of exactly ``size`` elements.

    ``consts`` is a sequence of (name, Sort), ``funs`` of FunSym. Int constants
    range over ``int_range`` (non-negative part for names in ``nat``).
    """
    carriers = {s: [f"{s}{i}" for i in range(size)] for s in sorts}
    base = Model(carriers, int_range=int_range, nat=nat)

    def dom(name, s):
        return base.domain(name, s)

    const_doms = [dom(n, s) for n, s in consts]
    fun_tables = [list(_tables([dom("", a) for a in f.arg_sorts], dom("", f.result))) for f in funs]
    for cvals in itertools.product(*const_doms):
        for tabs in itertools.product(*fun_tables):
            yield Model(carriers,
                        {n: v for (n, _), v in zip(consts, cvals)},
                        {f.name: tab for f, tab in zip(funs, tabs)},
                        int_range, nat)


def script_satisfiable(script, size=2, int_range=range(-2, 3)):
    """Some model with carriers of ``size`` elements satisfies every assertion."""
    for m in all_models(script.sort_decls, script.const_decls, script.fun_decls, size, int_range):
        if all(evaluate(a, m) for a in script.assertions):
            return True
    return False


def assignments(atoms):
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield dict(zip([a.name for a in atoms], bits))


def eval_prop(t, assignment):
    """Propositional evaluation where atoms are Bool Vars named in ``assignment``."""
    return evaluate(t, Model(consts=assignment))


# -- compiled evaluation for bulk sampling ------------------------------------
#
# Terms become straight-line Python over unreduced (numerator, positive
# denominator) integer pairs: exact, and without the gcd work Fraction does on
# every operation.

_CMP = {"<": "<", "<=": "<=", ">": ">", ">=": ">="}


class _Emitter:
    def __init__(self):
        self.lines = []
        self.vars = {}
        self.n = 0

    def fresh(self):
        self.n += 1
        return f"v{self.n}"

    def num(self, t):
        """Emit code for an arithmetic term; returns (numerator, denominator) names."""
        if isinstance(t, Var):
            if t.name not in self.vars:
                k = self.fresh()
                self.lines.append(f"{k}n, {k}d = env[{t.name!r}]")
                self.vars[t.name] = (f"{k}n", f"{k}d")
            return self.vars[t.name]
        if isinstance(t, (IntLit, RatLit)):
            v = Fraction(t.value)
            return (f"({v.numerator})", str(v.denominator))
        if isinstance(t, ToReal):
            return self.num(t.arg)
        assert isinstance(t, App) and isinstance(t.op, str), t
        parts = [self.num(a) for a in t.args]
        op = t.op
        if op in ("neg", "-") and len(parts) == 1:
            return (f"(-{parts[0][0]})", parts[0][1])
        k = self.fresh()
        n, d = parts[0]
        for m, e in parts[1:]:
            if op == "+":
                n = f"({n} * {e} + {m} * {d})"
            elif op == "-":
                n = f"({n} * {e} - {m} * {d})"
            elif op == "*":
                n = f"({n} * {m})"
            else:
                raise ValueError(f"cannot compile {op}")
            d = f"({d} * {e})"
        self.lines.append(f"{k}n, {k}d = {n}, {d}")
        return (f"{k}n", f"{k}d")

    def prop(self, t):
        """Emit code for a Boolean term; returns an expression string."""
        if isinstance(t, BoolLit):
            return repr(t.value)
        if isinstance(t, Var):
            return f"env[{t.name!r}]"
        assert isinstance(t, App) and isinstance(t.op, str), t
        op = t.op
        if op == "not":
            return f"(not {self.prop(t.args[0])})"
        if op in ("and", "or"):
            k = self.fresh()
            self.lines.append(f"{k} = " + f" {op} ".join(self._thunk(a) for a in t.args))
            return k
        if op == "=" and well_sorted(t.args[0]) == BOOL:
            return f"({self.prop(t.args[0])} == {self.prop(t.args[1])})"
        if op == "=" or op in _CMP:
            (a, b), (c, d) = self.num(t.args[0]), self.num(t.args[1])
            rel = "==" if op == "=" else _CMP[op]
            return f"({a} * {d} {rel} {c} * {b})"
        raise ValueError(f"cannot compile {op}")

    def _thunk(self, t):
        # sub-formulas are evaluated eagerly; they are cheap and side-effect free
        return f"({self.prop(t)})"


def compile_term(t):
    """Quantifier-free term to a function of a name -> (num, den) map.

    Arithmetic terms return a pair, Boolean terms a bool.
    """
    em = _Emitter()
    if well_sorted(t) == BOOL:
        out = em.prop(t)
    else:
        n, d = em.num(t)
        out = f"({n}, {d})"
    body = "\n    ".join(em.lines + [f"return {out}"])
    ns = {}
    exec(f"def f(env):\n    {body}\n", ns)
    return ns["f"]


def pairs(point):
    """Convert a name -> Fraction map for use with :func:`compile_term`."""
    return {k: (Fraction(v).numerator, Fraction(v).denominator) for k, v in point.items()}
