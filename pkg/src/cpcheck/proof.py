"""Proof text: an S-expression step format for CPC-style refutations.

    proof := (assume ID term)* (step ID term :rule NAME [:premises (ID+)] [:args (arg+)])+
    arg   := term | INT | (/ INT INT) | true | false
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import AssumeMismatch, ParseError, SortError, UnknownPremise
from .smtlib import Atom, SList, Script, Source, TermParser, _decode, read_sexprs
from .terms import BOOL, FALSE, Term, Var, free_vars, term_to_str, well_sorted

_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")


@dataclass(frozen=True, slots=True)
class ProofStep:
    id: str
    rule: str
    premises: tuple
    args: tuple
    conclusion: Term
    line: int = field(default=0, compare=False)


@dataclass
class ProofDag:
    assumptions: list
    steps: list
    final_step: str

    @property
    def is_refutation(self):
        return self.steps[-1].conclusion == FALSE


def _ident(src, node, what):
    if not isinstance(node, Atom) or node.kind != "atom" or not _ID.match(node.text):
        raise src.error(node, f"expected {what} identifier, got {node!r}")
    return node.text


def parse_proof(text, within: Script) -> ProofDag:
    """Parse proof text against the declarations and assertions of ``within``."""
    text = _decode(text)
    src = Source(text)
    tp = TermParser(within.signature(), src, allow_free=True)
    asserted = set(within.assertions)
    assumptions: list = []
    steps: list = []
    seen: set = set()

    def bool_term(node):
        t = tp.term(node)
        s = well_sorted(t)
        if s != BOOL:
            raise SortError(t, BOOL, s)
        return t

    for cmd in read_sexprs(text, src):
        if not isinstance(cmd, SList) or not cmd or not isinstance(cmd[0], Atom):
            raise src.error(cmd, "expected (assume ...) or (step ...)")
        kind = cmd[0].text
        line = src.where(cmd.pos)[0]
        if kind == "assume":
            if steps:
                raise src.error(cmd, "assumptions must precede steps")
            if len(cmd) != 3:
                raise src.error(cmd, "malformed assume")
            aid = _ident(src, cmd[1], "assumption")
            if aid in seen:
                raise src.error(cmd[1], f"duplicate id {aid}")
            t = bool_term(cmd[2])
            if t not in asserted:
                raise AssumeMismatch(aid, *src.where(cmd.pos))
            seen.add(aid)
            assumptions.append((aid, t))
        elif kind == "step":
            if len(cmd) < 5:
                raise src.error(cmd, "malformed step")
            sid = _ident(src, cmd[1], "step")
            if sid in seen:
                raise src.error(cmd[1], f"duplicate id {sid}")
            conclusion = bool_term(cmd[2])
            rule, premises, args = None, (), ()
            rest = cmd[3:]
            keys = set()
            i = 0
            while i < len(rest):
                key = rest[i]
                if not isinstance(key, Atom) or key.kind != "kw" or i + 1 >= len(rest):
                    raise src.error(key, "expected :rule, :premises or :args with a value")
                if key.text in keys:
                    raise src.error(key, f"repeated {key.text}")
                keys.add(key.text)
                val = rest[i + 1]
                if key.text == ":rule":
                    rule = _ident(src, val, "rule")
                elif key.text == ":premises":
                    if not isinstance(val, SList) or not val:
                        raise src.error(val, ":premises needs a non-empty list")
                    ids = []
                    for p in val:
                        pid = _ident(src, p, "premise")
                        if pid not in seen:
                            raise UnknownPremise(sid, pid, *src.where(p.pos))
                        ids.append(pid)
                    premises = tuple(ids)
                elif key.text == ":args":
                    if not isinstance(val, SList) or not val:
                        raise src.error(val, ":args needs a non-empty list")
                    arg_terms = []
                    for a in val:
                        t = tp.term(a)
                        well_sorted(t)
                        arg_terms.append(t)
                    args = tuple(arg_terms)
                else:
                    raise src.error(key, f"unknown key {key.text}")
                i += 2
            if rule is None:
                raise src.error(cmd, "step without :rule")
            seen.add(sid)
            steps.append(ProofStep(sid, rule, premises, args, conclusion, line))
        else:
            raise src.error(cmd, f"unknown proof command {kind}")
    if not steps:
        raise ParseError(*src.where(len(text)), "proof has no steps")
    return ProofDag(assumptions, steps, steps[-1].id)


def print_proof(dag: ProofDag, within: Script | None = None) -> str:
    """Proof text for ``dag``; with ``within``, undeclared variables print as ``(as v S)``."""
    declared = set()
    if within is not None:
        declared = {Var(n, s) for n, s in within.const_decls}

    def show(t):
        if within is None:
            return term_to_str(t)
        return term_to_str(t, frozenset(free_vars(t) - declared))

    out = [f"(assume {aid} {show(t)})" for aid, t in dag.assumptions]
    for s in dag.steps:
        parts = [f"(step {s.id} {show(s.conclusion)} :rule {s.rule}"]
        if s.premises:
            parts.append(f" :premises ({' '.join(s.premises)})")
        if s.args:
            parts.append(f" :args ({' '.join(show(a) for a in s.args)})")
        out.append("".join(parts) + ")")
    return "".join(line + "\n" for line in out)
