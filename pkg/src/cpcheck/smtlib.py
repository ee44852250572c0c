"""Reading and writing the SMT-LIB 2 subset the checker understands."""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, SortError
from .terms import (
    BOOL, INT, REAL, App, BoolLit, Forall, FunSym, IntLit, RatLit, Sort, Term,
    ToReal, Var, quote_symbol, rebuild_and, rebuild_or, substitute,
    term_to_str, uninterpreted, well_sorted, RESERVED,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|;[^\n]*)
  | (?P<open>\()
  | (?P<close>\))
  | (?P<qsym>\|[^|\\]*\|)
  | (?P<str>"(?:[^"]|"")*")
  | (?P<kw>:[^\s()|;"]+)
  | (?P<atom>[^\s()|;"]+)
    """,
    re.VERBOSE,
)
_NUMERAL = re.compile(r"(0|[1-9][0-9]*)\Z")
_DECIMAL = re.compile(r"(0|[1-9][0-9]*)\.([0-9]+)\Z")


class Atom:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos

    @property
    def name(self):
        return self.text[1:-1] if self.kind == "qsym" else self.text

    def __repr__(self):
        return self.text


class SList(list):
    """A parenthesised list remembering its source offset."""

    __slots__ = ("pos",)

    def __init__(self, pos):
        super().__init__()
        self.pos = pos


class Source:
    """Offset to line/column translation for error messages."""

    def __init__(self, text: str):
        self.text = text
        self._lines = [m.end() for m in re.finditer("\n", text)]

    def where(self, pos):
        line = bisect.bisect_right(self._lines, pos)
        start = self._lines[line - 1] if line else 0
        return line + 1, pos - start + 1

    def error(self, node, message):
        line, col = self.where(node.pos if node is not None else len(self.text))
        return ParseError(line, col, message)


def read_sexprs(text: str, src: Source | None = None) -> list:
    """Tokenise ``text`` into a list of top-level S-expressions."""
    src = src or Source(text)
    top: list = []
    stack: list = []
    pos = 0
    n = len(text)
    match = _TOKEN.match
    while pos < n:
        m = match(text, pos)
        if m is None:
            line, col = src.where(pos)
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "ws":
            pass
        elif kind == "open":
            stack.append(SList(pos))
        elif kind == "close":
            if not stack:
                line, col = src.where(pos)
                raise ParseError(line, col, "unbalanced ')'")
            done = stack.pop()
            (stack[-1] if stack else top).append(done)
        else:
            atom = Atom(kind, m.group(), pos)
            (stack[-1] if stack else top).append(atom)
        pos = m.end()
    if stack:
        line, col = src.where(stack[-1].pos)
        raise ParseError(line, col, "unbalanced '('")
    return top


def _decode(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        return text.decode("utf-8")
    return text


# -- terms --------------------------------------------------------------------

_NORMALIZED_REL = {">": "<", ">=": "<="}
_KEYWORD_HEADS = {"forall", "exists", "let", "as", "!", "_", "match", "par"}


class Signature:
    """Declared sorts and symbols in scope for term parsing."""

    def __init__(self):
        self.sorts: dict = {}
        self.symbols: dict = {}  # name -> Var | FunSym | Macro

    def declared(self, name):
        return name in self.sorts or name in self.symbols


@dataclass(frozen=True)
class Macro:
    params: tuple
    body: Term


class TermParser:
    """Turns S-expressions into terms over a Signature.

    ``normalize`` rewrites ``>``/``>=`` into ``<``/``<=`` with swapped
    arguments. ``goal_mode`` additionally accepts ``iff`` and the ``Nat`` sort
    token on binders (recorded in ``nat_binders``).
    """

    def __init__(self, sig: Signature, src: Source, *, normalize=True,
                 goal_mode=False, allow_free=False):
        self.sig = sig
        self.src = src
        self.normalize = normalize
        self.goal_mode = goal_mode
        self.allow_free = allow_free
        self.nat_binders: set = set()
        self.plain_binders: set = set()

    def err(self, node, msg):
        return self.src.error(node, msg)

    def sort(self, node) -> Sort:
        if isinstance(node, Atom) and node.kind in ("atom", "qsym"):
            name = node.name
            if node.kind == "atom" and name in ("Bool", "Int", "Real"):
                return {"Bool": BOOL, "Int": INT, "Real": REAL}[name]
            if name in self.sig.sorts:
                return self.sig.sorts[name]
        raise self.err(node, f"unknown sort {node!r}")

    def symbol(self, node) -> str:
        if not isinstance(node, Atom) or node.kind not in ("atom", "qsym"):
            raise self.err(node, f"expected a symbol, got {node!r}")
        if node.kind == "atom" and (_NUMERAL.match(node.text) or _DECIMAL.match(node.text)):
            raise self.err(node, f"expected a symbol, got numeral {node.text}")
        return node.name

    def term(self, node, scope=None) -> Term:
        scope = scope or {}
        if isinstance(node, Atom):
            return self._atom(node, scope)
        if not node:
            raise self.err(node, "empty application")
        head = node[0]
        if not isinstance(head, Atom) or head.kind not in ("atom", "qsym"):
            raise self.err(node, "unsupported application head")
        h = head.name
        if head.kind == "atom" and h in _KEYWORD_HEADS:
            return self._binder_form(h, node, scope)
        args = [self.term(a, scope) for a in node[1:]]
        if head.kind == "atom":
            built = self._builtin(h, node, args)
            if built is not None:
                return built
        sym = self.sig.symbols.get(h)
        if isinstance(sym, FunSym):
            return App(sym, args)
        if isinstance(sym, Macro):
            if len(args) != len(sym.params):
                raise self.err(node, f"{h} expects {len(sym.params)} arguments")
            return substitute(sym.body, dict(zip(sym.params, args)))
        raise self.err(head, f"undeclared function symbol {h}")

    def _atom(self, node, scope):
        text = node.text
        if node.kind == "atom":
            if _NUMERAL.match(text):
                return IntLit(int(text))
            if _DECIMAL.match(text):
                return RatLit(Fraction(text))
        if node.kind not in ("atom", "qsym"):
            raise self.err(node, f"unexpected token {text}")
        name = node.name
        if name in scope:
            return scope[name]
        sym = self.sig.symbols.get(name)
        if isinstance(sym, Var):
            return sym
        if isinstance(sym, Macro) and not sym.params:
            return sym.body
        if node.kind == "atom" and name in ("true", "false"):
            return BoolLit(name == "true")
        raise self.err(node, f"undeclared symbol {name}")

    def _binder_form(self, h, node, scope):
        if h == "forall":
            if len(node) != 3 or not isinstance(node[1], SList) or not node[1]:
                raise self.err(node, "malformed forall")
            bound = []
            inner = dict(scope)
            for b in node[1]:
                if not isinstance(b, SList) or len(b) != 2:
                    raise self.err(b, "malformed binder")
                name = self.symbol(b[0])
                if self.goal_mode and isinstance(b[1], Atom) and b[1].text == "Nat":
                    s = INT
                    self.nat_binders.add(name)
                else:
                    s = self.sort(b[1])
                    self.plain_binders.add(name)
                bound.append((name, s))
                inner[name] = Var(name, s)
            if len({n for n, _ in bound}) != len(bound):
                raise self.err(node, "duplicate bound variable")
            return Forall(bound, self.term(node[2], inner))
        if h == "let":
            if len(node) != 3 or not isinstance(node[1], SList):
                raise self.err(node, "malformed let")
            inner = dict(scope)
            for b in node[1]:
                if not isinstance(b, SList) or len(b) != 2:
                    raise self.err(b, "malformed let binding")
                inner[self.symbol(b[0])] = self.term(b[1], scope)
            return self.term(node[2], inner)
        if h == "as" and self.allow_free:
            if len(node) != 3:
                raise self.err(node, "malformed (as NAME SORT)")
            name = self.symbol(node[1])
            if self.sig.declared(name):
                raise self.err(node, f"free variable {name} clashes with a declaration")
            return Var(name, self.sort(node[2]))
        raise self.err(node, f"unsupported construct {h}")

    def _builtin(self, h, node, args):
        n = len(args)

        def need(lo, hi=None):
            if n < lo or (hi is not None and n > hi):
                raise self.err(node, f"{h}: wrong number of arguments ({n})")

        if h == "not":
            need(1, 1)
            return App("not", args)
        if h in ("and", "or"):
            need(2)
            return (rebuild_and if h == "and" else rebuild_or)(args)
        if h == "=>":
            need(2)
            acc = args[-1]
            for a in reversed(args[:-1]):
                acc = App("implies", (a, acc))
            return acc
        if h == "iff" and self.goal_mode:
            need(2, 2)
            return App("iff", args)
        if h == "=":
            need(2, 2)
            return App("=", args)
        if h == "distinct":
            need(2)
            return App("distinct", args)
        if h in ("<", "<=", ">", ">="):
            need(2, 2)
            if self.normalize and h in _NORMALIZED_REL:
                return App(_NORMALIZED_REL[h], (args[1], args[0]))
            return App(h, args)
        if h in ("+", "*"):
            need(2)
            return App(h, args)
        if h == "-":
            need(1)
            if n == 1:
                a = args[0]
                if isinstance(a, IntLit) and a.value >= 0:
                    return IntLit(-a.value)
                if isinstance(a, RatLit) and a.value >= 0:
                    return RatLit(-a.value)
                return App("neg", args)
            return App("-", args)
        if h == "/":
            need(2, 2)
            p, q = args
            if (isinstance(node[1], Atom) and isinstance(node[2], Atom)
                    and isinstance(p, IntLit) and isinstance(q, IntLit)):
                if q.value == 0:
                    raise self.err(node, "division by zero literal")
                return RatLit(Fraction(p.value, q.value))
            return App("/", args)
        if h == "to_real":
            need(1, 1)
            return ToReal(args[0])
        return None


# -- scripts ------------------------------------------------------------------

@dataclass
class Script:
    sort_decls: list = field(default_factory=list)
    const_decls: list = field(default_factory=list)
    fun_decls: list = field(default_factory=list)
    assertions: list = field(default_factory=list)
    has_check_sat: bool = False
    logic: str | None = None

    def signature(self) -> Signature:
        sig = Signature()
        for name in self.sort_decls:
            sig.sorts[name] = uninterpreted(name)
        for name, s in self.const_decls:
            sig.symbols[name] = Var(name, s)
        for f in self.fun_decls:
            sig.symbols[f.name] = f
        return sig


_IGNORED_COMMANDS = {"set-info", "set-option", "exit", "get-proof"}
_BUILTIN_NAMES = {"not", "and", "or", "=>", "=", "distinct", "<", "<=", ">", ">=",
                  "+", "-", "*", "/", "to_real", "iff", "Bool", "Int", "Real"}


def _declare(sig, src, node, name):
    if sig.declared(name) or name in _BUILTIN_NAMES or name in RESERVED:
        raise src.error(node, f"duplicate or reserved name {name}")


def parse_script(text) -> Script:
    """Parse SMT-LIB text (str or UTF-8 bytes) into a well-sorted Script."""
    text = _decode(text)
    src = Source(text)
    script = Script()
    sig = Signature()
    tp = TermParser(sig, src)
    for cmd in read_sexprs(text, src):
        if not isinstance(cmd, SList) or not cmd or not isinstance(cmd[0], Atom):
            raise src.error(cmd, "expected a command")
        name = cmd[0].text
        if name == "declare-sort":
            if len(cmd) != 3 or not isinstance(cmd[2], Atom) or cmd[2].text != "0":
                raise src.error(cmd, "only declare-sort with arity 0 is supported")
            s = tp.symbol(cmd[1])
            _declare(sig, src, cmd, s)
            sig.sorts[s] = uninterpreted(s)
            script.sort_decls.append(s)
        elif name == "declare-const":
            if len(cmd) != 3:
                raise src.error(cmd, "malformed declare-const")
            c = tp.symbol(cmd[1])
            _declare(sig, src, cmd, c)
            v = Var(c, tp.sort(cmd[2]))
            sig.symbols[c] = v
            script.const_decls.append((c, v.sort))
        elif name == "declare-fun":
            if len(cmd) != 4 or not isinstance(cmd[2], SList):
                raise src.error(cmd, "malformed declare-fun")
            f = tp.symbol(cmd[1])
            _declare(sig, src, cmd, f)
            arg_sorts = tuple(tp.sort(s) for s in cmd[2])
            result = tp.sort(cmd[3])
            if arg_sorts:
                sym = FunSym(f, arg_sorts, result)
                sig.symbols[f] = sym
                script.fun_decls.append(sym)
            else:
                sig.symbols[f] = Var(f, result)
                script.const_decls.append((f, result))
        elif name == "define-fun":
            if len(cmd) != 5 or not isinstance(cmd[2], SList):
                raise src.error(cmd, "malformed define-fun")
            f = tp.symbol(cmd[1])
            _declare(sig, src, cmd, f)
            params, scope = [], {}
            for p in cmd[2]:
                if not isinstance(p, SList) or len(p) != 2:
                    raise src.error(p, "malformed parameter")
                v = Var(tp.symbol(p[0]), tp.sort(p[1]))
                params.append(v)
                scope[v.name] = v
            body = tp.term(cmd[4], scope)
            if well_sorted(body) != tp.sort(cmd[3]):
                raise SortError(body, tp.sort(cmd[3]), well_sorted(body))
            sig.symbols[f] = Macro(tuple(params), body)
        elif name == "assert":
            if len(cmd) != 2:
                raise src.error(cmd, "malformed assert")
            t = tp.term(cmd[1])
            s = well_sorted(t)
            if s != BOOL:
                raise SortError(t, BOOL, s)
            script.assertions.append(t)
        elif name == "check-sat":
            script.has_check_sat = True
        elif name == "set-logic":
            if len(cmd) != 2:
                raise src.error(cmd, "malformed set-logic")
            script.logic = cmd[1].text
        elif name in _IGNORED_COMMANDS:
            continue
        else:
            raise src.error(cmd, f"unsupported command {name}")
    return script


def print_script(s: Script) -> str:
    out = []
    if s.logic:
        out.append(f"(set-logic {s.logic})")
    for name in s.sort_decls:
        out.append(f"(declare-sort {quote_symbol(name)} 0)")
    for name, sort in s.const_decls:
        out.append(f"(declare-const {quote_symbol(name)} {sort})")
    for f in s.fun_decls:
        doms = " ".join(str(d) for d in f.arg_sorts)
        out.append(f"(declare-fun {quote_symbol(f.name)} ({doms}) {f.result})")
    for a in s.assertions:
        out.append(f"(assert {term_to_str(a)})")
    if s.has_check_sat:
        out.append("(check-sat)")
    return "".join(line + "\n" for line in out)


def parse_term(text, script: Script | None = None, **kw) -> Term:
    """Parse a single term against the declarations of ``script``."""
    text = _decode(text)
    src = Source(text)
    nodes = read_sexprs(text, src)
    if len(nodes) != 1:
        raise src.error(None, "expected exactly one term")
    sig = script.signature() if script is not None else Signature()
    return TermParser(sig, src, **kw).term(nodes[0])
