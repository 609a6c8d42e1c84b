"""CTL formulas: syntax tree, parser, printer, subformula counting and
normalization to the base {true, atom, !, &, EX, EU, EG}.

Concrete syntax (loosest to tightest)::

    f -> g            right-associative
    f | g, f or g
    f & g, f and g
    ! f, not f, AX f, EX f, AF f, EF f, AG f, EG f
    true, false, atom, ( f ), A[f U g], E[f U g]
"""

from __future__ import annotations

import re
import threading
import weakref
from dataclasses import dataclass
from typing import Iterator, Union


class CTLSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"position {position}: {message}")
        self.position = position


class _Node:
    """Formula nodes are hash-consed: constructing a node equal to a live one
    returns that instance, so structural equality is identity and hashing
    is the fast default. Labeling keys dictionaries on subformulas."""

    _table: "weakref.WeakValueDictionary[tuple, _Node]" = weakref.WeakValueDictionary()
    _lock = threading.Lock()

    def __new__(cls, *args):
        key = (cls, *args)
        with _Node._lock:
            node = _Node._table.get(key)
            if node is None:
                node = object.__new__(cls)
                _Node._table[key] = node
        return node

    def __reduce__(self):
        return type(self), tuple(getattr(self, f) for f in self.__dataclass_fields__)

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


@dataclass(frozen=True, eq=False)
class TrueConst(_Node):
    pass


@dataclass(frozen=True, eq=False)
class FalseConst(_Node):
    pass


@dataclass(frozen=True, eq=False)
class Atom(_Node):
    name: str


@dataclass(frozen=True, eq=False)
class Not(_Node):
    arg: Formula


@dataclass(frozen=True, eq=False)
class And(_Node):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Or(_Node):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Implies(_Node):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class AX(_Node):
    arg: Formula


@dataclass(frozen=True, eq=False)
class EX(_Node):
    arg: Formula


@dataclass(frozen=True, eq=False)
class AF(_Node):
    arg: Formula


@dataclass(frozen=True, eq=False)
class EF(_Node):
    arg: Formula


@dataclass(frozen=True, eq=False)
class AG(_Node):
    arg: Formula


@dataclass(frozen=True, eq=False)
class EG(_Node):
    arg: Formula


@dataclass(frozen=True, eq=False)
class AU(_Node):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class EU(_Node):
    left: Formula
    right: Formula


Formula = Union[TrueConst, FalseConst, Atom, Not, And, Or, Implies,
                AX, EX, AF, EF, AG, EG, AU, EU]

UNARY = {"AX": AX, "EX": EX, "AF": AF, "EF": EF, "AG": AG, "EG": EG}
UNARY_TYPES = (Not, AX, EX, AF, EF, AG, EG)
BINARY_TYPES = (And, Or, Implies, AU, EU)
BASE_TYPES = (TrueConst, Atom, Not, And, EX, EU, EG)

RESERVED = {"true", "false", "and", "or", "not", "A", "E", "U", *UNARY}


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY_TYPES):
        return (f.arg,)
    if isinstance(f, BINARY_TYPES):
        return (f.left, f.right)
    return ()


def subformulas(f: Formula) -> list[Formula]:
    """Distinct subformulas in post-order: every child precedes its parents."""
    seen: set[Formula] = set()
    order: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        g, expanded = stack.pop()
        if g in seen:
            continue
        if expanded:
            seen.add(g)
            order.append(g)
            continue
        stack.append((g, True))
        for c in reversed(children(g)):
            if c not in seen:
                stack.append((c, False))
    return order


def count_subformulas(f: Formula) -> int:
    return len(subformulas(f))


def node_count(f: Formula) -> int:
    return 1 + sum(node_count(c) for c in children(f))


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(->)|([|&!()\[\]])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise CTLSyntaxError(f"unexpected character {text[bad]!r}", bad)
        tok = m.group(1) or m.group(2) or m.group(3)
        toks.append((tok, m.start(m.lastindex)))
        pos = m.end()
    toks.append(("<end>", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def advance(self) -> str:
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            raise CTLSyntaxError(f"expected {tok!r}, found {self.peek()!r}", self.pos())
        self.advance()

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.advance()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() in ("|", "or"):
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek() in ("&", "and"):
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in ("!", "not"):
            self.advance()
            return Not(self.unary())
        if tok in UNARY:
            self.advance()
            return UNARY[tok](self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok, pos = self.toks[self.i]
        if tok == "true":
            self.advance()
            return TrueConst()
        if tok == "false":
            self.advance()
            return FalseConst()
        if tok == "(":
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if tok in ("A", "E"):
            self.advance()
            if self.peek() != "[":
                raise CTLSyntaxError(f"expected '[' after {tok!r}", self.pos())
            self.advance()
            left = self.formula()
            if self.peek() != "U":
                raise CTLSyntaxError(f"expected 'U' in {tok}[...U...], found {self.peek()!r}", self.pos())
            self.advance()
            right = self.formula()
            if self.peek() != "]":
                raise CTLSyntaxError(f"unbalanced bracket: expected ']', found {self.peek()!r}", self.pos())
            self.advance()
            return AU(left, right) if tok == "A" else EU(left, right)
        if tok == "<end>":
            raise CTLSyntaxError("unexpected end of formula", pos)
        if tok in RESERVED or not tok[0].isalpha() and tok[0] != "_":
            raise CTLSyntaxError(f"unexpected token {tok!r}", pos)
        self.advance()
        return Atom(tok)


def parse_ctl(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "<end>":
        raise CTLSyntaxError(f"unexpected token {p.peek()!r}", p.pos())
    return f


# ---------------------------------------------------------------- printing

_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = range(1, 6)


def _prec(f: Formula) -> int:
    if isinstance(f, Implies):
        return _PREC_IMPLIES
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, UNARY_TYPES):
        return _PREC_UNARY
    return _PREC_ATOM


def _wrap(f: Formula, min_prec: int) -> str:
    s = format_ctl(f)
    return s if _prec(f) >= min_prec else f"({s})"


def format_ctl(f: Formula) -> str:
    """Print with minimal parentheses; ``parse_ctl(format_ctl(f)) == f``."""
    if isinstance(f, TrueConst):
        return "true"
    if isinstance(f, FalseConst):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _wrap(f.arg, _PREC_UNARY)
    if isinstance(f, UNARY_TYPES):
        op = type(f).__name__
        if _prec(f.arg) >= _PREC_UNARY:
            return f"{op} {format_ctl(f.arg)}"
        return f"{op}({format_ctl(f.arg)})"
    if isinstance(f, And):
        return f"{_wrap(f.left, _PREC_AND)} & {_wrap(f.right, _PREC_UNARY)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, _PREC_OR)} | {_wrap(f.right, _PREC_AND)}"
    if isinstance(f, Implies):
        return f"{_wrap(f.left, _PREC_OR)} -> {_wrap(f.right, _PREC_IMPLIES)}"
    if isinstance(f, (AU, EU)):
        q = "A" if isinstance(f, AU) else "E"
        return f"{q}[{format_ctl(f.left)} U {format_ctl(f.right)}]"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------- normalization

def _neg(f: Formula) -> Formula:
    return f.arg if isinstance(f, Not) else Not(f)


def _or(a: Formula, b: Formula) -> Formula:
    return _neg(And(_neg(a), _neg(b)))


def normalize(f: Formula) -> Formula:
    """Rewrite into the operator base the labeling algorithm understands.

    Double negations introduced by the rewrites are cancelled on the fly.
    """
    memo: dict[Formula, Formula] = {}
    for g in subformulas(f):
        memo[g] = _rewrite(g, memo)
    return memo[f]


def _rewrite(g: Formula, m: dict[Formula, Formula]) -> Formula:
    if isinstance(g, (TrueConst, Atom)):
        return g
    if isinstance(g, FalseConst):
        return Not(TrueConst())
    if isinstance(g, Not):
        return _neg(m[g.arg])
    if isinstance(g, And):
        return And(m[g.left], m[g.right])
    if isinstance(g, Or):
        return _or(m[g.left], m[g.right])
    if isinstance(g, Implies):
        return _neg(And(m[g.left], _neg(m[g.right])))
    if isinstance(g, EX):
        return EX(m[g.arg])
    if isinstance(g, AX):
        return _neg(EX(_neg(m[g.arg])))
    if isinstance(g, EF):
        return EU(TrueConst(), m[g.arg])
    if isinstance(g, AF):
        return _neg(EG(_neg(m[g.arg])))
    if isinstance(g, EG):
        return EG(m[g.arg])
    if isinstance(g, AG):
        return _neg(EU(TrueConst(), _neg(m[g.arg])))
    if isinstance(g, EU):
        return EU(m[g.left], m[g.right])
    if isinstance(g, AU):
        nf, ng = _neg(m[g.left]), _neg(m[g.right])
        return _neg(_or(EU(ng, And(nf, ng)), EG(ng)))
    raise TypeError(f"not a formula: {g!r}")


def is_normalized(f: Formula) -> bool:
    return all(isinstance(g, BASE_TYPES) for g in subformulas(f))


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal with repetition (no deduplication)."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))
