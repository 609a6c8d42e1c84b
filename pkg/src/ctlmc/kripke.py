"""Kripke structures: the value type, the ``.kripke`` text format, validation
and sink completion.

Text format, one directive per line (``#`` starts a comment)::

    state s0 p
    state s1 q
    trans s0 s1
    trans s1 s1
    init s0
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class KripkeSyntaxError(ValueError):
    """Malformed ``.kripke`` document. Carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True, eq=True)
class KripkeStructure:
    """A finite transition graph with proposition labels and one start state.

    Declaration order of states and transitions is kept so that
    serialization is byte-stable.
    """

    states: tuple[str, ...]
    transitions: tuple[tuple[str, str], ...]
    labeling: Mapping[str, frozenset[str]]
    start: str

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "transitions", tuple((a, b) for a, b in self.transitions))
        labels = {s: frozenset(self.labeling.get(s, ())) for s in self.states}
        for s, props in self.labeling.items():
            labels.setdefault(s, frozenset(props))
        object.__setattr__(self, "labeling", labels)

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def successors(self) -> dict[str, list[str]]:
        succ: dict[str, list[str]] = {s: [] for s in self.states}
        for a, b in self.transitions:
            succ.setdefault(a, []).append(b)
        return succ

    @cached_property
    def propositions(self) -> frozenset[str]:
        return frozenset().union(*self.labeling.values()) if self.labeling else frozenset()

    def sinks(self) -> list[str]:
        return [s for s in self.states if not self.successors.get(s)]

    def is_total(self) -> bool:
        return not self.sinks()


@dataclass
class ValidationReport:
    errors: list[tuple[str, str, str]] = field(default_factory=list)
    warnings: list[tuple[str, str, str]] = field(default_factory=list)
    totality_violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def lines(self) -> list[str]:
        out = [f"error[{code}]: {msg}" for code, msg, _ in self.errors]
        out += [f"warning[{code}]: {msg}" for code, msg, _ in self.warnings]
        out += [f"warning[sink]: no successor: {s}" for s in self.totality_violations]
        return out or ["no issues"]


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_kripke(text: str) -> KripkeStructure:
    states: list[str] = []
    labels: dict[str, frozenset[str]] = {}
    transitions: list[tuple[str, str]] = []
    seen_trans: set[tuple[str, str]] = set()
    init: list[tuple[str, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(_strip_comment(raw))
        if not toks:
            continue
        for tok, col in toks:
            if not NAME_RE.match(tok):
                raise KripkeSyntaxError(f"invalid token {tok!r}", lineno, col)
        kw, args = toks[0][0], toks[1:]

        def declared(tok: str, col: int) -> str:
            if tok not in labels:
                raise KripkeSyntaxError(f"undeclared state {tok!r}", lineno, col)
            return tok

        if kw == "state":
            if not args:
                raise KripkeSyntaxError("'state' needs a name", lineno, len(raw) + 1)
            name, col = args[0]
            if name in labels:
                raise KripkeSyntaxError(f"duplicate state {name!r}", lineno, col)
            states.append(name)
            labels[name] = frozenset(p for p, _ in args[1:])
        elif kw == "trans":
            if len(args) != 2:
                raise KripkeSyntaxError("'trans' takes exactly two states", lineno, toks[0][1])
            pair = (declared(*args[0]), declared(*args[1]))
            if pair in seen_trans:
                raise KripkeSyntaxError(f"duplicate transition {pair[0]} -> {pair[1]}", lineno, args[0][1])
            seen_trans.add(pair)
            transitions.append(pair)
        elif kw == "init":
            if len(args) != 1:
                raise KripkeSyntaxError("'init' takes exactly one state", lineno, toks[0][1])
            if init:
                raise KripkeSyntaxError("multiple 'init' lines", lineno, toks[0][1])
            init.append((declared(*args[0]), lineno))
        else:
            raise KripkeSyntaxError(f"unknown directive {kw!r}", lineno, toks[0][1])

    if not init:
        raise KripkeSyntaxError("missing 'init' line", max(1, len(text.splitlines())))
    return KripkeStructure(tuple(states), tuple(transitions), labels, init[0][0])


def serialize_kripke(ks: KripkeStructure) -> str:
    out = []
    for s in ks.states:
        props = sorted(ks.labeling.get(s, ()))
        out.append(" ".join(["state", s, *props]))
    out.extend(f"trans {a} {b}" for a, b in ks.transitions)
    out.append(f"init {ks.start}")
    return "\n".join(out) + "\n"


def validate(ks: KripkeStructure, propositions: Iterable[str] = ()) -> ValidationReport:
    """Check well-formedness and collect totality and reachability findings.

    ``propositions`` are names the caller intends to use (for example the
    atoms of a property); any that label no state are reported as warnings.
    """
    report = ValidationReport()
    declared: set[str] = set()
    for s in ks.states:
        if not NAME_RE.match(s):
            report.errors.append(("bad-name", f"invalid state name {s!r}", s))
        if s in declared:
            report.errors.append(("duplicate-state", f"duplicate state {s}", s))
        declared.add(s)
    for s, props in ks.labeling.items():
        if s not in declared:
            report.errors.append(("label-undeclared", f"labeling for undeclared state {s}", s))
        for p in props:
            if not NAME_RE.match(p):
                report.errors.append(("bad-name", f"invalid proposition {p!r} on {s}", p))
    seen: set[tuple[str, str]] = set()
    for a, b in ks.transitions:
        for end in (a, b):
            if end not in declared:
                report.errors.append(("undeclared", f"transition {a} -> {b} references undeclared state {end}", end))
        if (a, b) in seen:
            report.errors.append(("duplicate-transition", f"duplicate transition {a} -> {b}", f"{a}->{b}"))
        seen.add((a, b))
    if ks.start not in declared:
        report.errors.append(("bad-init", f"start state {ks.start} is not declared", ks.start))

    report.totality_violations = [s for s in ks.states if not ks.successors.get(s)]

    if ks.start in declared:
        reached = {ks.start}
        queue = deque([ks.start])
        while queue:
            for t in ks.successors.get(queue.popleft(), ()):
                if t not in reached:
                    reached.add(t)
                    queue.append(t)
        for s in ks.states:
            if s not in reached:
                report.warnings.append(("unreachable", f"unreachable: {s}", s))

    used = ks.propositions
    for p in sorted(set(propositions)):
        if p not in used:
            report.warnings.append(("unused-prop", f"proposition labels no state: {p}", p))
    return report


def complete_sinks(ks: KripkeStructure) -> KripkeStructure:
    """Give every state without a successor a self-loop."""
    sinks = ks.sinks()
    if not sinks:
        return ks
    return KripkeStructure(ks.states, ks.transitions + tuple((s, s) for s in sinks), ks.labeling, ks.start)


def size_metrics(ks: KripkeStructure) -> tuple[int, int]:
    return len(ks.states), len(ks.transitions)
