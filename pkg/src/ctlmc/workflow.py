"""Workflow descriptions and their compilation to Kripke structures.

A workflow is a process graph over plain nodes and concurrent blocks::

    node GS gs
    node AB ab
    block ANN VI ST FU CO
    node QC qc
    edge GS AB
    edge AB ANN
    edge ANN QC
    edge QC ANN
    init GS

Expansion replaces each block of n steps with its n! interleavings, one
linear chain per permutation. The occurrence of step ``VI`` in interleaving k
becomes state ``VI<k>`` labeled ``vi<k>`` and ``vi``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

from .kripke import NAME_RE, KripkeStructure

DEFAULT_MAX_STEPS = 8


class WorkflowSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class WorkflowError(ValueError):
    pass


class InterleavingExplosionError(WorkflowError):
    pass


@dataclass(frozen=True)
class ConcurrentBlock:
    name: str
    steps: tuple[str, ...]

    def base_proposition(self, step: str) -> str:
        return step.lower()


@dataclass
class WorkflowSpec:
    nodes: dict[str, frozenset[str]] = field(default_factory=dict)
    blocks: list[ConcurrentBlock] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)
    start: str = ""

    def block(self, name: str) -> ConcurrentBlock | None:
        return next((b for b in self.blocks if b.name == name), None)


def parse_workflow(text: str) -> WorkflowSpec:
    spec = WorkflowSpec()
    names: set[str] = set()
    seen_edges: set[tuple[str, str]] = set()
    init_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not toks:
            continue
        for tok, col in toks:
            if not NAME_RE.match(tok):
                raise WorkflowSyntaxError(f"invalid token {tok!r}", lineno, col)
        (kw, kcol), args = toks[0], toks[1:]

        def ref(tok: str, col: int) -> str:
            if tok not in names:
                raise WorkflowSyntaxError(f"undeclared node or block {tok!r}", lineno, col)
            return tok

        def fresh(tok: str, col: int) -> str:
            if tok in names:
                raise WorkflowSyntaxError(f"duplicate name {tok!r}", lineno, col)
            names.add(tok)
            return tok

        if kw == "node":
            if not args:
                raise WorkflowSyntaxError("'node' needs a name", lineno, kcol)
            spec.nodes[fresh(*args[0])] = frozenset(p for p, _ in args[1:])
        elif kw == "block":
            if len(args) < 2:
                raise WorkflowSyntaxError("'block' needs a name and at least one step", lineno, kcol)
            steps = [s for s, _ in args[1:]]
            for (s, col) in args[1:]:
                if steps.count(s) > 1:
                    raise WorkflowSyntaxError(f"duplicate step {s!r} in block", lineno, col)
            spec.blocks.append(ConcurrentBlock(fresh(*args[0]), tuple(steps)))
        elif kw == "edge":
            if len(args) != 2:
                raise WorkflowSyntaxError("'edge' takes exactly two names", lineno, kcol)
            e = (ref(*args[0]), ref(*args[1]))
            if e in seen_edges:
                raise WorkflowSyntaxError(f"duplicate edge {e[0]} -> {e[1]}", lineno, args[0][1])
            seen_edges.add(e)
            spec.edges.append(e)
        elif kw == "init":
            if len(args) != 1:
                raise WorkflowSyntaxError("'init' takes exactly one node", lineno, kcol)
            if init_line is not None:
                raise WorkflowSyntaxError("multiple 'init' lines", lineno, kcol)
            name, col = args[0]
            if name not in spec.nodes:
                raise WorkflowSyntaxError(f"'init' must name a declared node, got {name!r}", lineno, col)
            spec.start, init_line = name, lineno
        else:
            raise WorkflowSyntaxError(f"unknown directive {kw!r}", lineno, kcol)
    if init_line is None:
        raise WorkflowSyntaxError("missing 'init' line", max(1, len(text.splitlines())))
    return spec


def serialize_workflow(spec: WorkflowSpec) -> str:
    out = [" ".join(["node", n, *sorted(props)]) for n, props in spec.nodes.items()]
    out += [" ".join(["block", b.name, *b.steps]) for b in spec.blocks]
    out += [f"edge {a} {b}" for a, b in spec.edges]
    out.append(f"init {spec.start}")
    return "\n".join(out) + "\n"


def interleavings(steps, max_steps: int = DEFAULT_MAX_STEPS, force: bool = False) -> list[tuple[str, ...]]:
    """All n! orders of ``steps``, lexicographic in step index."""
    steps = tuple(steps)
    n = len(steps)
    if n < 1:
        raise WorkflowError("a concurrent block needs at least one step")
    if len(set(steps)) != n:
        raise WorkflowError("steps must be distinct")
    if n > max_steps and not force:
        raise InterleavingExplosionError(
            f"{n} concurrent steps give {math.factorial(n)} interleavings "
            f"({math.factorial(n) * n} states); limit is {max_steps}, pass force=True to override")
    return list(itertools.permutations(steps))


@dataclass
class BlockExpansion:
    block: str
    interleavings: int
    states: int
    internal_transitions: int
    entry_transitions: int = 0
    exit_transitions: int = 0


def expand(spec: WorkflowSpec, max_steps: int = DEFAULT_MAX_STEPS, force: bool = False,
           stats: list[BlockExpansion] | None = None) -> KripkeStructure:
    """Compile a workflow into a Kripke structure.

    Edges into a block fan out to the head of every chain; the tail of every
    chain gets an edge to each target leaving the block. If ``stats`` is a
    list it receives one :class:`BlockExpansion` per block.
    """
    labeling: dict[str, frozenset[str]] = dict(spec.nodes)
    states = list(spec.nodes)
    transitions: list[tuple[str, str]] = []
    heads: dict[str, list[str]] = {n: [n] for n in spec.nodes}
    tails: dict[str, list[str]] = {n: [n] for n in spec.nodes}
    per_block: dict[str, BlockExpansion] = {}

    for blk in spec.blocks:
        chains = interleavings(blk.steps, max_steps, force)
        info = BlockExpansion(blk.name, len(chains), 0, 0)
        heads[blk.name], tails[blk.name] = [], []
        for k, order in enumerate(chains, start=1):
            chain = []
            for step in order:
                name = f"{step}{k}"
                if name in labeling:
                    raise WorkflowError(f"expanded state {name} of block {blk.name} collides with an existing name")
                base = blk.base_proposition(step)
                labeling[name] = frozenset((base, f"{base}{k}"))
                states.append(name)
                chain.append(name)
            transitions.extend(zip(chain, chain[1:]))
            heads[blk.name].append(chain[0])
            tails[blk.name].append(chain[-1])
        info.states = len(chains) * len(blk.steps)
        info.internal_transitions = len(chains) * (len(blk.steps) - 1)
        per_block[blk.name] = info

    for a, b in spec.edges:
        new = [(t, h) for t in tails[a] for h in heads[b]]
        transitions.extend(new)
        if a in per_block:
            per_block[a].exit_transitions += len(new)
        if b in per_block and b != a:
            per_block[b].entry_transitions += len(new)

    if stats is not None:
        stats.extend(per_block.values())
    return KripkeStructure(tuple(states), tuple(transitions), labeling, spec.start)
