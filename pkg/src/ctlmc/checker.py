"""Explicit-state CTL model checking by backward labeling.

Every distinct subformula of a normalized property is labeled once, children
before parents. EX is a backward image, E[f U g] a backward breadth-first
search from the g-states through f-states, and EG f a backward search from
the nontrivial strongly connected components of the f-restricted graph. Each
step touches every state and transition at most a constant number of times,
so the whole run is O(|f| * (|s| + |r|)).
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .ctl import (
    AF, AG, AU, AX, EF, EG, EU, EX, And, Atom, FalseConst, Formula, Implies,
    Not, Or, TrueConst, is_normalized, normalize, subformulas,
)
from .kripke import KripkeStructure

LabelMap = dict[Formula, frozenset[str]]

ORACLE_MAX_STATES = 12


class CheckError(ValueError):
    pass


@dataclass
class Verdict:
    holds: bool
    queried_state: str
    sat_count: int
    elapsed_ticks: int
    labels: Optional[LabelMap] = None


class _Graph:
    """Integer-indexed view of a structure with predecessor lists."""

    __slots__ = ("names", "index", "succ", "pred", "n")

    def __init__(self, ks: KripkeStructure):
        self.names = ks.states
        self.index = {s: i for i, s in enumerate(ks.states)}
        self.n = len(ks.states)
        self.succ: list[list[int]] = [[] for _ in range(self.n)]
        self.pred: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in ks.transitions:
            i, j = self.index[a], self.index[b]
            self.succ[i].append(j)
            self.pred[j].append(i)


def _graph(ks: KripkeStructure) -> _Graph:
    g = ks.__dict__.get("_ctl_graph")
    if g is None:
        g = _Graph(ks)
        ks.__dict__["_ctl_graph"] = g
    return g


def _backward_reach(g: _Graph, seeds: set[int], within: set[int]) -> set[int]:
    """States in ``within`` that reach ``seeds`` through ``within``-states."""
    reached = set(seeds)
    queue = deque(seeds)
    pred = g.pred
    while queue:
        for p in pred[queue.popleft()]:
            if p not in reached and p in within:
                reached.add(p)
                queue.append(p)
    return reached


def _nontrivial_scc_states(g: _Graph, within: set[int]) -> set[int]:
    """States of ``within`` lying on a cycle of the restricted graph.

    Iterative Tarjan; a singleton component counts only with a self-loop.
    """
    succ = g.succ
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    result: set[int] = set()
    counter = 0
    for root in within:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in within:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in succ[v]:
                    result.update(comp)
    return result


def _label_indices(ks: KripkeStructure, f: Formula) -> dict[Formula, set[int]]:
    if not ks.is_total():
        raise CheckError(f"transition relation is not total; sinks: {', '.join(ks.sinks())}")
    g = _graph(ks)
    everything = set(range(g.n))
    sat: dict[Formula, set[int]] = {}
    for sub in subformulas(f):
        if isinstance(sub, TrueConst):
            s = everything
        elif isinstance(sub, Atom):
            s = {i for i, name in enumerate(g.names) if sub.name in ks.labeling[name]}
        elif isinstance(sub, Not):
            s = everything - sat[sub.arg]
        elif isinstance(sub, And):
            s = sat[sub.left] & sat[sub.right]
        elif isinstance(sub, EX):
            pred = g.pred
            s = {p for t in sat[sub.arg] for p in pred[t]}
        elif isinstance(sub, EU):
            s = _backward_reach(g, sat[sub.right], sat[sub.left])
        elif isinstance(sub, EG):
            within = sat[sub.arg]
            s = _backward_reach(g, _nontrivial_scc_states(g, within), within)
        else:
            raise CheckError(f"formula not in normalized base: {type(sub).__name__}")
        sat[sub] = s
    return sat


def label(ks: KripkeStructure, f: Formula) -> LabelMap:
    """Satisfying state sets for every distinct subformula of normalized ``f``."""
    if not is_normalized(f):
        raise CheckError("formula not in normalized base; call normalize() first")
    names = ks.states
    return {sub: frozenset(names[i] for i in s) for sub, s in _label_indices(ks, f).items()}


def check(ks: KripkeStructure, f: Formula, at: Optional[str] = None,
          with_labels: bool = False) -> Verdict:
    """Decide whether ``f`` holds at ``at`` (default: the start state).

    ``elapsed_ticks`` covers normalization and labeling only, in 100 ns ticks.
    """
    at = ks.start if at is None else at
    if at not in ks.labeling:
        raise CheckError(f"unknown state {at!r}")
    t0 = time.perf_counter_ns()
    nf = normalize(f)
    sat = _label_indices(ks, nf)
    elapsed = (time.perf_counter_ns() - t0) // 100
    top = sat[nf]
    holds = _graph(ks).index[at] in top
    labels = None
    if with_labels:
        labels = {sub: frozenset(ks.states[i] for i in s) for sub, s in sat.items()}
    return Verdict(holds, at, len(top), elapsed, labels)


# ------------------------------------------------------------------ oracle

def check_oracle(ks: KripkeStructure, f: Formula, at: Optional[str] = None) -> bool:
    """Naive fixpoint evaluation of ``f`` directly over all CTL operators.

    Shares no traversal code with :func:`check`; meant for small structures.
    """
    if len(ks.states) > ORACLE_MAX_STATES:
        raise CheckError(f"oracle limited to {ORACLE_MAX_STATES} states, got {len(ks.states)}")
    at = ks.start if at is None else at
    if at not in ks.states:
        raise CheckError(f"unknown state {at!r}")
    states = frozenset(ks.states)
    post = {s: frozenset(b for a, b in ks.transitions if a == s) for s in states}
    if any(not v for v in post.values()):
        raise CheckError("transition relation is not total")
    return at in _oracle_eval(f, states, post, ks.labeling)


def _oracle_eval(f, states, post, labeling) -> frozenset:
    def ev(g):
        return _oracle_eval(g, states, post, labeling)

    def ex(z):
        return frozenset(s for s in states if post[s] & z)

    def ax(z):
        return frozenset(s for s in states if post[s] <= z)

    def lfp(step):
        z = frozenset()
        while True:
            nz = step(z)
            if nz == z:
                return z
            z = nz

    def gfp(step):
        z = states
        while True:
            nz = step(z)
            if nz == z:
                return z
            z = nz

    if isinstance(f, TrueConst):
        return states
    if isinstance(f, FalseConst):
        return frozenset()
    if isinstance(f, Atom):
        return frozenset(s for s in states if f.name in labeling[s])
    if isinstance(f, Not):
        return states - ev(f.arg)
    if isinstance(f, And):
        return ev(f.left) & ev(f.right)
    if isinstance(f, Or):
        return ev(f.left) | ev(f.right)
    if isinstance(f, Implies):
        return (states - ev(f.left)) | ev(f.right)
    if isinstance(f, EX):
        return ex(ev(f.arg))
    if isinstance(f, AX):
        return ax(ev(f.arg))
    if isinstance(f, EF):
        a = ev(f.arg)
        return lfp(lambda z: a | ex(z))
    if isinstance(f, AF):
        a = ev(f.arg)
        return lfp(lambda z: a | ax(z))
    if isinstance(f, EG):
        a = ev(f.arg)
        return gfp(lambda z: a & ex(z))
    if isinstance(f, AG):
        a = ev(f.arg)
        return gfp(lambda z: a & ax(z))
    if isinstance(f, EU):
        a, b = ev(f.left), ev(f.right)
        return lfp(lambda z: b | (a & ex(z)))
    if isinstance(f, AU):
        a, b = ev(f.left), ev(f.right)
        return lfp(lambda z: b | (a & ax(z)))
    raise TypeError(f"not a formula: {f!r}")
