"""Random structures and formulas, as hypothesis strategies and as plain
seeded generators for the fixed-count acceptance loops."""

import random

from hypothesis import strategies as st

from ctlmc.ctl import (
    AF, AG, AU, AX, EF, EG, EU, EX, And, Atom, FalseConst, Implies, Not, Or, TrueConst,
)
from ctlmc.kripke import KripkeStructure

PROPS = ("p", "q", "r")
UNARY_OPS = (Not, AX, EX, AF, EF, AG, EG)
BINARY_OPS = (And, Or, Implies, AU, EU)


def random_structure(rng: random.Random, max_states: int = 8, props=PROPS, total: bool = True) -> KripkeStructure:
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    trans = []
    for s in states:
        succ = rng.sample(states, rng.randint(1 if total else 0, min(n, 3)))
        trans.extend((s, t) for t in succ)
    labels = {s: frozenset(p for p in props if rng.random() < 0.4) for s in states}
    return KripkeStructure(tuple(states), tuple(trans), labels, rng.choice(states))


def random_formula(rng: random.Random, depth: int = 4, props=PROPS):
    if depth == 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.08:
            return TrueConst()
        if roll < 0.16:
            return FalseConst()
        return Atom(rng.choice(props))
    if rng.random() < 0.5:
        return rng.choice(UNARY_OPS)(random_formula(rng, depth - 1, props))
    op = rng.choice(BINARY_OPS)
    return op(random_formula(rng, depth - 1, props), random_formula(rng, depth - 1, props))


names = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,6}", fullmatch=True)
atom_names = names.filter(
    lambda s: s not in {"true", "false", "and", "or", "not", "A", "E", "U",
                        "AX", "EX", "AF", "EF", "AG", "EG"})


@st.composite
def kripke_structures(draw, max_states: int = 8, total: bool = False, props=None):
    state_names = draw(st.lists(names, min_size=1, max_size=max_states, unique=True))
    prop_pool = props or draw(st.lists(names, min_size=1, max_size=4, unique=True))
    pairs = [(a, b) for a in state_names for b in state_names]
    trans = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * len(state_names)))
    if total:
        have = {a for a, _ in trans}
        for s in state_names:
            if s not in have:
                trans.append((s, draw(st.sampled_from(state_names))))
    labels = {s: frozenset(draw(st.lists(st.sampled_from(prop_pool), unique=True, max_size=3)))
              for s in state_names}
    return KripkeStructure(tuple(state_names), tuple(trans), labels, draw(st.sampled_from(state_names)))


def formulas(max_depth: int = 6, atoms=atom_names):
    leaves = st.one_of(st.just(TrueConst()), st.just(FalseConst()), atoms.map(Atom))

    def extend(children):
        return st.one_of(
            st.tuples(st.sampled_from(UNARY_OPS), children).map(lambda t: t[0](t[1])),
            st.tuples(st.sampled_from(BINARY_OPS), children, children).map(lambda t: t[0](t[1], t[2])),
        )

    return _bounded(leaves, extend, max_depth)


def _bounded(leaves, extend, depth):
    if depth == 0:
        return leaves
    return st.one_of(leaves, extend(_bounded(leaves, extend, depth - 1)))
