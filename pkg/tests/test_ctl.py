import copy
import pickle
import random
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings

from ctlmc.checker import check_oracle
from ctlmc.ctl import (
    AF, AG, AU, EG, EU, EX, And, Atom, CTLSyntaxError, Implies, Not, Or, TrueConst,
    count_subformulas, format_ctl, is_normalized, node_count, normalize, parse_ctl, walk,
)

from strategies import formulas, random_formula, random_structure

p, q, gs, ab, hb = (Atom(x) for x in ("p", "q", "gs", "ab", "hb"))


@pytest.mark.parametrize("text, tree", [
    ("AG(gs -> AF(ab or hb))", AG(Implies(gs, AF(Or(ab, hb))))),
    ("p", p),
    ("A[p U q]", AU(p, q)),
    ("E[p U q]", EU(p, q)),
    ("a -> b -> c", Implies(Atom("a"), Implies(Atom("b"), Atom("c")))),
    ("a | b & c", Or(Atom("a"), And(Atom("b"), Atom("c")))),
    ("a or b and c", Or(Atom("a"), And(Atom("b"), Atom("c")))),
    ("not p and !q", And(Not(p), Not(q))),
    ("AF p & q", And(AF(p), q)),
    ("a | b | c", Or(Or(Atom("a"), Atom("b")), Atom("c"))),
    ("EX EX true", EX(EX(TrueConst()))),
    ("AFp", Atom("AFp")),
])
def test_parse(text, tree):
    assert parse_ctl(text) == tree


@pytest.mark.parametrize("text", [
    "p ->", "(p", "A[p U q", "A[p q]", "E p", "p q", "AG", "p → q", "p && q", "U", "",
])
def test_parse_errors(text):
    with pytest.raises(CTLSyntaxError):
        parse_ctl(text)


def test_error_position():
    with pytest.raises(CTLSyntaxError) as exc:
        parse_ctl("AG(p -> )")
    assert exc.value.position == 8


def test_count_subformulas_examples():
    assert count_subformulas(p) == 1
    assert count_subformulas(parse_ctl("AG(gs -> AF(ab or hb))")) == 7
    assert count_subformulas(parse_ctl("p and p")) == 2


@given(formulas(max_depth=5))
def test_count_matches_brute_force(f):
    every = list(walk(f))
    assert count_subformulas(f) == len(set(every))
    assert count_subformulas(f) <= node_count(f) == len(every)


def test_format_examples():
    assert format_ctl(p) == "p"
    assert format_ctl(Or(Atom("a"), Atom("b"))) == "a | b"
    assert format_ctl(AG(Implies(gs, AF(Atom("vi1"))))) == "AG(gs -> AF vi1)"


@settings(max_examples=300)
@given(formulas(max_depth=6))
def test_format_roundtrip(f):
    assert parse_ctl(format_ctl(f)) == f


def test_normalize_examples():
    assert normalize(AF(p)) == Not(EG(Not(p)))
    assert normalize(EX(p)) == EX(p)
    assert normalize(AG(p)) == Not(EU(TrueConst(), Not(p)))


@given(formulas(max_depth=5))
def test_normalize_output_base(f):
    nf = normalize(f)
    assert is_normalized(nf)
    assert normalize(nf) == nf


def test_normalize_preserves_semantics_random():
    rng = random.Random(7)
    for _ in range(300):
        ks = random_structure(rng, max_states=6)
        f = random_formula(rng, depth=4)
        nf = normalize(f)
        for s in ks.states:
            assert check_oracle(ks, f, s) == check_oracle(ks, nf, s), (format_ctl(f), s)


def test_equal_formulas_are_shared():
    a, b = parse_ctl("AG(p -> AF q)"), parse_ctl("AG (p -> AF(q))")
    assert a is b and hash(a) == hash(b)
    assert copy.deepcopy(a) is a and pickle.loads(pickle.dumps(a)) is a
    assert And(p, q) is not And(q, p)


def test_interning_across_threads():
    with ThreadPoolExecutor(8) as pool:
        built = list(pool.map(lambda i: parse_ctl(f"E[x{i % 4} U AG(y -> EX z)]"), range(400)))
    assert len({id(f) for f in built}) == 4
