import copy

import pytest
from hypothesis import given, settings

from ctlmc.corpus import entry
from ctlmc.kripke import (
    KripkeStructure, KripkeSyntaxError, complete_sinks, parse_kripke, serialize_kripke,
    size_metrics, validate,
)

from strategies import kripke_structures

TWO_STATE = "state s0 p\nstate s1 q\ntrans s0 s1\ntrans s1 s1\ninit s0"


def chain(n=2, loop_last=False):
    states = tuple(f"s{i}" for i in range(n))
    trans = list(zip(states, states[1:]))
    if loop_last:
        trans.append((states[-1], states[-1]))
    return KripkeStructure(states, tuple(trans), {}, "s0")


def test_parse_two_state():
    ks = parse_kripke(TWO_STATE)
    assert ks.states == ("s0", "s1")
    assert set(ks.transitions) == {("s0", "s1"), ("s1", "s1")}
    assert ks.start == "s0"
    assert ks.labeling == {"s0": {"p"}, "s1": {"q"}}


def test_parse_minimal_document_flags_totality():
    ks = parse_kripke("state s0\ninit s0")
    assert size_metrics(ks) == (1, 0)
    assert validate(ks).totality_violations == ["s0"]


def test_comments_blank_lines_and_any_directive_order():
    ks = parse_kripke("# model\n\nstate a x  # trailing\ninit a\nstate b\ntrans a b\n")
    assert ks.start == "a"
    assert ks.transitions == (("a", "b"),)


@pytest.mark.parametrize("text, line", [
    ("state s0\nstate s0\ninit s0", 2),
    ("state s0\ntrans s0 s1\ninit s0", 2),
    ("state s0", 1),
    ("state s0\ninit s0\ninit s0", 3),
    ("state s0\ntrans s0 s0\ntrans s0 s0\ninit s0", 3),
    ("state s0\nfoo s0\ninit s0", 2),
    ("state 0bad\ninit 0bad", 1),
    ("state s0\ntrans s0\ninit s0", 2),
    ("trans s0 s0\nstate s0\ninit s0", 1),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(KripkeSyntaxError) as exc:
        parse_kripke(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_column_reported():
    with pytest.raises(KripkeSyntaxError) as exc:
        parse_kripke("state s0\ntrans   s0 zz\ninit s0")
    assert exc.value.column == 12


def test_validate_chain_sink():
    assert validate(chain(2)).totality_violations == ["s1"]


def test_validate_total_structure_clean():
    report = validate(parse_kripke(TWO_STATE))
    assert report.ok
    assert report.totality_violations == []
    assert report.warnings == []
    assert report.lines() == ["no issues"]


def test_validate_unreachable_warning():
    ks = KripkeStructure(("s0", "s1", "s2"), (("s0", "s1"), ("s1", "s0"), ("s2", "s0")), {}, "s0")
    report = validate(ks)
    assert report.ok
    assert [m for _, m, _ in report.warnings] == ["unreachable: s2"]


def test_validate_unused_proposition_warning():
    report = validate(parse_kripke(TWO_STATE), ["p", "zz"])
    assert [m for _, m, _ in report.warnings] == ["proposition labels no state: zz"]


def test_validate_programmatic_errors():
    ks = KripkeStructure(("a",), (("a", "b"),), {}, "c")
    codes = {c for c, _, _ in validate(ks).errors}
    assert codes == {"undeclared", "bad-init"}


def test_complete_sinks_chain():
    ks = complete_sinks(chain(2))
    assert set(ks.transitions) == {("s0", "s1"), ("s1", "s1")}
    assert validate(ks).totality_violations == []


def test_complete_sinks_identity_on_total():
    ks = parse_kripke(TWO_STATE)
    assert complete_sinks(ks) == ks


def test_complete_sinks_two_sinks():
    ks = KripkeStructure(("a", "b", "c"), (("a", "b"), ("a", "c")), {}, "a")
    done = complete_sinks(ks)
    assert size_metrics(done)[1] == size_metrics(ks)[1] + 2
    assert {("b", "b"), ("c", "c")} <= set(done.transitions)


def test_size_metrics_two_state():
    assert size_metrics(parse_kripke(TWO_STATE)) == (2, 2)


@pytest.mark.parametrize("label, total", [("one_interleaving", 21), ("workflow_diagram", 274)])
def test_size_metrics_corpus(label, total):
    assert sum(size_metrics(parse_kripke(entry(label).kripke.read_text()))) == total


@given(kripke_structures())
def test_roundtrip(ks):
    assert parse_kripke(serialize_kripke(ks)) == ks


@given(kripke_structures())
def test_complete_sinks_idempotent_and_counts(ks):
    once = complete_sinks(ks)
    assert complete_sinks(once) == once
    assert size_metrics(once)[1] == size_metrics(ks)[1] + len(validate(ks).totality_violations)
    assert once.is_total()


@settings(max_examples=50)
@given(kripke_structures())
def test_validate_does_not_mutate(ks):
    before = copy.deepcopy((ks.states, ks.transitions, dict(ks.labeling), ks.start))
    validate(ks)
    assert (ks.states, ks.transitions, dict(ks.labeling), ks.start) == before
