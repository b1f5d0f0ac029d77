from __future__ import annotations

import pytest

from treewadge import (
    Alphabet,
    FinitePrefix,
    FormatError,
    RegularTree,
    TreeAutomaton,
    parse_automaton,
    parse_regular_tree,
    serialize_automaton,
    serialize_regular_tree,
    unfold,
)

AB = Alphabet(("a", "b"))


def small_automaton():
    return TreeAutomaton(AB, 2, 0,
                         ((0, "a", 0, 1), (1, "a", 1, 1), (1, "b", 0, 0)),
                         (0, 1))


def test_alphabet_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(())
    assert "a" in AB and "c" not in AB
    assert list(AB) == ["a", "b"]
    assert AB.index("b") == 1


def test_automaton_validation():
    with pytest.raises(ValueError):
        TreeAutomaton(AB, 1, 1, (), (0,))  # initial out of range
    with pytest.raises(ValueError):
        TreeAutomaton(AB, 2, 0, (), (0,))  # missing priority
    with pytest.raises(ValueError):
        TreeAutomaton(AB, 1, 0, ((0, "c", 0, 0),), (0,))  # unknown letter
    with pytest.raises(ValueError):
        TreeAutomaton(AB, 1, 0, ((0, "a", 0, 1),), (0,))  # unknown state
    with pytest.raises(ValueError):
        TreeAutomaton(AB, 1, 0, (), (-1,))  # negative priority


def test_transitions_are_canonical_and_indexed():
    aut = TreeAutomaton(AB, 2, 0,
                        ((1, "b", 0, 0), (0, "a", 0, 1), (1, "b", 0, 0)),
                        (0, 1))
    assert aut.transitions == ((0, "a", 0, 1), (1, "b", 0, 0))
    assert aut.transitions_from(1) == ((1, "b", 0, 0),)
    assert aut.transitions_from(1, "a") == ()
    assert aut.with_initial(1).initial == 1
    assert aut.with_initial(0) is aut
    assert aut.priority_values == (0, 1)


def test_automaton_round_trip():
    aut = small_automaton()
    assert parse_automaton(serialize_automaton(aut)) == aut


def test_parse_automaton_reports_line_numbers():
    text = "alphabet: a b\nstates: 1\ninitial: 0\npriority: 0 0\ntrans: 0 c 0 0\n"
    with pytest.raises(FormatError) as err:
        parse_automaton(text)
    assert err.value.line == 5


@pytest.mark.parametrize("mutation", [
    "alphabet: a a",
    "states: x",
    "priority: 0 1",
    "initial: 7",
    "unknown: 1",
    "no colon here",
    "trans: 0 a 0",
])
def test_parse_automaton_rejects_malformed_sections(mutation):
    text = f"alphabet: a b\nstates: 1\ninitial: 0\npriority: 0\n{mutation}\n"
    with pytest.raises(FormatError):
        parse_automaton(text)


def test_parse_automaton_requires_all_sections():
    with pytest.raises(FormatError):
        parse_automaton("alphabet: a\nstates: 1\ninitial: 0\n")
    with pytest.raises(FormatError):
        parse_automaton("states: 1\ninitial: 0\npriority: 0 0\n")


def test_regular_tree_unfolding_and_round_trip():
    rt = RegularTree(("a", "b"), ((1, 0), (1, 1)))
    assert rt.n_vertices == 2
    assert rt.vertex_at("") == 0
    assert rt.vertex_at("L") == 1
    assert rt.vertex_at("LR") == 1
    assert rt.vertex_at("R") == 0
    assert parse_regular_tree(serialize_regular_tree(rt)) == rt


def test_regular_tree_requires_reachability():
    with pytest.raises(ValueError):
        RegularTree(("a", "b"), ((0, 0), (1, 1)))


def test_unfold_produces_matching_prefix():
    rt = RegularTree(("a", "b"), ((1, 0), (1, 1)))
    prefix = unfold(rt, 2)
    assert sorted(prefix.domain) == ["", "L", "R"]
    assert prefix.label("L") == "b"
    assert prefix.matches_tree(rt)
    deeper = unfold(rt, 3)
    assert prefix.is_prefix_of(deeper)
    assert not deeper.is_prefix_of(prefix)


def test_prefix_validation():
    with pytest.raises(ValueError):
        FinitePrefix((("L", "a"),))  # not prefix closed
    with pytest.raises(ValueError):
        FinitePrefix((("", "a"), ("", "b")))  # duplicate node
    with pytest.raises(ValueError):
        FinitePrefix((("", "a"), ("X", "b")))  # bad direction
