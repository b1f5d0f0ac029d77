from __future__ import annotations

import itertools

import pytest

from treewadge.complement import complement
from treewadge.model import FinitePrefix
from treewadge.ops import accepts_regular_tree, empty_automaton
from treewadge.typegames import (
    alternation,
    difference_level,
    extract_round_witness,
    wins_H,
    wins_H_inout,
    wins_H_types,
    wins_V_types,
)

FIXTURE_NAMES = ("root_a", "contains_b", "inf_a", "prop_p")


def test_alternation():
    assert alternation("") == 0
    assert alternation("aaa") == 1
    assert alternation("aabba") == 3
    assert alternation([1, 2, 2, 1]) == 3


def test_wins_H_basics(root_a):
    verdict = wins_H([root_a])
    assert verdict.winner == "Alternator"
    assert accepts_regular_tree(root_a, verdict.witness)
    assert wins_H([empty_automaton(root_a.alphabet)]).winner == "Constrainer"
    with pytest.raises(ValueError):
        wins_H([])


def test_inout_games_on_clopen(root_a):
    # a clopen language: Alternator survives one round, never two, since
    # the root letter is already pinned by any prefix
    co = complement(root_a)
    assert wins_H_inout(root_a, co, 1).winner == "Alternator"
    assert wins_H_inout(root_a, co, 2).winner == "Constrainer"
    assert difference_level(root_a, co, 4) == 1


def test_inout_games_on_contains_b(contains_b):
    co = complement(contains_b)
    # the language sits at level 1, its complement at level 2: a tree
    # without b extends any prefix, but a planted b can never be removed
    assert difference_level(contains_b, co, 4) == 1
    assert wins_H_inout(co, contains_b, 2).winner == "Alternator"
    assert wins_H_inout(co, contains_b, 3).winner == "Constrainer"
    assert difference_level(co, contains_b, 4) == 2


def test_inout_games_on_inf_a(inf_a):
    co = complement(inf_a)
    for n in (1, 2, 3, 4):
        assert wins_H_inout(inf_a, co, n).winner == "Alternator"


def refinement_route(pipeline, n):
    """Alternator wins the n-round in/out game exactly when some strictly
    alternating sequence of syntactic tree types lies in the H relation."""
    alg = pipeline.syntactic.algebra
    acc = [h for h in alg.H if h in alg.accepting]
    rej = [h for h in alg.H if h not in alg.accepting]
    pools = [acc if i % 2 == 0 else rej for i in range(n)]
    for seq in itertools.product(*pools):
        if wins_H_types(pipeline.syntactic, seq):
            return True
    return False


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_inout_agrees_with_refinement_route(name, pipelines):
    p = pipelines[name]
    co = complement(p.automaton)
    for n in (1, 2, 3):
        direct = wins_H_inout(p.automaton, co, n).winner == "Alternator"
        assert refinement_route(p, n) == direct


@pytest.mark.parametrize("name", ["root_a", "contains_b", "inf_a"])
def test_letter_removal_closure(name, pipelines):
    # H and V memberships survive removing any letter of the word
    p = pipelines[name]
    alg = p.syntactic.algebra
    for oracle, carrier in ((wins_H_types, alg.H), (wins_V_types, alg.V)):
        for word in itertools.product(carrier, repeat=2):
            if oracle(p.syntactic, word):
                for x in word:
                    assert oracle(p.syntactic, (x,))


@pytest.mark.parametrize("name", ["root_a", "contains_b"])
def test_composition_closure(name, pipelines):
    # pointwise composition laws relating the V and H relations
    p = pipelines[name]
    syn = p.syntactic
    alg = syn.algebra
    v_pairs = [w for w in itertools.product(alg.V, repeat=2)
               if wins_V_types(syn, w)]
    h_pairs = [w for w in itertools.product(alg.H, repeat=2)
               if wins_H_types(syn, w)]
    for v in v_pairs:
        for w in v_pairs:
            composed = tuple(alg.comp(a, b) for a, b in zip(v, w))
            assert wins_V_types(syn, composed)
        for h in h_pairs:
            acted = tuple(alg.app(a, b) for a, b in zip(v, h))
            assert wins_H_types(syn, acted)
        assert wins_H_types(syn, tuple(alg.omega_of(a) for a in v))


def test_round_witness_extraction(root_a):
    prefix = FinitePrefix((("", "a"),))
    tree = extract_round_witness(prefix, root_a)
    assert prefix.matches_tree(tree)
    assert accepts_regular_tree(root_a, tree)
    with pytest.raises(ValueError):
        extract_round_witness(FinitePrefix((("", "b"),)), root_a)


def test_type_sequence_validation(pipelines):
    p = pipelines["root_a"]
    with pytest.raises(ValueError):
        wins_H_types(p.syntactic, [frozenset({99})])
    with pytest.raises(ValueError):
        wins_V_types(p.syntactic, [frozenset({(9, 9, 9)})])
