from __future__ import annotations

import random

import pytest

from treewadge.algebra import (
    UNIT,
    evaluate_type,
    sharp_exponent,
    stage_one_algebra,
    validate_algebra,
)
from treewadge.model import RegularTree
from treewadge.ops import accepts_regular_tree, intersection, is_empty
from treewadge.sampling import random_regular_tree, tree_stream

FIXTURE_NAMES = ("root_a", "contains_b", "inf_a", "prop_p")


def test_sharp_exponent_hand_cases():
    # cyclic group of order 3: the sharp power must be the idempotent
    add3 = lambda a, b: (a + b) % 3
    assert sharp_exponent(add3, (0, 1, 2)) == 3
    # a single idempotent needs no padding
    assert sharp_exponent(lambda a, b: "e", ("e",)) == 1
    # absorbing tail: x, y, z, z, ... stabilizes at the third power
    table = {"x": "y", "y": "z", "z": "z"}
    assert sharp_exponent(lambda a, b: table[a], ("x", "y", "z")) == 3


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_axioms_stage_one_and_syntactic(name, pipelines):
    p = pipelines[name]
    validate_algebra(p.stage_one)
    validate_algebra(p.syntactic.algebra)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_size_bounds(name, pipelines):
    p = pipelines[name]
    q = p.automaton.n_states
    n_prios = len(set(p.automaton.priorities))
    assert len(p.stage_one.H) <= 2 ** q
    assert len(p.stage_one.V) <= 2 ** (q * q * n_prios)
    assert len(p.syntactic.algebra.H) <= len(p.stage_one.H)
    assert len(p.syntactic.algebra.V) <= len(p.stage_one.V)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_recognition_via_types(name, pipelines):
    # t is in L exactly when its stage-one type is accepting
    p = pipelines[name]
    aut = p.automaton
    for rt in tree_stream(aut.alphabet, seed=43, count=120):
        tp = evaluate_type(aut, rt)
        assert tp in p.stage_one.H
        assert (tp in p.stage_one.accepting) == accepts_regular_tree(aut, rt)


def graft(letter, left, right):
    """Regular tree with a fresh root over two regular trees."""
    labels = [letter] + list(left.labels) + list(right.labels)
    off_l, off_r = 1, 1 + len(left.labels)
    succ = [(left.root + off_l, right.root + off_r)]
    succ += [(a + off_l, b + off_l) for (a, b) in left.succ]
    succ += [(a + off_r, b + off_r) for (a, b) in right.succ]
    return RegularTree(tuple(labels), tuple(succ), 0)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_homomorphism_injections_and_act(name, pipelines):
    # type(a(t1, t2)) must match both one-step context table routes
    p = pipelines[name]
    aut = p.automaton
    alg = p.stage_one
    rng = random.Random(47)
    trees = [random_regular_tree(aut.alphabet, rng, max_vertices=5)
             for _ in range(60)]
    for i in range(0, len(trees) - 1, 2):
        t1, t2 = trees[i], trees[i + 1]
        h1, h2 = evaluate_type(aut, t1), evaluate_type(aut, t2)
        for a in aut.alphabet:
            whole = evaluate_type(aut, graft(a, t1, t2))
            assert whole == alg.app(alg.inject_left[(a, h2)], h1)
            assert whole == alg.app(alg.inject_right[(a, h1)], h2)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_homomorphism_compose(name, pipelines):
    # nesting one-step contexts follows the compose table
    p = pipelines[name]
    aut = p.automaton
    alg = p.stage_one
    rng = random.Random(53)
    for _ in range(25):
        s1 = random_regular_tree(aut.alphabet, rng, max_vertices=4)
        s2 = random_regular_tree(aut.alphabet, rng, max_vertices=4)
        hole = random_regular_tree(aut.alphabet, rng, max_vertices=4)
        a = rng.choice(aut.alphabet.letters)
        b = rng.choice(aut.alphabet.letters)
        v1 = alg.inject_left[(a, evaluate_type(aut, s1))]
        v2 = alg.inject_right[(b, evaluate_type(aut, s2))]
        # C1[C2[hole]] with C1 = a(_, s1), C2 = b(s2, _)
        nested = graft(a, graft(b, s2, hole), s1)
        assert evaluate_type(aut, nested) == \
            alg.app(alg.comp(v1, v2), evaluate_type(aut, hole))


def loop_tree(letter, side, port_left=True):
    """The regular tree C^infinity for the context letter(_, side) or
    letter(side, _)."""
    off = 1
    labels = [letter] + list(side.labels)
    shifted = side.root + off
    succ = [(0, shifted) if port_left else (shifted, 0)]
    succ += [(a + off, b + off) for (a, b) in side.succ]
    return RegularTree(tuple(labels), tuple(succ), 0)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_homomorphism_omega(name, pipelines):
    # iterating a one-step context forever follows the omega table
    p = pipelines[name]
    aut = p.automaton
    alg = p.stage_one
    for h in alg.H:
        witness = p.interp.tree_witnesses[h]
        for a in aut.alphabet:
            left = alg.inject_left[(a, h)]
            assert evaluate_type(aut, loop_tree(a, witness, True)) == \
                alg.omega_of(left)
            right = alg.inject_right[(a, h)]
            assert evaluate_type(aut, loop_tree(a, witness, False)) == \
                alg.omega_of(right)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_tree_witnesses_and_classes(name, pipelines):
    p = pipelines[name]
    aut = p.automaton
    for h in p.stage_one.H:
        assert evaluate_type(aut, p.interp.tree_witnesses[h]) == h
        cls = p.interp.class_automata[h]
        empty, wit = is_empty(cls)
        assert not empty
        assert evaluate_type(aut, wit) == h
    # the class automata are pairwise disjoint
    hs = list(p.stage_one.H)
    for i, h1 in enumerate(hs):
        for h2 in hs[i + 1:]:
            both = intersection([p.interp.class_automata[h1],
                                 p.interp.class_automata[h2]])
            assert is_empty(both)[0]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_dual_types_are_jointly_realized(name, pipelines):
    # the dual automaton recognizes the complement, and each witness tree
    # evaluates to the recorded dual type
    p = pipelines[name]
    aut, dual = p.automaton, p.interp.dual_automaton
    assert is_empty(intersection([aut, dual]))[0]
    for rt in tree_stream(aut.alphabet, seed=59, count=80):
        assert accepts_regular_tree(aut, rt) != accepts_regular_tree(dual, rt)
    for h in p.stage_one.H:
        assert evaluate_type(dual, p.interp.tree_witnesses[h]) == \
            p.interp.dual_tree[h]
    assert set(p.interp.dual_context) == set(p.stage_one.V)
