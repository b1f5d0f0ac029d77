from __future__ import annotations

import itertools
import random

import pytest

from treewadge.complement import equivalent
from treewadge.model import Alphabet, FinitePrefix, TreeAutomaton, unfold
from treewadge.ops import (
    accepts_regular_tree,
    closure,
    compress_priorities,
    empty_automaton,
    intersection,
    is_empty,
    simplify,
    trim,
    union,
    universal_automaton,
)
from treewadge.sampling import tree_stream
from treewadge.typegames import prefix_automaton

from conftest import random_tree_automaton

AB = Alphabet(("a", "b"))


def test_empty_and_universal():
    assert is_empty(empty_automaton(AB))[0]
    uni = universal_automaton(AB)
    empty, witness = is_empty(uni)
    assert not empty
    assert accepts_regular_tree(uni, witness)
    for rt in tree_stream(AB, seed=1, count=20):
        assert accepts_regular_tree(uni, rt)
        assert not accepts_regular_tree(empty_automaton(AB), rt)


def test_accepts_regular_tree_hand_case(root_a):
    for rt in tree_stream(AB, seed=2, count=40):
        assert accepts_regular_tree(root_a, rt) == (rt.labels[rt.root] == "a")


def test_emptiness_witness_is_accepted(root_a, contains_b, inf_a, prop_p):
    for aut in (root_a, contains_b, inf_a, prop_p):
        empty, witness = is_empty(aut)
        assert not empty
        assert accepts_regular_tree(aut, witness)


def test_intersection_union_on_samples():
    rng = random.Random(5)
    samples = list(tree_stream(AB, seed=6, count=25))
    for _ in range(40):
        a = random_tree_automaton(rng)
        b = random_tree_automaton(rng)
        both = intersection([a, b])
        either = union([a, b])
        for rt in samples:
            ina, inb = accepts_regular_tree(a, rt), accepts_regular_tree(b, rt)
            assert accepts_regular_tree(both, rt) == (ina and inb)
            assert accepts_regular_tree(either, rt) == (ina or inb)


def test_intersection_three_way(root_a, contains_b):
    both = intersection([root_a, contains_b, universal_automaton(AB)])
    for rt in tree_stream(AB, seed=7, count=40):
        expected = (accepts_regular_tree(root_a, rt)
                    and accepts_regular_tree(contains_b, rt))
        assert accepts_regular_tree(both, rt) == expected


def test_simplify_trim_compress_preserve_language():
    rng = random.Random(11)
    samples = list(tree_stream(AB, seed=12, count=25))
    for _ in range(40):
        aut = random_tree_automaton(rng)
        for form in (simplify(aut), trim(aut), compress_priorities(aut)):
            for rt in samples:
                assert accepts_regular_tree(form, rt) == \
                    accepts_regular_tree(aut, rt)


def test_closure_hand_cases(root_a, inf_a):
    # a clopen language is its own closure; "infinitely many a" is dense
    assert equivalent(closure(root_a), root_a)
    assert equivalent(closure(inf_a), universal_automaton(AB))


def test_closure_contains_language(contains_b, prop_p):
    for aut in (contains_b, prop_p):
        clo = closure(aut)
        for rt in tree_stream(aut.alphabet, seed=13, count=30):
            if accepts_regular_tree(aut, rt):
                assert accepts_regular_tree(clo, rt)


def all_complete_prefixes(alphabet, depth):
    """Every fully labelled prefix whose domain is the complete binary
    tree of the given depth."""
    words = [""]
    frontier = [""]
    for _ in range(depth):
        frontier = [w + d for w in frontier for d in "LR"]
        words += frontier
    for labels in itertools.product(alphabet.letters, repeat=len(words)):
        yield FinitePrefix(tuple(zip(words, labels)))


def extendable(prefix, aut):
    return not is_empty(intersection([prefix_automaton(prefix, aut), aut]))[0]


@pytest.mark.parametrize("name", ["root_a", "contains_b", "inf_a", "prop_p"])
def test_closure_matches_prefix_extension_oracle(name, request):
    # a prefix reaches into the closure exactly when it extends into the
    # language itself; exhaustive prefix enumeration is only affordable on
    # the small fixtures
    aut = request.getfixturevalue(name)
    if aut.n_states > 3:
        pytest.skip("exhaustive prefix oracle is limited to <= 3 states")
    clo = closure(aut)
    checked = 0
    for depth in (0, 1, 2):
        for prefix in all_complete_prefixes(aut.alphabet, depth):
            assert extendable(prefix, clo) == extendable(prefix, aut)
            checked += 1
    # ragged prefixes of depth 3 from sampled trees
    for rt in tree_stream(aut.alphabet, seed=17, count=30):
        prefix = unfold(rt, 3)
        assert extendable(prefix, clo) == extendable(prefix, aut)
        checked += 1
    assert checked > 100


def test_prefix_automaton_matches_trees():
    prefix = FinitePrefix((("", "a"), ("L", "b")))
    gate = prefix_automaton(prefix, universal_automaton(AB))
    for rt in tree_stream(AB, seed=19, count=60):
        assert accepts_regular_tree(gate, rt) == prefix.matches_tree(rt)
