from __future__ import annotations

import random

import pytest

from treewadge.caps import ResourceCapError
from treewadge.complement import (
    assisted_complement,
    complement,
    equivalent,
    included,
)
from treewadge.model import Alphabet
from treewadge.ops import (
    accepts_regular_tree,
    empty_automaton,
    intersection,
    is_empty,
    simplify,
    universal_automaton,
)
from treewadge.sampling import tree_stream

from conftest import random_tree_automaton

AB = Alphabet(("a", "b"))


@pytest.mark.parametrize("name", ["root_a", "contains_b", "inf_a", "prop_p"])
def test_complement_suite_on_fixtures(name, request):
    aut = request.getfixturevalue(name)
    co = complement(aut)
    # disjointness is exact, coverage is sampled
    assert is_empty(intersection([aut, co]))[0]
    for rt in tree_stream(aut.alphabet, seed=31, count=200):
        assert accepts_regular_tree(aut, rt) != accepts_regular_tree(co, rt)
    check_double_complement(aut, co)


def check_double_complement(aut, co):
    """The double complement must recognize the original language.

    Full language equivalence needs a third complement, so the exact check
    only fits the resource caps on the small fixtures; beyond them the
    double complement is compared by exact disjointness from the first
    complement plus sampled agreement, and if even its construction blows
    the cap the remainder is skipped as cap-bounded.
    """
    try:
        cc = simplify(complement(simplify(co)))
    except ResourceCapError:
        pytest.skip("double complement exceeds the annotation cap")
    assert is_empty(intersection([cc, co]))[0]
    for rt in tree_stream(aut.alphabet, seed=32, count=300):
        assert accepts_regular_tree(cc, rt) == accepts_regular_tree(aut, rt)
    try:
        exact = equivalent(aut, cc)
    except ResourceCapError:
        return
    assert exact


def test_complement_random_automata():
    rng = random.Random(37)
    samples = list(tree_stream(AB, seed=38, count=30))
    for _ in range(25):
        aut = random_tree_automaton(rng)
        co = complement(aut)
        assert is_empty(intersection([aut, co]))[0]
        for rt in samples:
            assert accepts_regular_tree(aut, rt) != \
                accepts_regular_tree(co, rt)


def test_complement_extremes():
    assert is_empty(complement(universal_automaton(AB)))[0]
    assert equivalent(complement(empty_automaton(AB)),
                      universal_automaton(AB))


def test_included_and_equivalent(root_a, contains_b):
    assert included(root_a, universal_automaton(AB))
    assert included(empty_automaton(AB), root_a)
    assert not included(root_a, contains_b)
    assert not included(universal_automaton(AB), root_a)
    assert equivalent(root_a, root_a)
    assert not equivalent(root_a, contains_b)


def test_assisted_complement(root_a, contains_b):
    co = complement(root_a)
    assert equivalent(assisted_complement(root_a, co, 50, 0), co)
    with pytest.raises(ValueError):
        assisted_complement(root_a, contains_b, 50, 0)
    # a disjoint but non-covering claim must be rejected too
    with pytest.raises(ValueError):
        assisted_complement(root_a, empty_automaton(AB), 50, 0)
