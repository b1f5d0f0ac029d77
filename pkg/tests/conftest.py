from __future__ import annotations

import pathlib
from types import SimpleNamespace

import pytest

from treewadge import parse_automaton
from treewadge.algebra import stage_one_algebra
from treewadge.classify import classify
from treewadge.quotient import syntactic_algebra

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_NAMES = ("root_a", "contains_b", "inf_a", "prop_p")


def random_tree_automaton(rng, alphabet=None, max_states=3, density=0.6):
    from treewadge.model import Alphabet, TreeAutomaton
    alphabet = alphabet or Alphabet(("a", "b"))
    n = rng.randint(1, max_states)
    transitions = []
    for q in range(n):
        for a in alphabet:
            for l in range(n):
                for r in range(n):
                    if rng.random() < density / n:
                        transitions.append((q, a, l, r))
    return TreeAutomaton(alphabet, n, 0, tuple(transitions),
                         tuple(rng.randint(0, 2) for _ in range(n)))


def load_fixture(name):
    return parse_automaton((FIXTURES / f"{name}.aut").read_text())


@pytest.fixture(scope="session")
def root_a():
    return load_fixture("root_a")


@pytest.fixture(scope="session")
def contains_b():
    return load_fixture("contains_b")


@pytest.fixture(scope="session")
def inf_a():
    return load_fixture("inf_a")


@pytest.fixture(scope="session")
def prop_p():
    return load_fixture("prop_p")


@pytest.fixture(scope="session")
def pipelines():
    """Stage-one algebra and syntactic quotient of every fixture, built
    once per session."""
    out = {}
    for name in FIXTURE_NAMES:
        aut = load_fixture(name)
        alg, interp = stage_one_algebra(aut)
        syn = syntactic_algebra(alg, interp)
        out[name] = SimpleNamespace(name=name, automaton=aut, stage_one=alg,
                                    interp=interp, syntactic=syn)
    return out


@pytest.fixture(scope="session")
def reports():
    """Full classification reports of every fixture, built once."""
    return {name: classify(load_fixture(name), max_n=6)
            for name in FIXTURE_NAMES}
