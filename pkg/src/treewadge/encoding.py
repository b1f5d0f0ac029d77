"""Encodings of contexts, multicontexts and environments as complete trees.

Partial trees with ports are embedded into complete binary trees over the
extended alphabet (letters plus PORT and PAD):

- a multicontext port is a PORT node with both subtrees all-PAD;
- a context is a multicontext with exactly one PORT node;
- an environment port is unary: a PORT node whose left child continues the
  environment and whose right child is all-PAD.

PAD may appear only where these shapes demand it.
"""

from __future__ import annotations

from enum import Enum

from .model import Alphabet, TreeAutomaton

__all__ = ["PORT", "PAD", "SpaceKind", "extended_alphabet",
           "validity_automaton"]

PORT = "PORT"
PAD = "PAD"


class SpaceKind(Enum):
    TREE = "tree"
    CONTEXT = "context"
    MULTICONTEXT = "multicontext"
    ENVIRONMENT = "environment"


def extended_alphabet(alphabet: Alphabet) -> Alphabet:
    if PORT in alphabet or PAD in alphabet:
        raise ValueError(f"{PORT!r} and {PAD!r} are reserved letter names")
    return Alphabet(alphabet.letters + (PORT, PAD))


def validity_automaton(alphabet: Alphabet, kind: SpaceKind) -> TreeAutomaton:
    """Automaton over the extended alphabet accepting exactly the valid
    encodings of the given kind.

    Multicontext and environment validity are safety automata.  Context
    validity needs one odd-priority state: the single port sits at a finite
    depth, and "the port eventually appears" is not a closed condition, so
    it cannot be expressed with even priorities alone.
    """
    ext = extended_alphabet(alphabet)
    base = alphabet.letters
    if kind is SpaceKind.TREE:
        # plain trees: no PORT or PAD anywhere
        trans = [(0, a, 0, 0) for a in base]
        return TreeAutomaton(ext, 1, 0, tuple(trans), (0,))
    if kind is SpaceKind.MULTICONTEXT:
        # 0 = multicontext region, 1 = pad region
        trans = [(0, a, 0, 0) for a in base]
        trans.append((0, PORT, 1, 1))
        trans.append((1, PAD, 1, 1))
        return TreeAutomaton(ext, 2, 0, tuple(trans), (0, 0))
    if kind is SpaceKind.ENVIRONMENT:
        # 0 = environment region, 1 = pad region
        trans = [(0, a, 0, 0) for a in base]
        trans.append((0, PORT, 0, 1))
        trans.append((1, PAD, 1, 1))
        return TreeAutomaton(ext, 2, 0, tuple(trans), (0, 0))
    if kind is SpaceKind.CONTEXT:
        # 0 = on the path to the unique port, 1 = port-free subtree,
        # 2 = pad region; state 0 must terminate, hence priority 1
        trans = []
        for a in base:
            trans.append((0, a, 0, 1))
            trans.append((0, a, 1, 0))
            trans.append((1, a, 1, 1))
        trans.append((0, PORT, 2, 2))
        trans.append((2, PAD, 2, 2))
        return TreeAutomaton(ext, 3, 0, tuple(trans), (1, 0, 0))
    raise ValueError(f"unknown kind {kind!r}")
