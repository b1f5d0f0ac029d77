"""Seeded random generation of regular trees."""

from __future__ import annotations

import random

from .model import Alphabet, RegularTree

__all__ = ["random_regular_tree", "tree_stream"]


def random_regular_tree(alphabet: Alphabet, rng: random.Random,
                        max_vertices: int = 6) -> RegularTree:
    """A random lasso-presented tree; successors may point anywhere, so the
    unfoldings mix shallow cycles with longer chains."""
    n = rng.randint(1, max_vertices)
    labels = tuple(rng.choice(alphabet.letters) for _ in range(n))
    # make vertex i+1 reachable from some j <= i, then randomize the rest
    succ = [[rng.randrange(n), rng.randrange(n)] for _ in range(n)]
    for i in range(1, n):
        j = rng.randrange(i)
        succ[j][rng.randrange(2)] = i
    # repair reachability greedily: redirect an edge from the reached part
    while True:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        missing = [v for v in range(n) if v not in seen]
        if not missing:
            break
        v = rng.choice(sorted(seen))
        succ[v][rng.randrange(2)] = missing[0]
    return RegularTree(labels, tuple((l, r) for l, r in succ), 0)


def tree_stream(alphabet: Alphabet, seed: int, count: int,
                max_vertices: int = 6):
    """Reproducible finite stream of random regular trees."""
    rng = random.Random(seed)
    return [random_regular_tree(alphabet, rng, max_vertices)
            for _ in range(count)]
