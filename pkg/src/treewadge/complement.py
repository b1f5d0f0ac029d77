"""Complementation of parity tree automata, inclusion and equivalence.

A tree is outside the language exactly when the opponent of the automaton
has a positional strategy in the membership game: an annotation assigning
each transition at each node a direction, such that every run following the
annotation tracks a rejected branch.  Branch rejection is a word-automaton
condition, so the complement guesses the annotation letterwise and runs a
determinized branch monitor along every branch.
"""

from __future__ import annotations

import itertools

from .caps import Caps, DEFAULT_CAPS, ResourceCapError
from .model import TreeAutomaton
from .ops import intersection, is_empty, simplify, accepts_regular_tree
from .sampling import tree_stream
from .words import det_stepper

__all__ = [
    "complement",
    "included",
    "equivalent",
    "assisted_complement",
]

# per-letter bound on enumerated direction annotations
MAX_EFFECTS_PER_LETTER = 50_000


def _state_options(targets):
    """Minimal direction-assignment effects for one state's transitions.

    targets is the list of (left, right) child pairs of the state's
    transitions on one letter.  Each assignment sends every transition left
    or right; its effect is the pair (set of left children of transitions
    sent left, set of right children of transitions sent right).  Effects
    dominated componentwise by another achievable effect are dropped: a
    smaller effect only removes runs the annotation must defeat, so the
    complement's language is unchanged.
    """
    if not targets:
        return [(frozenset(), frozenset())]
    effects = set()
    for mask in range(1 << len(targets)):
        left = frozenset(l for i, (l, _) in enumerate(targets)
                         if mask >> i & 1)
        right = frozenset(r for i, (_, r) in enumerate(targets)
                          if not mask >> i & 1)
        effects.add((left, right))
    minimal = []
    for eff in sorted(effects, key=lambda e: (len(e[0]) + len(e[1]),
                                              sorted(e[0]), sorted(e[1]))):
        if not any(o[0] <= eff[0] and o[1] <= eff[1] for o in minimal):
            minimal.append(eff)
    return minimal


def _letter_effects(aut: TreeAutomaton, letter, support, caps: Caps):
    """Minimal annotation effects for one letter restricted to a support.

    Only direction choices at the supported states matter: every monitor
    construction follows edges out of tracked states alone, so the rows of
    the other states are left empty.  Effects are pairs of edge relations,
    one per direction, over the automaton's states."""
    options = []
    for q in sorted(support):
        targets = [(l, r) for (_, _, l, r) in aut.transitions_from(q, letter)]
        per_state = [(frozenset((q, s) for s in left),
                      frozenset((q, s) for s in right))
                     for left, right in _state_options(targets)]
        options.append(per_state)
    total = 1
    for per_state in options:
        total *= len(per_state)
    if total > MAX_EFFECTS_PER_LETTER:
        raise ResourceCapError(
            f"annotation enumeration on {letter!r} needs {total} effects "
            f"(cap {MAX_EFFECTS_PER_LETTER})")
    effects = set()
    for combo in itertools.product(*options):
        e_left = frozenset().union(*(c[0] for c in combo)) if combo \
            else frozenset()
        e_right = frozenset().union(*(c[1] for c in combo)) if combo \
            else frozenset()
        effects.add((e_left, e_right))
    return sorted(effects, key=lambda e: (sorted(e[0]), sorted(e[1])))


# complementation dominates every pipeline that calls it repeatedly on the
# same plugging or state automata, so results are cached per input
_complement_memo = {}


def complement(aut: TreeAutomaton, caps: Caps = DEFAULT_CAPS) -> TreeAutomaton:
    """Automaton for the complement language over the same alphabet."""
    aut = simplify(aut)
    key = (aut, caps.state_budget)
    if key in _complement_memo:
        return _complement_memo[key]
    result = _complement(aut, caps)
    _complement_memo[key] = result
    return result


def _complement(aut: TreeAutomaton, caps: Caps) -> TreeAutomaton:
    init, step, priority, support, step_key = det_stepper(
        aut.n_states, aut.priorities, aut.initial)
    effect_memo = {}

    def effects(sup, letter):
        key = (sup, letter)
        if key not in effect_memo:
            effect_memo[key] = _letter_effects(aut, letter, sup, caps)
        return effect_memo[key]

    step_memo = {}

    def do_step(state, edges):
        key = (state, step_key(state, edges)) if step_key \
            else (state, edges)
        if key not in step_memo:
            step_memo[key] = step(state, edges)
        return step_memo[key]

    states = {init: 0}
    # the monitor recognizes accepted branches; the complement needs every
    # branch rejected, so parity is flipped by a +1 shift
    priorities = [priority(init) + 1]
    transitions = []
    queue = [init]
    while queue:
        s = queue.pop()
        sid = states[s]
        sup = support(s)
        for a in aut.alphabet:
            seen = set()
            for e_left, e_right in effects(sup, a):
                tl = do_step(s, e_left)
                tr = do_step(s, e_right)
                if (tl, tr) in seen:
                    continue
                seen.add((tl, tr))
                for t in (tl, tr):
                    if t not in states:
                        caps.charge(len(states) + 1, "complement")
                        states[t] = len(states)
                        priorities.append(priority(t) + 1)
                        queue.append(t)
                transitions.append((sid, a, states[tl], states[tr]))
    raw = TreeAutomaton(aut.alphabet, len(states), 0, tuple(transitions),
                        tuple(priorities))
    return simplify(raw)


def included(a: TreeAutomaton, b: TreeAutomaton,
             caps: Caps = DEFAULT_CAPS) -> bool:
    """L(a) <= L(b), via emptiness of a intersected with b's complement."""
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    empty, _ = is_empty(intersection([a, complement(b, caps)], caps))
    return empty


def equivalent(a: TreeAutomaton, b: TreeAutomaton,
               caps: Caps = DEFAULT_CAPS) -> bool:
    return included(a, b, caps) and included(b, a, caps)


def assisted_complement(a: TreeAutomaton, c: TreeAutomaton,
                        samples: int = 200, seed: int = 0,
                        caps: Caps = DEFAULT_CAPS) -> TreeAutomaton:
    """Validate a user-supplied complement candidate and return it.

    Checks disjointness exactly and exactly-one acceptance on sampled
    regular trees (best effort); any failure raises ValueError with the
    offending tree when sampling finds one.
    """
    if a.alphabet != c.alphabet:
        raise ValueError("alphabet mismatch")
    empty, witness = is_empty(intersection([a, c], caps))
    if not empty:
        raise ValueError(f"claimed complement overlaps the language: "
                         f"witness {witness}")
    for rt in tree_stream(a.alphabet, seed, samples):
        in_a = accepts_regular_tree(a, rt)
        in_c = accepts_regular_tree(c, rt)
        if in_a == in_c:
            raise ValueError(f"claimed complement fails exactly-one "
                             f"acceptance on {rt}")
    return c
