"""Omega-word automata and determinization.

Supports nondeterministic parity word automata (max-even, priorities on
states) and produces language-equal deterministic parity automata.  Three
fast paths cover the priority shapes that dominate this code base (safety,
co-Buechi, Buechi); the general case goes through a parity-to-Buechi
conversion followed by the Buechi construction (history trees with named
nodes, Rabin pairs turned into parity by an index appearance record).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .caps import Caps, DEFAULT_CAPS

__all__ = [
    "WordAutomaton",
    "lasso_accepts",
    "determinize_word",
    "iar_step",
    "det_stepper",
]


@dataclass(frozen=True)
class WordAutomaton:
    """Parity word automaton; max-even acceptance, priorities on states."""

    alphabet: tuple
    n_states: int
    initial: int
    transitions: tuple  # (state, symbol, state)
    priorities: tuple[int, ...]
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.priorities) != self.n_states:
            raise ValueError("priority must be defined on every state")
        if not 0 <= self.initial < self.n_states:
            raise ValueError("initial state out of range")
        index = {}
        for q, a, r in self.transitions:
            if a not in self.alphabet:
                raise ValueError(f"unknown symbol {a!r}")
            if not (0 <= q < self.n_states and 0 <= r < self.n_states):
                raise ValueError("transition state out of range")
            index.setdefault((q, a), set()).add(r)
        object.__setattr__(self, "transitions",
                           tuple(sorted(set(self.transitions),
                                        key=lambda t: (t[0],
                                                       self.alphabet.index(t[1]),
                                                       t[2]))))
        object.__setattr__(self, "_index",
                           {k: frozenset(v) for k, v in index.items()})

    def successors(self, state, symbol):
        return self._index.get((state, symbol), frozenset())

    @property
    def deterministic(self):
        return all(len(self.successors(q, a)) <= 1
                   for q in range(self.n_states) for a in self.alphabet)

    def edges(self, symbol):
        """The symbol's transition relation as a frozenset of state pairs."""
        return frozenset((q, r) for q, a, r in self.transitions if a == symbol)


def lasso_accepts(aut: WordAutomaton, stem, cycle) -> bool:
    """Exact membership of the ultimately periodic word stem cycle^omega.

    Works for nondeterministic automata: searches the product of the
    automaton with the lasso graph for a reachable cycle whose maximum
    priority is even.
    """
    if not cycle:
        raise ValueError("cycle must be nonempty")
    # forward reachability through the stem
    current = {aut.initial}
    for a in stem:
        current = {r for q in current for r in aut.successors(q, a)}
    if not current:
        return False
    # product with the cycle positions
    nodes = {(q, 0) for q in current}
    stack = list(nodes)
    succ = {}
    while stack:
        q, i = stack.pop()
        nxt = [(r, (i + 1) % len(cycle)) for r in aut.successors(q, cycle[i])]
        succ[(q, i)] = nxt
        for node in nxt:
            if node not in nodes:
                nodes.add(node)
                stack.append(node)
    # a good lasso exists iff some priority-e node (e even) lies on a cycle
    # of the subgraph restricted to priorities <= e
    for e in sorted({aut.priorities[q] for q, _ in nodes}):
        if e % 2 != 0:
            continue
        allowed = {n for n in nodes if aut.priorities[n[0]] <= e}
        targets = {n for n in allowed if aut.priorities[n[0]] == e}
        for scc in _sccs(allowed, succ):
            if not scc & targets:
                continue
            if len(scc) > 1:
                return True
            (node,) = scc
            if any(m == node for m in succ.get(node, [])):
                return True
    return False


def _sccs(nodes, succ):
    """Tarjan's strongly connected components (iterative)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    result = []
    counter = [0]
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter([m for m in succ.get(root, []) if m in nodes]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter([m for m in succ.get(w, [])
                                          if m in nodes])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                result.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return result


def iar_step(perm, triggered, fulfilled):
    """One move of the index appearance record.

    perm is the current permutation of pair indices (front first); triggered
    and fulfilled are the sets of pair indices hit by the current input.
    Fulfilled indices move to the front; the emitted priority compares the
    deepest fulfilled position f against the deepest triggered position e
    (1-based in the old permutation): even 2f when f >= e, else odd 2e - 1.
    """
    f = 0
    e = 0
    for pos, j in enumerate(perm, start=1):
        if j in fulfilled:
            f = pos
        if j in triggered:
            e = pos
    emitted = 2 * f if f >= e else 2 * e - 1
    moved = [j for j in perm if j in fulfilled]
    rest = [j for j in perm if j not in fulfilled]
    return tuple(moved + rest), emitted


# --- deterministic steppers -----------------------------------------------
#
# A stepper is (initial_state, step, priority): step takes a state and the
# current symbol's transition relation (frozenset of state pairs over the
# input automaton) and returns the next state; priority reads the parity
# rank off a state.  All steppers below recognize the input language.


def _image(states, edges):
    return frozenset(r for q, r in edges if q in states)


def _subset_stepper(initial):
    """Safety input (all priorities even): survival by subset tracking."""
    def step(state, edges):
        return _image(state, edges)

    def priority(state):
        return 0 if state else 1

    def support(state):
        return state

    return frozenset([initial]), step, priority, support


def _breakpoint_stepper(initial, bad):
    """Co-Buechi input (priorities within {0,1}): breakpoint construction.

    State (S, B, broke): S = reachable states, B = states on runs that
    avoided bad states since the last breakpoint.  A step emptying B resets
    it to S minus bad and raises priority 1.
    """
    init = (frozenset([initial]), frozenset([initial]) - bad, False)

    def step(state, edges):
        s, b, _ = state
        s2 = _image(s, edges)
        b2 = _image(b, edges) - bad
        if b2 or not s2:
            return (s2, b2, False)
        return (s2, s2 - bad, True)

    def priority(state):
        s, _, broke = state
        if not s:
            return 1
        return 1 if broke else 0

    def support(state):
        return state[0]

    return init, step, priority, support


# --- Buechi determinization via history trees -----------------------------
#
# History trees are nested tuples (name, label, children); labels are
# bitmasks over the input automaton's states, names are canonical ages
# (name k is the k-th oldest live node).


def _bits(mask):
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def _buechi_stepper(initial, accepting, n_states):
    """Deterministic parity stepper for a Buechi input (accepting = states
    of priority 2) over histories of run trees.

    Safra-Piterman style: each step spawns a child from the accepting part
    of every node, advances all labels, prunes states claimed by older
    nodes, drops empty nodes and green-marks nodes covered by their
    children, then emits a priority from the oldest node that died and the
    oldest that went green.  The input word is accepted exactly when some
    node eventually stops dying and goes green infinitely often, which the
    age ordering turns into a max-even parity condition.
    """
    cap = 2 * n_states
    acc_mask = 0
    for q in accepting:
        acc_mask |= 1 << q

    def emit(deaths, greens):
        d = min(deaths) if deaths else None
        g = min(greens) if greens else None
        if d is None and g is None:
            return 1
        if g is None or (d is not None and d <= g):
            return 2 * (cap - d) + 1
        return 2 * (cap - g)

    def step(state, edges):
        tree, _ = state
        if tree is None:
            return (None, 1)
        succ = [0] * n_states
        for q, r in edges:
            succ[q] |= 1 << r

        def img(mask):
            out = 0
            while mask:
                low = mask & -mask
                out |= succ[low.bit_length() - 1]
                mask ^= low
            return out

        def count(node):
            return 1 + sum(count(c) for c in node[2])

        k_old = count(tree)
        fresh = [k_old]
        deaths = []
        greens = []

        def bury(node):
            if node[0] < k_old:
                deaths.append(node[0])
            for c in node[2]:
                bury(c)

        def go(node, claimed):
            """Process one node; returns (new node or None, own label)."""
            name, label, children = node
            new_label = img(label) & ~claimed
            if not new_label:
                bury(node)
                return None, 0
            kept = []
            union = 0
            seen = 0
            for c in children:
                child, owned = go(c, claimed | seen)
                seen |= owned
                if child is not None:
                    kept.append(child)
                    union |= child[1]
            hit = label & acc_mask
            if hit:
                spawn_label = img(hit) & ~(claimed | seen)
                if spawn_label:
                    kept.append((fresh[0], spawn_label, ()))
                    fresh[0] += 1
                    union |= spawn_label
            if kept and union == new_label:
                for c in kept:
                    bury(c)
                greens.append(name)
                kept = []
            return (name, new_label, tuple(kept)), new_label

        node, _ = go(tree, 0)
        if node is None:
            return (None, emit(deaths, greens))
        live = []

        def collect(n):
            live.append(n[0])
            for c in n[2]:
                collect(c)

        collect(node)
        table = {name: k for k, name in enumerate(sorted(live))}

        def rename(n):
            return (table[n[0]], n[1], tuple(rename(c) for c in n[2]))

        return (rename(node), emit(deaths, greens))

    def priority(state):
        return state[1]

    def support(state):
        tree, _ = state
        return frozenset() if tree is None else _bits(tree[1])

    labels_memo = {}
    succ_memo = {}

    def step_key(state, edges):
        """Canonical key with step(state, edges) == step(state, edges')
        whenever the keys agree: the step reads the transition relation
        only through the images of each node label and of its accepting
        part, taken in traversal order."""
        tree, _ = state
        if tree is None:
            return ()
        labs = labels_memo.get(tree)
        if labs is None:
            out = []

            def walk(node):
                out.append(node[1])
                out.append(node[1] & acc_mask)
                for c in node[2]:
                    walk(c)

            walk(tree)
            labs = tuple(out)
            labels_memo[tree] = labs
        succ = succ_memo.get(edges)
        if succ is None:
            succ = [0] * n_states
            for q, r in edges:
                succ[q] |= 1 << r
            succ_memo[edges] = succ
        key = []
        for mask in labs:
            out = 0
            while mask:
                low = mask & -mask
                out |= succ[low.bit_length() - 1]
                mask ^= low
            key.append(out)
        return tuple(key)

    return ((0, 1 << initial, ()), 1), step, priority, support, step_key


def _parity_to_buechi(n_states, priorities, initial):
    """Parity-to-Buechi state expansion for the general fallback.

    New states: plain q (waiting), and (q, e) claiming that from here on
    every priority is at most e and e (even) recurs.  Returns (state list,
    initial index, accepting set, edge transformer).
    """
    evens = sorted({p for p in priorities if p % 2 == 0})
    states = [("w", q) for q in range(n_states)]
    states += [("c", q, e) for q in range(n_states) for e in evens
               if priorities[q] <= e]
    index = {s: i for i, s in enumerate(states)}
    accepting = frozenset(index[("c", q, e)] for q in range(n_states)
                          for e in evens
                          if priorities[q] == e)

    def transform(edges):
        out = set()
        for q, r in edges:
            out.add((index[("w", q)], index[("w", r)]))
            for e in evens:
                if priorities[r] <= e:
                    out.add((index[("w", q)], index[("c", r, e)]))
                    if priorities[q] <= e:
                        out.add((index[("c", q, e)], index[("c", r, e)]))
        return frozenset(out)

    return states, index[("w", initial)], accepting, transform


def det_stepper(n_states, priorities, initial):
    """Deterministic stepper recognizing the language of a nondeterministic
    parity word automaton given by its state count, priorities and initial
    state; the per-symbol transition relation is supplied at each step.

    Returns (initial state, step, priority, support, step_key); support
    yields the input-automaton states a stepper state still tracks, so
    callers may restrict the supplied transition relation to edges leaving
    them.  step_key, when not None, maps (state, edges) to a canonical key:
    steps from the same state agree whenever their keys agree, letting
    callers deduplicate step calls across transition relations.
    """
    values = sorted(set(priorities))
    if all(p % 2 == 0 for p in values):
        return _subset_stepper(initial) + (None,)
    if set(values) <= {0, 1}:
        bad = frozenset(q for q in range(n_states) if priorities[q] == 1)
        return _breakpoint_stepper(initial, bad) + (None,)
    if set(values) <= {1, 2}:
        accepting = frozenset(q for q in range(n_states) if priorities[q] == 2)
        return _buechi_stepper(initial, accepting, n_states)
    expanded, init2, accepting, transform = _parity_to_buechi(
        n_states, priorities, initial)
    init, step, priority, support, step_key = _buechi_stepper(
        init2, accepting, len(expanded))

    def step2(state, edges):
        return step(state, transform(edges))

    def support2(state):
        return frozenset(expanded[i][1] for i in support(state))

    def step_key2(state, edges):
        return step_key(state, transform(edges))

    return init, step2, priority, support2, step_key2


def determinize_word(aut: WordAutomaton, caps: Caps = DEFAULT_CAPS) -> WordAutomaton:
    """Language-equal deterministic parity word automaton."""
    init, step, priority, _, _ = det_stepper(aut.n_states, aut.priorities,
                                             aut.initial)
    edge_rel = {a: aut.edges(a) for a in aut.alphabet}
    states = {init: 0}
    queue = [init]
    transitions = []
    while queue:
        s = queue.pop()
        for a in aut.alphabet:
            t = step(s, edge_rel[a])
            if t not in states:
                caps.charge(len(states) + 1, "word determinization")
                states[t] = len(states)
                queue.append(t)
            transitions.append((states[s], a, states[t]))
    priorities = [0] * len(states)
    for s, i in states.items():
        priorities[i] = priority(s)
    return WordAutomaton(tuple(aut.alphabet), len(states), 0,
                         tuple(transitions), tuple(priorities))
