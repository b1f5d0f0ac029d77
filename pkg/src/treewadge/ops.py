"""Boolean operations and decision procedures for parity tree automata.

Intersection threads a deterministic record monitor through the product so
that the conjunction of max-even parity conditions is again expressed as a
single max-even condition.  Emptiness is decided through a parity game whose
Even winning strategy yields a regular witness tree.
"""

from __future__ import annotations

from .caps import Caps, DEFAULT_CAPS
from .games import GameArena, solve_game
from .model import Alphabet, RegularTree, TreeAutomaton

__all__ = [
    "emptiness_game",
    "is_empty",
    "witness_tree",
    "productive_states",
    "accepts_regular_tree",
    "closure",
    "intersection",
    "union",
    "trim",
    "compress_priorities",
    "simulation_preorder",
    "simplify",
    "empty_automaton",
    "universal_automaton",
]


def empty_automaton(alphabet: Alphabet) -> TreeAutomaton:
    """One-state automaton with no transitions; accepts nothing."""
    return TreeAutomaton(alphabet, 1, 0, (), (1,))


def universal_automaton(alphabet: Alphabet) -> TreeAutomaton:
    """One-state automaton accepting every tree over the alphabet."""
    trans = tuple((0, a, 0, 0) for a in alphabet)
    return TreeAutomaton(alphabet, 1, 0, trans, (0,))


def emptiness_game(aut: TreeAutomaton):
    """Arena for the emptiness game: Even builds a tree and a run, Odd
    picks branches.

    Even owns state vertices (priority of the state) and chooses a letter
    and transition; Odd owns transition vertices (priority 0) and chooses a
    direction.  Returns (arena, state vertex of each automaton state).
    """
    n = aut.n_states
    owner = [0] * n
    priority = [aut.priorities[q] for q in range(n)]
    edges = [[] for _ in range(n)]
    trans_vertex = {}
    for q in range(n):
        for t in aut.transitions_from(q):
            if t not in trans_vertex:
                v = len(owner)
                trans_vertex[t] = v
                owner.append(1)
                priority.append(0)
                edges.append([t[2], t[3]])
            edges[q].append(trans_vertex[t])
    arena = GameArena(tuple(owner), tuple(priority),
                      tuple(tuple(e) for e in edges))
    return arena, trans_vertex


def productive_states(aut: TreeAutomaton) -> frozenset[int]:
    """States from which at least one tree is accepted."""
    arena, _ = emptiness_game(aut)
    solution = solve_game(arena)
    return frozenset(q for q in range(aut.n_states)
                     if q in solution.region[0])


def witness_tree(aut: TreeAutomaton):
    """A regular tree accepted by the automaton, or None if it is empty.

    Extracted from Even's positional strategy in the emptiness game: one
    tree vertex per automaton state used by the strategy.
    """
    arena, trans_vertex = emptiness_game(aut)
    solution = solve_game(arena)
    if aut.initial not in solution.region[0]:
        return None
    by_vertex = {v: t for t, v in trans_vertex.items()}
    choice = {}
    for q in range(aut.n_states):
        if q in solution.region[0]:
            choice[q] = by_vertex[solution.strategy[0][q]]
    reachable = []
    seen = {aut.initial}
    stack = [aut.initial]
    while stack:
        q = stack.pop()
        reachable.append(q)
        _, _, l, r = choice[q]
        for s in (l, r):
            if s not in seen:
                seen.add(s)
                stack.append(s)
    index = {q: i for i, q in enumerate(sorted(seen))}
    labels = [None] * len(index)
    succ = [None] * len(index)
    for q in index:
        _, a, l, r = choice[q]
        labels[index[q]] = a
        succ[index[q]] = (index[l], index[r])
    return RegularTree(tuple(labels), tuple(succ), index[aut.initial])


def is_empty(aut: TreeAutomaton):
    """Decide emptiness; returns (empty, witness tree or None)."""
    tree = witness_tree(aut)
    return tree is None, tree


def accepts_regular_tree(aut: TreeAutomaton, rt: RegularTree) -> bool:
    """Membership of the unfolding of `rt`, via the acceptance game.

    Even resolves nondeterminism, Odd picks branches, on the product of the
    tree graph with the automaton.
    """
    state_vertex = {}
    owner = []
    priority = []
    edges = []

    def vertex(key, own, prio):
        if key not in state_vertex:
            state_vertex[key] = len(owner)
            owner.append(own)
            priority.append(prio)
            edges.append([])
        return state_vertex[key]

    start = vertex(("s", rt.root, aut.initial), 0, aut.priorities[aut.initial])
    stack = [("s", rt.root, aut.initial)]
    done = {("s", rt.root, aut.initial)}
    while stack:
        key = stack.pop()
        if key[0] == "s":
            _, v, q = key
            sv = state_vertex[key]
            for t in aut.transitions_from(q, rt.labels[v]):
                tk = ("t", v, t)
                tv = vertex(tk, 1, 0)
                edges[sv].append(tv)
                if tk not in done:
                    done.add(tk)
                    stack.append(tk)
        else:
            _, v, (_, _, l, r) = key
            tv = state_vertex[key]
            for child, s in ((rt.succ[v][0], l), (rt.succ[v][1], r)):
                ck = ("s", child, s)
                cv = vertex(ck, 0, aut.priorities[s])
                edges[tv].append(cv)
                if ck not in done:
                    done.add(ck)
                    stack.append(ck)
    arena = GameArena(tuple(owner), tuple(priority),
                      tuple(tuple(e) for e in edges))
    solution = solve_game(arena)
    return start in solution.region[0]


def closure(aut: TreeAutomaton) -> TreeAutomaton:
    """Topological closure of the language.

    A tree lies in the closure exactly when it carries an everywhere
    infinite run through productive states, so the closure automaton keeps
    productive states only and drops the parity condition.
    """
    productive = productive_states(aut)
    if aut.initial not in productive:
        return empty_automaton(aut.alphabet)
    trans = tuple(t for t in aut.transitions
                  if t[0] in productive and t[2] in productive
                  and t[3] in productive)
    flat = TreeAutomaton(aut.alphabet, aut.n_states, aut.initial, trans,
                         tuple(0 for _ in range(aut.n_states)))
    return trim(flat)


# --- conjunction of parity conditions -------------------------------------

def _streett_pairs(auts):
    """Record indices for the conjunction of the factors' conditions.

    The max-even condition of factor i is the conjunction, over each odd
    priority value p it uses, of: if p occurs forever often then some larger
    even value occurs forever often.  Each such (i, p) becomes one tracked
    index of the record monitor.
    """
    pairs = []
    for i, aut in enumerate(auts):
        for p in aut.priority_values:
            if p % 2 == 1:
                pairs.append((i, p))
    return pairs


def _monitor_step(perm, pairs, vector):
    """One move of the record monitor on a vector of factor priorities.

    Indices whose fulfilment set is hit move to the front.  The emitted
    priority compares the deepest fulfilled index against the deepest
    triggered index (positions in the record before the move, 1-based).
    """
    fulfilled = []
    triggered = []
    for pos, j in enumerate(perm, start=1):
        i, p = pairs[j]
        v = vector[i]
        if v % 2 == 0 and v > p:
            fulfilled.append(pos)
        if v == p:
            triggered.append(pos)
    f = max(fulfilled, default=0)
    e = max(triggered, default=0)
    emitted = 2 * f if f >= e else 2 * e - 1
    moved = [perm[pos - 1] for pos in fulfilled]
    rest = [j for j in perm if j not in set(moved)]
    return tuple(moved + rest), emitted


def intersection(auts, caps: Caps = DEFAULT_CAPS) -> TreeAutomaton:
    """Product automaton accepting the intersection of the factors.

    All factors must share one alphabet.  The parity conditions are merged
    by threading the record monitor through the reachable product; factors
    whose priorities are all even contribute no tracked indices.
    """
    auts = list(auts)
    if not auts:
        raise ValueError("intersection needs at least one factor")
    alphabet = auts[0].alphabet
    if any(a.alphabet != alphabet for a in auts):
        raise ValueError("factors must share an alphabet")
    if len(auts) == 1:
        return auts[0]
    if len(auts) > 2:
        # fold pairwise, smallest factors first, simplifying intermediate
        # products; this keeps record monitors binary and lets unreachable
        # and equivalent product states disappear early
        ordered = sorted(auts, key=lambda a: a.n_states)
        acc = ordered[0]
        for nxt in ordered[1:]:
            acc = simplify(intersection([acc, nxt], caps))
        return acc

    pairs = _streett_pairs(auts)
    single = None
    if not pairs:
        single = None  # all factors safety: emit 0 everywhere
    else:
        factors_with_pairs = {i for i, _ in pairs}
        if len(factors_with_pairs) == 1:
            single = next(iter(factors_with_pairs))

    init_perm = tuple(range(len(pairs)))

    def enter(tuple_state, perm):
        """Priority emitted on entering, and the record carried onward."""
        vector = tuple(auts[i].priorities[q] for i, q in enumerate(tuple_state))
        if single is not None:
            return perm, vector[single]
        if not pairs:
            return perm, 0
        new_perm, emitted = _monitor_step(perm, pairs, vector)
        return new_perm, emitted

    start_tuple = tuple(a.initial for a in auts)
    start_next, start_prio = enter(start_tuple, init_perm)
    states = {(start_tuple, init_perm): 0}
    priorities = [start_prio]
    carried = {0: start_next}
    transitions = []
    queue = [(start_tuple, init_perm)]
    while queue:
        key = queue.pop()
        sid = states[key]
        tuple_state, _ = key
        out_perm = carried[sid]
        for a in alphabet:
            per_factor = [auts[i].transitions_from(q, a)
                          for i, q in enumerate(tuple_state)]
            if any(not opts for opts in per_factor):
                continue
            for combo in _product(per_factor):
                lt = tuple(t[2] for t in combo)
                rt = tuple(t[3] for t in combo)
                children = []
                for child in (lt, rt):
                    ckey = (child, out_perm)
                    if ckey not in states:
                        caps.charge(len(states) + 1, "intersection")
                        states[ckey] = len(priorities)
                        nxt, prio = enter(child, out_perm)
                        priorities.append(prio)
                        carried[states[ckey]] = nxt
                        queue.append(ckey)
                    children.append(states[ckey])
                transitions.append((sid, a, children[0], children[1]))
    return TreeAutomaton(alphabet, len(priorities), 0, tuple(transitions),
                         tuple(priorities))


def _product(option_lists):
    if not option_lists:
        yield ()
        return
    head, *tail = option_lists
    for choice in head:
        for rest in _product(tail):
            yield (choice,) + rest


def union(auts) -> TreeAutomaton:
    """Disjoint union with a fresh initial state copying each factor's
    initial transitions."""
    auts = list(auts)
    if not auts:
        raise ValueError("union needs at least one factor")
    alphabet = auts[0].alphabet
    if any(a.alphabet != alphabet for a in auts):
        raise ValueError("factors must share an alphabet")
    offset = [1]
    for a in auts[:-1]:
        offset.append(offset[-1] + a.n_states)
    priorities = [0]
    transitions = []
    for i, a in enumerate(auts):
        priorities.extend(a.priorities)
        for q, letter, l, r in a.transitions:
            transitions.append((q + offset[i], letter, l + offset[i],
                                r + offset[i]))
        for _, letter, l, r in a.transitions_from(a.initial):
            transitions.append((0, letter, l + offset[i], r + offset[i]))
    n = 1 + sum(a.n_states for a in auts)
    return TreeAutomaton(alphabet, n, 0, tuple(transitions),
                         tuple(priorities))


# --- reductions -----------------------------------------------------------

def trim(aut: TreeAutomaton) -> TreeAutomaton:
    """Keep states both reachable and productive; renumber densely."""
    productive = productive_states(aut)
    if aut.initial not in productive:
        return empty_automaton(aut.alphabet)
    good = lambda t: (t[0] in productive and t[2] in productive
                      and t[3] in productive)
    reach = {aut.initial}
    stack = [aut.initial]
    while stack:
        q = stack.pop()
        for t in aut.transitions_from(q):
            if good(t):
                for s in (t[2], t[3]):
                    if s not in reach and s in productive:
                        reach.add(s)
                        stack.append(s)
    keep = sorted(reach)
    index = {q: i for i, q in enumerate(keep)}
    trans = tuple((index[q], a, index[l], index[r])
                  for q, a, l, r in aut.transitions
                  if q in reach and good((q, a, l, r)))
    return TreeAutomaton(aut.alphabet, len(keep), index[aut.initial], trans,
                         tuple(aut.priorities[q] for q in keep))


def compress_priorities(aut: TreeAutomaton) -> TreeAutomaton:
    """Collapse priority gaps, preserving parity and relative order."""
    used = aut.priority_values
    if not used:
        return aut
    mapping = {}
    prev = None
    for p in used:
        if prev is None:
            mapping[p] = p % 2
        elif p % 2 == mapping[prev] % 2:
            mapping[p] = mapping[prev]
        else:
            mapping[p] = mapping[prev] + 1
        prev = p
    return TreeAutomaton(aut.alphabet, aut.n_states, aut.initial,
                         aut.transitions,
                         tuple(mapping[p] for p in aut.priorities))


def simulation_preorder(aut: TreeAutomaton) -> frozenset[tuple[int, int]]:
    """Direct simulation with exact priority matching.

    (q, s) in the result means s simulates q: equal priority and every
    transition of q is matched letterwise by a transition of s whose
    children simulate the respective children.  Sound for language
    containment L(A from q) <= L(A from s).
    """
    n = aut.n_states
    sim = {(q, s) for q in range(n) for s in range(n)
           if aut.priorities[q] == aut.priorities[s]}
    changed = True
    while changed:
        changed = False
        for (q, s) in list(sim):
            ok = True
            for a in aut.alphabet:
                for (_, _, l, r) in aut.transitions_from(q, a):
                    if not any((l, l2) in sim and (r, r2) in sim
                               for (_, _, l2, r2) in aut.transitions_from(s, a)):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                sim.discard((q, s))
                changed = True
    return frozenset(sim)


def bisimulation_quotient(aut: TreeAutomaton) -> TreeAutomaton:
    """Merge states with equal priority and equal outgoing behaviour.

    Partition refinement on (priority, transition signature); linear-ish and
    safe on large automata where the full simulation preorder is too costly.
    """
    color = {q: aut.priorities[q] for q in range(aut.n_states)}
    while True:
        signature = {}
        for q in range(aut.n_states):
            sig = (color[q],
                   frozenset((a, color[l], color[r])
                             for (_, a, l, r) in aut.transitions_from(q)))
            signature[q] = sig
        fresh = {}
        recolor = {}
        for q in range(aut.n_states):
            recolor[q] = fresh.setdefault(signature[q], len(fresh))
        if recolor == color:
            break
        color = recolor
    rep = {}
    for q in range(aut.n_states):
        rep.setdefault(color[q], q)
    remap = [rep[color[q]] for q in range(aut.n_states)]
    trans = tuple((remap[q], a, remap[l], remap[r])
                  for q, a, l, r in aut.transitions if remap[q] == q)
    merged = TreeAutomaton(aut.alphabet, aut.n_states, remap[aut.initial],
                           trans, aut.priorities)
    return trim(merged)


# full simulation is quadratic in states; beyond this, bisimulation only
SIMULATION_STATE_LIMIT = 200


def simplify(aut: TreeAutomaton) -> TreeAutomaton:
    """Trim, compress priorities, prune dominated transitions, and quotient
    by simulation (or plain bisimulation when large).  Preserves the
    language."""
    aut = bisimulation_quotient(compress_priorities(trim(aut)))
    if not aut.transitions or aut.n_states > SIMULATION_STATE_LIMIT:
        return aut
    sim = simulation_preorder(aut)

    # drop a transition when a sibling transition dominates it strictly
    kept = []
    for q in range(aut.n_states):
        for a in aut.alphabet:
            group = list(aut.transitions_from(q, a))
            for i, t in enumerate(group):
                dominated = False
                for j, t2 in enumerate(group):
                    if i == j:
                        continue
                    if (t[2], t2[2]) in sim and (t[3], t2[3]) in sim:
                        mutual = ((t2[2], t[2]) in sim
                                  and (t2[3], t[3]) in sim)
                        if not mutual or j < i:
                            dominated = True
                            break
                if not dominated:
                    kept.append(t)

    # merge simulation-equivalent states onto the least representative
    rep = list(range(aut.n_states))
    for q in range(aut.n_states):
        for s in range(q):
            if (q, s) in sim and (s, q) in sim:
                rep[q] = rep[s]
                break
    trans = tuple((rep[q], a, rep[l], rep[r]) for q, a, l, r in kept)
    merged = TreeAutomaton(aut.alphabet, aut.n_states, rep[aut.initial],
                           trans, aut.priorities)
    return compress_priorities(trim(merged))
