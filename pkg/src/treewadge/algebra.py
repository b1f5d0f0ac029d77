"""Thin algebras: carriers, operations, axioms, and the stage-one
construction from a tree automaton.

The stage-one algebra interprets a tree type as the set of automaton states
from which some accepting run over the tree exists, and a context type as
the set of triples (entry state, maximal priority on the path to the port,
port state).  Its carriers are restricted to the realized elements: tree
types are found by exact emptiness of candidate class languages, context
types by closing the one-step generators under composition (every context
factors through its finite-depth port into one-step contexts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .caps import Caps, DEFAULT_CAPS, ResourceCapError
from .complement import complement
from .model import TreeAutomaton, RegularTree
from .ops import accepts_regular_tree, intersection, is_empty, simplify
from .sampling import tree_stream

__all__ = [
    "UNIT",
    "ThinAlgebra",
    "StageOneInterpretation",
    "realized_tree_types",
    "realized_context_types",
    "stage_one_algebra",
    "sharp_exponent",
    "evaluate_type",
    "validate_algebra",
    "dump_algebra",
]

# the adjoined neutral context type
UNIT = "1"


@dataclass(frozen=True)
class ThinAlgebra:
    """Finite thin algebra (H, V) with the unit adjoined to V.

    compose and act tables are total over V plus the unit; omega is defined
    on V only.  inject_left[(a, h)] is the type of the one-step context
    a(port, t) for any tree t of type h, and inject_right mirrors it.
    """

    H: tuple
    V: tuple
    compose: dict
    act: dict
    omega: dict
    inject_left: dict
    inject_right: dict
    accepting: frozenset
    sharp: int

    def comp(self, u, v):
        if u == UNIT:
            return v
        if v == UNIT:
            return u
        return self.compose[(u, v)]

    def app(self, v, h):
        if v == UNIT:
            return h
        return self.act[(v, h)]

    def power(self, v, n):
        if n < 1:
            raise ValueError("power needs n >= 1")
        out = v
        for _ in range(n - 1):
            out = self.comp(out, v)
        return out

    def sharp_power(self, v):
        return self.power(v, self.sharp)

    def omega_of(self, v):
        if v == UNIT:
            raise ValueError("omega is undefined on the unit")
        return self.omega[v]


@dataclass(frozen=True)
class StageOneInterpretation:
    """Link between a stage-one algebra and its source automaton.

    tree_sets and context_sets spell out each carrier element as a state
    subset or triple set; class_automata[h] recognizes exactly the trees of
    type h.  tree_witnesses[h] is a regular tree of type h.  The dual
    fields describe the same objects over dual_automaton, an automaton for
    the complement language: dual_tree[h] is the dual type of the witness
    of h, and dual_context[v] is the dual type of one concrete context
    realizing v, so (v, dual_context[v]) are jointly realized.
    """

    automaton: TreeAutomaton
    tree_sets: dict
    context_sets: dict
    class_automata: dict
    tree_witnesses: dict
    dual_automaton: TreeAutomaton
    dual_tree: dict
    dual_context: dict


def _sort_h(elements):
    return tuple(sorted(elements, key=lambda s: (len(s), sorted(s))))


def _sort_v(elements):
    return tuple(sorted(elements, key=lambda s: (len(s), sorted(s))))


def _one_step(aut: TreeAutomaton, letter, left, right):
    """Tree types one level up: left and right are the subtree types."""
    return frozenset(q for q in range(aut.n_states)
                     if any(l in left and r in right
                            for (_, _, l, r) in aut.transitions_from(q, letter)))


def evaluate_type(aut: TreeAutomaton, rt: RegularTree) -> frozenset:
    """The stage-one type of a regular tree: the states accepting it."""
    if any(lab not in aut.alphabet for lab in rt.labels):
        raise ValueError("tree labels outside the automaton's alphabet")
    return frozenset(q for q in range(aut.n_states)
                     if accepts_regular_tree(aut.with_initial(q), rt))


def realized_tree_types(aut: TreeAutomaton, caps: Caps = DEFAULT_CAPS):
    """Exactly the realized tree types, each with its exact class automaton.

    A candidate subset S is realized when the class language, the
    intersection of the state languages of S's members with the complements
    of the others, is nonempty.  Two shortcuts keep the exact checks rare:
    a greatest-fixpoint consistency filter discards subsets that no letter
    can produce from surviving subsets, and sampled trees certify many
    survivors positively before any emptiness test runs.
    """
    if aut.n_states > caps.carrier_cap:
        raise ResourceCapError(
            f"carrier enumeration over {aut.n_states} states "
            f"(cap {caps.carrier_cap})")
    n = aut.n_states
    candidates = set()
    for mask in range(1 << n):
        candidates.add(frozenset(q for q in range(n) if mask >> q & 1))

    # greatest fixpoint: keep S only while some letter and surviving pair
    # of child types produce it; types of real trees always survive
    while True:
        produced = set()
        for a in aut.alphabet:
            for left in candidates:
                for right in candidates:
                    s = _one_step(aut, a, left, right)
                    if s in candidates:
                        produced.add(s)
        if produced == candidates:
            break
        candidates = produced

    realized = set()
    witnesses = {}
    for rt in tree_stream(aut.alphabet, seed=7, count=40, max_vertices=4):
        s = evaluate_type(aut, rt)
        if s not in candidates:
            raise AssertionError("sampled type escaped the consistency filter")
        realized.add(s)
        witnesses.setdefault(s, rt)

    # states with identical transition rows have equal languages (the root
    # priority of a run occurs once per branch, so it never matters); share
    # one automaton per row so downstream work is done once
    rows = {}
    state_auts = []
    for q in range(n):
        row = frozenset((a, l, r) for (_, a, l, r) in aut.transitions_from(q))
        if row not in rows:
            rows[row] = simplify(aut.with_initial(q))
        state_auts.append(rows[row])
    co_auts = [complement(state_auts[q], caps) for q in range(n)]
    # inclusion matrix of the state languages, used to drop redundant
    # factors: a positive factor is redundant above a smaller state
    # language, a complement factor above a larger one
    incl = {}
    for q in range(n):
        for r in range(n):
            e, _ = is_empty(intersection([state_auts[q], co_auts[r]], caps))
            incl[(q, r)] = e

    def keep_minimal(items, below):
        kept = []
        for q in items:
            if not any(below(k, q) for k in kept):
                kept.append(q)
        return kept

    def class_automaton(s):
        pos = keep_minimal(sorted(s), lambda k, q: incl[(k, q)])
        neg = keep_minimal(sorted(set(range(n)) - s),
                           lambda k, q: incl[(q, k)])
        factors = [state_auts[q] for q in pos] + [co_auts[q] for q in neg]
        if not factors:
            raise AssertionError("class automaton needs at least one factor")
        return simplify(intersection(factors, caps))

    class_automata = {}
    for s in sorted(candidates, key=lambda x: (len(x), sorted(x))):
        cls = class_automaton(s)
        if s in realized:
            class_automata[s] = cls
            continue
        empty, witness = is_empty(cls)
        if not empty:
            realized.add(s)
            class_automata[s] = cls
            witnesses[s] = witness
    return realized, class_automata, witnesses


def _generators(aut: TreeAutomaton, realized_h):
    """inject_left and inject_right tables from the one-step formulas."""
    inject_left = {}
    inject_right = {}
    for a in aut.alphabet:
        for h in realized_h:
            left = frozenset((q, aut.priorities[q], l)
                             for q in range(aut.n_states)
                             for (_, _, l, r) in aut.transitions_from(q, a)
                             if r in h)
            right = frozenset((q, aut.priorities[q], r)
                              for q in range(aut.n_states)
                              for (_, _, l, r) in aut.transitions_from(q, a)
                              if l in h)
            inject_left[(a, h)] = left
            inject_right[(a, h)] = right
    return inject_left, inject_right


def _compose_triples(u, v):
    out = {}
    for (q, lu, mid) in u:
        for (q2, lv, qq) in v:
            if q2 != mid:
                continue
            key = (q, qq)
            pr = max(lu, lv)
            # larger path priorities never help twice: keep every distinct
            # priority, the triple sets are over (state, priority, state)
            out.setdefault(key, set()).add(pr)
    return frozenset((q, p, qq) for (q, qq), ps in out.items() for p in ps)


def realized_context_types(aut: TreeAutomaton, realized_h,
                           caps: Caps = DEFAULT_CAPS, dual=None):
    """Compose-closure of the one-step generators.

    When dual supplies (automaton for the complement language, dual type
    of each witness tree), every realized context type v is paired with
    the dual type of one concrete context realizing v, obtained by
    mirroring the derivation of v: one-step generators read their dual off
    the dual automaton's transitions into the witness's dual type, and
    compositions compose the duals.
    """
    inject_left, inject_right = _generators(aut, realized_h)
    dual_context = {}
    if dual is not None:
        dual_aut, dual_tree = dual
        for inject, pick in ((inject_left, lambda l, r: (l, r)),
                             (inject_right, lambda l, r: (r, l))):
            for (a, h), v in inject.items():
                g = dual_tree[h]
                trip = frozenset(
                    (q, dual_aut.priorities[q], pick(l, r)[0])
                    for q in range(dual_aut.n_states)
                    for (_, _, l, r) in dual_aut.transitions_from(q, a)
                    if pick(l, r)[1] in g)
                dual_context.setdefault(v, trip)
    gens = set(inject_left.values()) | set(inject_right.values())
    closed = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for v in frontier:
            for u in list(closed):
                for hi, lo in ((u, v), (v, u)):
                    prod = _compose_triples(hi, lo)
                    if prod not in closed:
                        caps.charge(len(closed) + 1, "context type closure")
                        closed.add(prod)
                        nxt.append(prod)
                        if dual is not None:
                            dual_context[prod] = _compose_triples(
                                dual_context[hi], dual_context[lo])
        frontier = nxt
    return closed, inject_left, inject_right, dual_context


def sharp_exponent(compose_fn, elements) -> int:
    """Smallest k >= 1 with v^k = v^(2k) for every element."""
    max_tail = 1
    period_lcm = 1
    for v in elements:
        seen = {v: 1}
        cur = v
        k = 1
        while True:
            k += 1
            cur = compose_fn(cur, v)
            if cur in seen:
                tail = seen[cur]
                period = k - tail
                max_tail = max(max_tail, tail)
                period_lcm = math.lcm(period_lcm, period)
                break
            seen[cur] = k
    k = period_lcm * ((max_tail + period_lcm - 1) // period_lcm)
    return max(1, k)


def _act_triples(v, h):
    return frozenset(q for (q, _, qq) in v if qq in h)


def _omega_idempotent(e):
    """Types of e^infinity for an idempotent context type e."""
    return frozenset(q for (q, _, q1) in e
                     if any(q2 == q1 and q3 == q1 and p % 2 == 0
                            for (q2, p, q3) in e))


def stage_one_algebra(aut: TreeAutomaton, caps: Caps = DEFAULT_CAPS):
    """The stage-one thin algebra of the automaton, with interpretation."""
    realized_h, class_automata, witnesses = realized_tree_types(aut, caps)
    dual_aut = complement(aut, caps)
    dual_tree = {h: evaluate_type(dual_aut, witnesses[h]) for h in realized_h}
    realized_v, inject_left, inject_right, dual_context = \
        realized_context_types(aut, realized_h, caps, (dual_aut, dual_tree))

    H = _sort_h(realized_h)
    V = _sort_v(realized_v)
    h_set = set(H)
    compose = {}
    for u in V:
        for v in V:
            prod = _compose_triples(u, v)
            if prod not in realized_v:
                raise AssertionError("compose escaped the realized carrier")
            compose[(u, v)] = prod

    def comp(u, v):
        return compose[(u, v)]

    sharp = sharp_exponent(comp, V) if V else 1

    act = {}
    for v in V:
        for h in H:
            out = _act_triples(v, h)
            if out not in h_set:
                raise AssertionError("act escaped the realized carrier")
            act[(v, h)] = out
    for h in H:
        act[(UNIT, h)] = h
    for v in V:
        compose[(UNIT, v)] = v
        compose[(v, UNIT)] = v
    compose[(UNIT, UNIT)] = UNIT

    omega = {}
    for v in V:
        e = v
        for _ in range(sharp - 1):
            e = comp(e, v)
        out = _omega_idempotent(e)
        if out not in h_set:
            raise AssertionError("omega escaped the realized carrier")
        omega[v] = out

    accepting = frozenset(h for h in H if aut.initial in h)
    alg = ThinAlgebra(H, V, compose, act, omega, inject_left, inject_right,
                      accepting, sharp)
    interp = StageOneInterpretation(
        aut,
        {h: h for h in H},
        {v: v for v in V},
        class_automata,
        witnesses,
        dual_aut,
        dual_tree,
        dual_context)
    return alg, interp


def validate_algebra(alg: ThinAlgebra) -> None:
    """Exhaustively check the thin-algebra axioms; raise on any failure."""
    Vu = alg.V + (UNIT,)
    for u in Vu:
        for v in Vu:
            for w in Vu:
                if alg.comp(alg.comp(u, v), w) != alg.comp(u, alg.comp(v, w)):
                    raise ValueError(f"compose not associative at {u}, {v}, {w}")
    for u in Vu:
        for v in Vu:
            for h in alg.H:
                if alg.app(alg.comp(u, v), h) != alg.app(u, alg.app(v, h)):
                    raise ValueError(f"action law fails at {u}, {v}, {h}")
    for u in alg.V:
        for v in alg.V:
            left = alg.omega_of(alg.comp(u, v))
            right = alg.app(u, alg.omega_of(alg.comp(v, u)))
            if left != right:
                raise ValueError(f"omega rotation law fails at {u}, {v}")
    for v in alg.V:
        for n in (1, 2, 3):
            if alg.omega_of(alg.power(v, n)) != alg.omega_of(v):
                raise ValueError(f"omega power law fails at {v}, n={n}")
        s = alg.sharp_power(v)
        if alg.comp(s, s) != s:
            raise ValueError(f"sharp power of {v} is not idempotent")
    for v in alg.V:
        if alg.comp(UNIT, v) != v or alg.comp(v, UNIT) != v:
            raise ValueError(f"unit not neutral for compose at {v}")
    for h in alg.H:
        if alg.app(UNIT, h) != h:
            raise ValueError(f"unit not neutral for act at {h}")


def dump_algebra(alg: ThinAlgebra) -> str:
    """Stable structured-text listing of carriers and tables."""
    h_name = {h: f"h{i}" for i, h in enumerate(alg.H)}
    v_name = {v: f"v{i}" for i, v in enumerate(alg.V)}
    v_name[UNIT] = "1"

    def show_h(h):
        return "{" + ",".join(str(q) for q in sorted(h)) + "}"

    def show_v(v):
        if v == UNIT:
            return "1"
        return "{" + ",".join(f"({q},{p},{qq})" for q, p, qq in sorted(v)) + "}"

    lines = []
    lines.append(f"H ({len(alg.H)} elements):")
    for h in alg.H:
        lines.append(f"  {h_name[h]} = {show_h(h)}")
    lines.append(f"V ({len(alg.V)} elements, plus unit):")
    for v in alg.V:
        lines.append(f"  {v_name[v]} = {show_v(v)}")
    lines.append("compose:")
    for u in alg.V:
        for v in alg.V:
            lines.append(f"  {v_name[u]} . {v_name[v]} = "
                         f"{v_name[alg.comp(u, v)]}")
    lines.append("act:")
    for v in alg.V:
        for h in alg.H:
            lines.append(f"  {v_name[v]} ( {h_name[h]} ) = "
                         f"{h_name[alg.app(v, h)]}")
    lines.append("omega:")
    for v in alg.V:
        lines.append(f"  {v_name[v]} ^inf = {h_name[alg.omega_of(v)]}")
    lines.append("injectLeft:")
    for (a, h), v in sorted(alg.inject_left.items(),
                            key=lambda kv: (str(kv[0][0]), h_name[kv[0][1]])):
        lines.append(f"  {a} ( _, {h_name[h]} ) = {v_name[v]}")
    lines.append("injectRight:")
    for (a, h), v in sorted(alg.inject_right.items(),
                            key=lambda kv: (str(kv[0][0]), h_name[kv[0][1]])):
        lines.append(f"  {a} ( {h_name[h]}, _ ) = {v_name[v]}")
    lines.append("accepting: " +
                 " ".join(h_name[h] for h in alg.H if h in alg.accepting))
    lines.append(f"sharp: {alg.sharp}")
    return "\n".join(lines) + "\n"
