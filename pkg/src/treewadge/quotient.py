"""Syntactic algebra: quotient of the stage-one algebra by language
equivalence of plugging behaviors.

Two tree types are merged when the same multicontexts map them into the
language; two context types when the same environments do.  Both checks are
automata equivalences over encoded partial trees, using the plugging
automata built here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (UNIT, StageOneInterpretation, ThinAlgebra,
                      sharp_exponent)
from .caps import Caps, DEFAULT_CAPS
from .encoding import PAD, PORT, extended_alphabet
from .model import Alphabet, RegularTree, TreeAutomaton
from .ops import (accepts_regular_tree, intersection, is_empty, simplify,
                  union)
from .sampling import random_regular_tree

__all__ = [
    "SyntacticAlgebra",
    "plugging_automaton_tree",
    "plugging_automaton_context",
    "compute_equivalence",
    "quotient",
    "syntactic_algebra",
    "language_quotient",
]


def _pad_priority(priorities):
    """Any even value works for an accepting sink; reusing the largest even
    priority already present avoids widening the priority range, keeping
    the automaton in the cheaper determinization regimes."""
    evens = [p for p in priorities if p % 2 == 0]
    return max(evens) if evens else 0


def plugging_automaton_tree(aut: TreeAutomaton, h) -> TreeAutomaton:
    """C_h: accepts the valid multicontext encodings D with D[h] in L.

    Simulates the automaton on the letters of D; a PORT node admits a
    transition exactly when the current state lies in h, standing in for an
    accepting run over any plugged tree of type h.  Runs die on every
    invalid encoding, so no separate validity intersection is needed.
    """
    ext = extended_alphabet(aut.alphabet)
    pad = aut.n_states
    trans = list(aut.transitions)
    for q in sorted(h):
        trans.append((q, PORT, pad, pad))
    trans.append((pad, PAD, pad, pad))
    return TreeAutomaton(ext, aut.n_states + 1, aut.initial, tuple(trans),
                         aut.priorities + (_pad_priority(aut.priorities),))


def plugging_automaton_context(aut: TreeAutomaton, v) -> TreeAutomaton:
    """D_v: accepts the valid environment encodings E with E[v] in L.

    At a PORT node in state q the run picks a triple (q, l, q') of v and
    moves left into an intermediate state of priority max(l, priority of
    q'), which then behaves as q'.  Folding the finite port-to-port path of
    the plugged context into one maximal priority preserves every branch's
    limit superior.
    """
    ext = extended_alphabet(aut.alphabet)
    vias = sorted({(l, q2) for (_, l, q2) in v})
    via_id = {lv: aut.n_states + i for i, lv in enumerate(vias)}
    pad = aut.n_states + len(vias)
    trans = list(aut.transitions)
    priorities = list(aut.priorities)
    for (l, q2) in vias:
        vid = via_id[(l, q2)]
        priorities.append(max(l, aut.priorities[q2]))
        for (_, a, tl, tr) in aut.transitions_from(q2):
            trans.append((vid, a, tl, tr))
    # PORT transitions fire from plain states and from via states alike
    for (q, l, q2) in sorted(v):
        trans.append((q, PORT, via_id[(l, q2)], pad))
        for (l0, q0) in vias:
            if q0 == q:
                trans.append((via_id[(l0, q0)], PORT, via_id[(l, q2)], pad))
    trans.append((pad, PAD, pad, pad))
    priorities.append(_pad_priority(priorities))
    return TreeAutomaton(ext, pad + 1, aut.initial, tuple(trans),
                         tuple(priorities))


def _encoding_samples(alphabet: Alphabet, leaf_ports: bool, seed: int = 11,
                      count: int = 160):
    """Random valid partial-tree encodings, as regular trees.

    Trees are drawn over the letters plus PORT, then repaired into valid
    encodings: a PORT node keeps its left subtree and pads its right when
    ports are unary (environments), or pads both subtrees when ports are
    leaves (multicontexts).  Used to separate plugging languages cheaply
    before any exact automata comparison.
    """
    rng = random.Random(seed)
    base = Alphabet(alphabet.letters + (PORT,))
    samples = []
    for _ in range(count):
        rt = random_regular_tree(base, rng, max_vertices=7)
        labels = list(rt.labels)
        succ = [list(s) for s in rt.succ]
        pad = len(labels)
        labels.append(PAD)
        succ.append([pad, pad])
        for i, lab in enumerate(rt.labels):
            if lab == PORT:
                if leaf_ports:
                    succ[i] = [pad, pad]
                else:
                    succ[i][1] = pad
        # padding can orphan vertices; keep the reachable part only
        seen = {rt.root}
        stack = [rt.root]
        while stack:
            v = stack.pop()
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        order = sorted(seen)
        new_id = {v: i for i, v in enumerate(order)}
        samples.append(RegularTree(
            tuple(labels[v] for v in order),
            tuple((new_id[succ[v][0]], new_id[succ[v][1]]) for v in order),
            new_id[rt.root]))
    return samples


def _partition(elements, same):
    classes = []
    for x in elements:
        for cls in classes:
            if same(cls[0], x):
                cls.append(x)
                break
        else:
            classes.append([x])
    return [frozenset(cls) for cls in classes]


def _tree_signature(alg: ThinAlgebra, h):
    """Exact acceptance behavior of h under all single-port contexts; a
    sound separator, since multi-port distinguishers with finitely many
    ports reduce to single-port ones one replacement at a time."""
    acc = alg.accepting
    return tuple(alg.app(v, h) in acc for v in alg.V + (UNIT,))


def _context_signature(alg: ThinAlgebra, v):
    """Acceptance behavior of v in single-insertion and periodic
    environments, from the tables; necessary for plugging equivalence."""
    acc = alg.accepting
    vu = alg.V + (UNIT,)
    finite = tuple(alg.app(alg.comp(alg.comp(x, v), y), h) in acc
                   for x in vu for y in vu for h in alg.H)
    periodic = tuple(
        alg.app(x, alg.omega_of(alg.sharp_power(alg.comp(y, v)))) in acc
        for x in vu for y in vu)
    return finite + periodic


def compute_equivalence(alg: ThinAlgebra, interp: StageOneInterpretation,
                        caps: Caps = DEFAULT_CAPS):
    """Partitions of H and V under plugging equivalence.

    Elements are first split by exact table signatures and by acceptance of
    sampled encodings; exact language comparisons then only run inside
    candidate blocks.  A comparison never complements a plugging
    automaton: a separating encoding is accepted for x and rejected for y,
    and rejection is itself a plugging property over the complement of the
    base language, so both sides are small plugging automata, one built
    from the dual automaton and the jointly realized dual type."""
    aut = interp.automaton

    def partition_by_language(elements, plug, signature, leaf_ports, duals):
        auts = {}
        dual_auts = {}
        samples = _encoding_samples(aut.alphabet, leaf_ports)

        def get(x):
            if x not in auts:
                auts[x] = simplify(plug(aut, x))
            return auts[x]

        def get_dual(x):
            if x not in dual_auts:
                dual_auts[x] = simplify(plug(interp.dual_automaton, duals[x]))
            return dual_auts[x]

        def separated(x, y):
            empty, _ = is_empty(intersection([get(x), get_dual(y)], caps))
            return not empty

        def same(x, y):
            if get(x) == get(y):
                return True
            return not separated(x, y) and not separated(y, x)

        blocks = {}
        for x in elements:
            blocks.setdefault(signature(alg, x), []).append(x)
        classes = []
        for _, block in sorted(blocks.items()):
            if len(block) > 1:
                # sampled acceptance is a sound separator; refine first
                refined = {}
                for x in block:
                    vec = tuple(accepts_regular_tree(get(x), rt)
                                for rt in samples)
                    refined.setdefault(vec, []).append(x)
                subblocks = [refined[v] for v in sorted(refined)]
            else:
                subblocks = [block]
            for sub in subblocks:
                if len(sub) == 1:
                    classes.append(frozenset(sub))
                else:
                    classes.extend(_partition(sub, same))
        return classes

    h_classes = partition_by_language(alg.H, plugging_automaton_tree,
                                      _tree_signature, leaf_ports=True,
                                      duals=interp.dual_tree)
    v_classes = partition_by_language(alg.V, plugging_automaton_context,
                                      _context_signature, leaf_ports=False,
                                      duals=interp.dual_context)
    return h_classes, v_classes


def _sort_key(s):
    return (len(s), sorted(s))


@dataclass(frozen=True)
class SyntacticAlgebra:
    """Quotient algebra with projections back to the stage-one algebra.

    Syntactic elements are represented by their minimal stage-one member.
    classes_h and classes_v map each representative to its full class;
    class_automata recognizes the exact tree language of each syntactic
    tree type (union of the member stage-one class languages).
    """

    algebra: ThinAlgebra
    project_h: dict
    project_v: dict
    classes_h: dict
    classes_v: dict
    class_automata: dict
    stage_one: ThinAlgebra
    interpretation: StageOneInterpretation


def quotient(alg: ThinAlgebra, interp: StageOneInterpretation,
             h_classes, v_classes,
             caps: Caps = DEFAULT_CAPS) -> SyntacticAlgebra:
    """Build the quotient algebra, asserting well-definedness throughout."""
    def rep_of(classes):
        reps = {}
        for cls in classes:
            r = min(cls, key=_sort_key)
            for x in cls:
                reps[x] = r
        return reps

    proj_h = rep_of(h_classes)
    proj_v = rep_of(v_classes)
    proj_v[UNIT] = UNIT
    H = tuple(sorted({proj_h[h] for h in alg.H}, key=_sort_key))
    V = tuple(sorted({proj_v[v] for v in alg.V}, key=_sort_key))

    def check(table, name, value):
        if name in table and table[name] != value:
            raise AssertionError(f"quotient tables disagree across a class "
                                 f"at {name}")
        table[name] = value

    compose = {}
    act = {}
    omega = {}
    inject_left = {}
    inject_right = {}
    for u in alg.V:
        for v in alg.V:
            check(compose, (proj_v[u], proj_v[v]), proj_v[alg.comp(u, v)])
        for h in alg.H:
            check(act, (proj_v[u], proj_h[h]), proj_h[alg.app(u, h)])
        check(omega, proj_v[u], proj_h[alg.omega_of(u)])
    for (a, h), v in alg.inject_left.items():
        check(inject_left, (a, proj_h[h]), proj_v[v])
    for (a, h), v in alg.inject_right.items():
        check(inject_right, (a, proj_h[h]), proj_v[v])
    accepting = {}
    for h in alg.H:
        check(accepting, proj_h[h], h in alg.accepting)
    acc = frozenset(r for r, flag in accepting.items() if flag)
    for h in H:
        act[(UNIT, h)] = h
    for v in V:
        compose[(UNIT, v)] = v
        compose[(v, UNIT)] = v
    compose[(UNIT, UNIT)] = UNIT
    sharp = sharp_exponent(lambda a, b: compose[(a, b)], V) if V else 1
    qalg = ThinAlgebra(H, V, compose, act, omega, inject_left, inject_right,
                       acc, sharp)

    classes_h = {min(cls, key=_sort_key): cls for cls in h_classes}
    classes_v = {min(cls, key=_sort_key): cls for cls in v_classes}
    class_automata = {}
    for r, cls in classes_h.items():
        members = [interp.class_automata[h] for h in sorted(cls, key=_sort_key)]
        class_automata[r] = simplify(union(members))
    return SyntacticAlgebra(qalg, proj_h, proj_v, classes_h, classes_v,
                            class_automata, alg, interp)


def syntactic_algebra(alg: ThinAlgebra, interp: StageOneInterpretation,
                      caps: Caps = DEFAULT_CAPS) -> SyntacticAlgebra:
    h_classes, v_classes = compute_equivalence(alg, interp, caps)
    return quotient(alg, interp, h_classes, v_classes, caps)


def language_quotient(syn: SyntacticAlgebra, v) -> frozenset:
    """v^{-1}(L) as a set of syntactic tree types."""
    alg = syn.algebra
    if v != UNIT and v not in alg.V:
        raise ValueError("not a syntactic context type")
    return frozenset(h for h in alg.H if alg.app(v, h) in alg.accepting)
