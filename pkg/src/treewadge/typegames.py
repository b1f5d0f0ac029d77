"""Alternation games on languages and on syntactic types.

The game H(L1, ..., Ln) is decided through its chain of round languages:
W_n = L_n and W_i = L_i intersected with the topological closure of
W_{i+1}.  Alternator can survive round i exactly when a tree of W_i
exists, because Constrainer's constraints are finite prefixes and every
finite prefix of a closure point extends into the next round language.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import StageOneInterpretation
from .caps import Caps, DEFAULT_CAPS
from .encoding import PORT, PAD, SpaceKind, extended_alphabet, \
    validity_automaton
from .model import FinitePrefix, RegularTree, TreeAutomaton
from .ops import closure, intersection, is_empty, simplify
from .quotient import SyntacticAlgebra

__all__ = [
    "GameVerdict",
    "alternation",
    "wins_H",
    "wins_H_inout",
    "difference_level",
    "wins_H_types",
    "wins_V_types",
    "context_class_automaton",
    "extract_round_witness",
]


@dataclass(frozen=True)
class GameVerdict:
    """Outcome of an alternation game.

    round_languages is the chain W_1, ..., W_n; Alternator wins exactly
    when W_1 is nonempty, in which case witness is a round-1 move.
    """

    winner: str
    round_languages: tuple[TreeAutomaton, ...]
    witness: RegularTree | None

    def __post_init__(self):
        if self.winner not in ("Alternator", "Constrainer"):
            raise ValueError("winner must be Alternator or Constrainer")


def alternation(word) -> int:
    """Length after collapsing adjacent equal letters."""
    out = 0
    prev = object()
    for x in word:
        if x != prev:
            out += 1
            prev = x
    return out


def wins_H(languages, caps: Caps = DEFAULT_CAPS) -> GameVerdict:
    """Decide H(L1, ..., Ln) via the round-language chain."""
    languages = list(languages)
    if not languages:
        raise ValueError("the game needs at least one round")
    alphabet = languages[0].alphabet
    if any(l.alphabet != alphabet for l in languages):
        raise ValueError("alphabet mismatch across rounds")
    chain = [None] * len(languages)
    chain[-1] = simplify(languages[-1])
    for i in range(len(languages) - 2, -1, -1):
        chain[i] = simplify(intersection(
            [languages[i], closure(chain[i + 1])], caps))
    empty, witness = is_empty(chain[0])
    winner = "Constrainer" if empty else "Alternator"
    return GameVerdict(winner, tuple(chain), witness)


def wins_H_inout(lang: TreeAutomaton, co_lang: TreeAutomaton, n: int,
                 caps: Caps = DEFAULT_CAPS) -> GameVerdict:
    """H^{in,out}(L, n): rounds alternate L, complement, L, ..."""
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = [lang if i % 2 == 0 else co_lang for i in range(n)]
    return wins_H(seq, caps)


def difference_level(lang: TreeAutomaton, co_lang: TreeAutomaton,
                     max_n: int = 8,
                     caps: Caps = DEFAULT_CAPS) -> int | None:
    """Smallest n with Constrainer winning H^{in,out}(L, n+1), if any.

    Constrainer's win at n+1 rounds places L in the n-th difference level
    of the open sets; None means Alternator won through max_n + 1 rounds.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    for n in range(1, max_n + 1):
        verdict = wins_H_inout(lang, co_lang, n + 1, caps)
        if verdict.winner == "Constrainer":
            return n
    return None


def _h_rep(syn: SyntacticAlgebra, h):
    rep = syn.project_h.get(h, h)
    if rep not in syn.algebra.H:
        raise ValueError(f"not a syntactic tree type: {h}")
    return rep


def _v_rep(syn: SyntacticAlgebra, v):
    rep = syn.project_v.get(v, v)
    if rep not in syn.algebra.V:
        raise ValueError(f"not a syntactic context type: {v}")
    return rep


def wins_H_types(syn: SyntacticAlgebra, types,
                 caps: Caps = DEFAULT_CAPS) -> bool:
    """Membership of a tree-type sequence in the H-game relation."""
    langs = [syn.class_automata[_h_rep(syn, h)] for h in types]
    return wins_H(langs, caps).winner == "Alternator"


def context_class_automaton(interp: StageOneInterpretation,
                            targets: frozenset) -> TreeAutomaton:
    """Automaton for the context encodings whose type lies in `targets`.

    Runs a deterministic summary along the guessed root-to-port path:
    triples (entry state, current state, maximal priority on the strict
    path so far).  Off-path subtrees carry a guessed tree type verified by
    the embedded exact class automaton, so the summary at the port equals
    the context's true type.  Path states are odd, hence a run that never
    reaches the port rejects, which also validates the direction guesses.
    """
    aut = interp.automaton
    ext = extended_alphabet(aut.alphabet)
    side_types = sorted(interp.class_automata,
                        key=lambda s: (len(s), sorted(s)))

    def step(s, letter, direction, h):
        out = set()
        for (q0, q, m) in s:
            m2 = max(m, aut.priorities[q])
            for (_, _, l, r) in aut.transitions_from(q, letter):
                if direction == "L" and r in h:
                    out.add((q0, l, m2))
                if direction == "R" and l in h:
                    out.add((q0, r, m2))
        return frozenset(out)

    initial_s = frozenset((q, q, -1) for q in range(aut.n_states))
    tracking = {initial_s: 0}
    track_edges = []  # (sid, letter, direction, h, s2)
    port_from = []  # tracking ids with an accepted port
    queue = [initial_s]
    while queue:
        s = queue.pop()
        sid = tracking[s]
        shaped = frozenset((q0, m, q) for (q0, q, m) in s)
        if shaped in targets:
            port_from.append(sid)
        for a in aut.alphabet:
            for direction in ("L", "R"):
                for h in side_types:
                    s2 = step(s, a, direction, h)
                    if not s2:
                        continue
                    if s2 not in tracking:
                        tracking[s2] = len(tracking)
                        queue.append(s2)
                    track_edges.append((sid, a, direction, h, tracking[s2]))

    n_track = len(tracking)
    offsets = {}
    total = n_track
    for h in side_types:
        offsets[h] = total
        total += interp.class_automata[h].n_states
    pad = total
    total += 1

    priorities = [1] * n_track
    for h in side_types:
        priorities.extend(interp.class_automata[h].priorities)
    priorities.append(0)

    transitions = []
    for (sid, a, direction, h, s2) in track_edges:
        side_init = offsets[h] + interp.class_automata[h].initial
        if direction == "L":
            transitions.append((sid, a, s2, side_init))
        else:
            transitions.append((sid, a, side_init, s2))
    for sid in port_from:
        transitions.append((sid, PORT, pad, pad))
    for h in side_types:
        off = offsets[h]
        for (q, a, l, r) in interp.class_automata[h].transitions:
            transitions.append((q + off, a, l + off, r + off))
    transitions.append((pad, PAD, pad, pad))
    return TreeAutomaton(ext, total, 0, tuple(transitions),
                         tuple(priorities))


_class_memo = {}


def _context_language(syn: SyntacticAlgebra, rep,
                      caps: Caps = DEFAULT_CAPS) -> TreeAutomaton:
    aut = syn.interpretation.automaton
    targets = frozenset(syn.classes_v[rep])
    key = (aut, targets)
    if key not in _class_memo:
        raw = context_class_automaton(syn.interpretation, targets)
        valid = validity_automaton(aut.alphabet, SpaceKind.CONTEXT)
        _class_memo[key] = simplify(intersection([raw, valid], caps))
    return _class_memo[key]


def wins_V_types(syn: SyntacticAlgebra, types,
                 caps: Caps = DEFAULT_CAPS) -> bool:
    """Membership of a context-type sequence in the V-game relation.

    The chain runs over encoded contexts; the port picked in round 1 needs
    no bookkeeping, since any deep enough constraining prefix pins it.
    """
    langs = [_context_language(syn, _v_rep(syn, v), caps) for v in types]
    return wins_H(langs, caps).winner == "Alternator"


def prefix_automaton(prefix: FinitePrefix,
                     aut_like: TreeAutomaton) -> TreeAutomaton:
    """Safety automaton for the trees matching a finite prefix."""
    alphabet = aut_like.alphabet
    for _, a in prefix.entries:
        if a not in alphabet:
            raise ValueError(f"prefix letter {a!r} outside the alphabet")
    nodes = {w: i for i, (w, _) in enumerate(prefix.entries)}
    top = len(nodes)
    transitions = []
    for w, a in prefix.entries:
        l = nodes.get(w + "L", top)
        r = nodes.get(w + "R", top)
        transitions.append((nodes[w], a, l, r))
    for a in alphabet:
        transitions.append((top, a, top, top))
    return TreeAutomaton(alphabet, top + 1, nodes[""], tuple(transitions),
                         tuple([0] * (top + 1)))


def extract_round_witness(prefix: FinitePrefix, w: TreeAutomaton,
                          caps: Caps = DEFAULT_CAPS) -> RegularTree:
    """A regular tree extending the prefix inside the round language."""
    combined = intersection([prefix_automaton(prefix, w), w], caps)
    empty, witness = is_empty(combined)
    if empty:
        raise ValueError("no extension of the prefix stays in the round "
                         "language; the round is lost")
    if not prefix.matches_tree(witness):
        raise AssertionError("extracted witness does not match the prefix")
    return witness
