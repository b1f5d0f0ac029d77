"""Data model: alphabets, parity tree automata, regular trees, finite prefixes.

Acceptance semantics are fixed throughout the package: a run of a
nondeterministic parity tree automaton is accepting when, on every infinite
branch, the largest priority occurring infinitely often is even (max-even).
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "Alphabet",
    "Transition",
    "TreeAutomaton",
    "RegularTree",
    "FinitePrefix",
    "FormatError",
    "parse_automaton",
    "serialize_automaton",
    "parse_regular_tree",
    "serialize_regular_tree",
    "unfold",
]

# A transition is (state, letter, left-state, right-state).
Transition = tuple[int, str, int, int]


class FormatError(ValueError):
    """Raised on malformed or semantically invalid input files."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of distinct symbol names."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet letters must be distinct")

    def __contains__(self, letter):
        return letter in self.letters

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def index(self, letter):
        return self.letters.index(letter)


@dataclass(frozen=True)
class TreeAutomaton:
    """Nondeterministic parity tree automaton (max-even acceptance)."""

    alphabet: Alphabet
    n_states: int
    initial: int
    transitions: tuple[Transition, ...]
    priorities: tuple[int, ...]
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.initial < self.n_states:
            raise ValueError("initial state out of range")
        if len(self.priorities) != self.n_states:
            raise ValueError("priority must be defined on every state")
        if any(p < 0 for p in self.priorities):
            raise ValueError("priorities must be nonnegative")
        index = {}
        for t in self.transitions:
            q, a, l, r = t
            for s in (q, l, r):
                if not 0 <= s < self.n_states:
                    raise ValueError(f"transition {t} references unknown state")
            if a not in self.alphabet:
                raise ValueError(f"transition {t} references unknown letter {a!r}")
            index.setdefault((q, a), []).append(t)
        canonical = tuple(sorted(set(self.transitions),
                                 key=self._transition_key))
        object.__setattr__(self, "transitions", canonical)
        object.__setattr__(self, "_index",
                           {k: tuple(sorted(set(v), key=self._transition_key))
                            for k, v in index.items()})

    def _transition_key(self, t):
        q, a, l, r = t
        return (q, self.alphabet.index(a), l, r)

    def transitions_from(self, state, letter=None):
        """Transitions leaving `state`, optionally restricted to one letter."""
        if letter is not None:
            return self._index.get((state, letter), ())
        out = []
        for a in self.alphabet:
            out.extend(self._index.get((state, a), ()))
        return tuple(out)

    def with_initial(self, state):
        """Same automaton started from a different state."""
        if state == self.initial:
            return self
        return TreeAutomaton(self.alphabet, self.n_states, state,
                             self.transitions, self.priorities)

    @property
    def priority_values(self):
        return tuple(sorted(set(self.priorities)))


@dataclass(frozen=True)
class RegularTree:
    """Finite rooted graph denoting the infinite tree obtained by unfolding.

    Every vertex carries a letter and has exactly one left and one right
    successor; all vertices must be reachable from the root.
    """

    labels: tuple[str, ...]
    succ: tuple[tuple[int, int], ...]
    root: int = 0

    def __post_init__(self):
        n = len(self.labels)
        if len(self.succ) != n:
            raise ValueError("labels and succ must have equal length")
        if not 0 <= self.root < n:
            raise ValueError("root out of range")
        for l, r in self.succ:
            if not (0 <= l < n and 0 <= r < n):
                raise ValueError("successor out of range")
        seen = {self.root}
        stack = [self.root]
        while stack:
            v = stack.pop()
            for w in self.succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise ValueError("every vertex must be reachable from the root")

    @property
    def n_vertices(self):
        return len(self.labels)

    def vertex_at(self, word):
        """Vertex reached from the root along a word over {L, R}."""
        v = self.root
        for d in word:
            v = self.succ[v][0 if d == "L" else 1]
        return v


@dataclass(frozen=True)
class FinitePrefix:
    """Finite prefix-closed labelled domain over direction words {L, R}."""

    entries: tuple[tuple[str, str], ...]  # (direction word, letter)

    def __post_init__(self):
        dom = {w for w, _ in self.entries}
        if not dom:
            raise ValueError("prefix domain must be nonempty")
        if len(dom) != len(self.entries):
            raise ValueError("duplicate node in prefix domain")
        for w in dom:
            if w and w[:-1] not in dom:
                raise ValueError(f"domain not prefix-closed at {w!r}")
            if any(d not in "LR" for d in w):
                raise ValueError(f"bad direction word {w!r}")
        object.__setattr__(
            self, "entries",
            tuple(sorted(self.entries, key=lambda e: (len(e[0]), e[0]))))

    @property
    def domain(self):
        return tuple(w for w, _ in self.entries)

    def label(self, word):
        for w, a in self.entries:
            if w == word:
                return a
        raise KeyError(word)

    def is_prefix_of(self, other):
        """True when `other` agrees with this prefix on its whole domain."""
        table = dict(other.entries)
        return all(table.get(w) == a for w, a in self.entries)

    def matches_tree(self, rt: RegularTree):
        return all(rt.labels[rt.vertex_at(w)] == a for w, a in self.entries)


def unfold(rt: RegularTree, depth: int) -> FinitePrefix:
    """The prefix of the unfolding of `rt` containing all nodes at depths < depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    entries = []
    frontier = [("", rt.root)]
    for _ in range(depth):
        nxt = []
        for word, v in frontier:
            entries.append((word, rt.labels[v]))
            l, r = rt.succ[v]
            nxt.append((word + "L", l))
            nxt.append((word + "R", r))
        frontier = nxt
    return FinitePrefix(tuple(entries))


def _tokenized_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_automaton(text: str) -> TreeAutomaton:
    """Parse the line-based automaton format; sections may appear in any order.

    Format::

        alphabet: a b c
        states: 3
        initial: 0
        priority: 0 1     # one line per state: index then priority
        trans: 0 a 1 2    # state letter left right
    """
    alphabet = None
    n_states = None
    initial = None
    priorities = {}
    raw_transitions = []
    for lineno, line in _tokenized_lines(text):
        if ":" not in line:
            raise FormatError(f"expected 'key: values', got {line!r}", lineno)
        key, _, rest = line.partition(":")
        key = key.strip()
        parts = rest.split()
        if key == "alphabet":
            if alphabet is not None:
                raise FormatError("duplicate alphabet section", lineno)
            if not parts:
                raise FormatError("empty alphabet", lineno)
            if len(set(parts)) != len(parts):
                raise FormatError("duplicate letter in alphabet", lineno)
            alphabet = Alphabet(tuple(parts))
        elif key == "states":
            if len(parts) != 1 or not parts[0].isdigit():
                raise FormatError("states takes a single count", lineno)
            n_states = int(parts[0])
        elif key == "initial":
            if len(parts) != 1 or not parts[0].isdigit():
                raise FormatError("initial takes a single state index", lineno)
            initial = int(parts[0])
        elif key == "priority":
            if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
                raise FormatError("priority takes 'state value'", lineno)
            q, p = int(parts[0]), int(parts[1])
            if p < 0:
                raise FormatError("priorities must be nonnegative", lineno)
            if q in priorities:
                raise FormatError(f"duplicate priority for state {q}", lineno)
            priorities[q] = p
        elif key == "trans":
            if len(parts) != 4:
                raise FormatError("trans takes 'state letter left right'", lineno)
            raw_transitions.append((lineno, parts))
        else:
            raise FormatError(f"unknown section {key!r}", lineno)

    if alphabet is None:
        raise FormatError("missing alphabet section")
    if n_states is None:
        raise FormatError("missing states section")
    if initial is None:
        raise FormatError("missing initial section")
    if not 0 <= initial < n_states:
        raise FormatError(f"initial state {initial} out of range")
    for q in range(n_states):
        if q not in priorities:
            raise FormatError(f"missing priority for state {q}")
    for q in priorities:
        if not 0 <= q < n_states:
            raise FormatError(f"priority given for unknown state {q}")

    transitions = []
    for lineno, (qs, a, ls, rs) in raw_transitions:
        if not (qs.isdigit() and ls.isdigit() and rs.isdigit()):
            raise FormatError("trans states must be numeric", lineno)
        q, l, r = int(qs), int(ls), int(rs)
        if a not in alphabet:
            raise FormatError(f"unknown letter {a!r}", lineno)
        for s in (q, l, r):
            if not 0 <= s < n_states:
                raise FormatError(f"unknown state {s}", lineno)
        transitions.append((q, a, l, r))

    return TreeAutomaton(alphabet, n_states, initial, tuple(transitions),
                         tuple(priorities[q] for q in range(n_states)))


def serialize_automaton(aut: TreeAutomaton) -> str:
    """Byte-stable text form; parse(serialize(a)) reproduces `a` exactly."""
    lines = ["alphabet: " + " ".join(aut.alphabet.letters),
             f"states: {aut.n_states}",
             f"initial: {aut.initial}"]
    lines.extend(f"priority: {q} {p}" for q, p in enumerate(aut.priorities))
    lines.extend(f"trans: {q} {a} {l} {r}" for q, a, l, r in aut.transitions)
    return "\n".join(lines) + "\n"


def parse_regular_tree(text: str) -> RegularTree:
    """Parse the `vertex: i letter left right` / `root: i` format."""
    vertices = {}
    root = None
    for lineno, line in _tokenized_lines(text):
        key, _, rest = line.partition(":")
        key = key.strip()
        parts = rest.split()
        if key == "vertex":
            if len(parts) != 4 or not all(p.isdigit() for p in (parts[0], parts[2], parts[3])):
                raise FormatError("vertex takes 'index letter left right'", lineno)
            i = int(parts[0])
            if i in vertices:
                raise FormatError(f"duplicate vertex {i}", lineno)
            vertices[i] = (parts[1], int(parts[2]), int(parts[3]))
        elif key == "root":
            if len(parts) != 1 or not parts[0].isdigit():
                raise FormatError("root takes a single vertex index", lineno)
            root = int(parts[0])
        else:
            raise FormatError(f"unknown section {key!r}", lineno)
    if root is None:
        raise FormatError("missing root section")
    if set(vertices) != set(range(len(vertices))):
        raise FormatError("vertex indices must be 0..n-1")
    labels = tuple(vertices[i][0] for i in range(len(vertices)))
    succ = tuple((vertices[i][1], vertices[i][2]) for i in range(len(vertices)))
    return RegularTree(labels, succ, root)


def serialize_regular_tree(rt: RegularTree) -> str:
    lines = [f"vertex: {i} {rt.labels[i]} {rt.succ[i][0]} {rt.succ[i][1]}"
             for i in range(rt.n_vertices)]
    lines.append(f"root: {rt.root}")
    return "\n".join(lines) + "\n"
