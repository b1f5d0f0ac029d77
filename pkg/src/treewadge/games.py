"""Finite parity games: arena model, Zielonka solver, strategy checking.

Vertices are owned by player 0 (Even) or player 1 (Odd).  A play is winning
for Even when the largest priority seen infinitely often is even.  Dead ends
are hostile to their owner: a player who cannot move loses the play.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

__all__ = ["GameArena", "Solution", "solve_game", "verify_strategy"]


@dataclass(frozen=True)
class GameArena:
    """Parity game arena.

    owner[v] is 0 or 1, priority[v] >= 0, edges[v] lists successor vertices
    in a fixed order (used as a deterministic tie-break by the solver).
    """

    owner: tuple[int, ...]
    priority: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.owner)
        if len(self.priority) != n or len(self.edges) != n:
            raise ValueError("owner, priority and edges must have equal length")
        if any(o not in (0, 1) for o in self.owner):
            raise ValueError("owners must be 0 or 1")
        if any(p < 0 for p in self.priority):
            raise ValueError("priorities must be nonnegative")
        for succs in self.edges:
            for w in succs:
                if not 0 <= w < n:
                    raise ValueError("edge target out of range")

    @property
    def n_vertices(self):
        return len(self.owner)


@dataclass(frozen=True)
class Solution:
    """Winning regions and positional winning strategies for both players.

    strategy[p] maps each vertex in region[p] owned by p to the chosen
    successor.
    """

    region: tuple[frozenset[int], frozenset[int]]
    strategy: tuple[dict, dict]

    def winner(self, vertex):
        return 0 if vertex in self.region[0] else 1


def _resolve_dead_ends(arena: GameArena):
    """Replace dead ends by self loops of the hostile parity.

    A dead end owned by player p becomes a self loop whose priority has the
    parity of the opponent, so the (now infinite) play is lost by p.  This
    keeps Zielonka's recursion free of dead-end special cases.
    """
    priority = list(arena.priority)
    edges = [list(s) for s in arena.edges]
    dead = []
    for v in range(arena.n_vertices):
        if not edges[v]:
            dead.append(v)
            edges[v] = [v]
            priority[v] = 1 if arena.owner[v] == 0 else 0
    return GameArena(arena.owner, tuple(priority),
                     tuple(tuple(s) for s in edges)), set(dead)


def _zielonka(owner, priority, edges, preds, n):
    """Zielonka's recursion over subgames shared through an alive mask.

    Subgames are vertex lists filtered by `alive`; `deg` tracks each live
    vertex's number of distinct live successors and is updated
    incrementally as attractors are removed and restored, so no pass over
    the whole subgame is needed per recursion step.
    """
    alive = bytearray(b"\x01") * n
    deg = [len(set(s)) for s in edges]

    def attractor(target, player):
        """Attractor of `target` for `player` among live vertices, with the
        attracting move (lowest-index qualifying edge) for `player`."""
        attr = set(target)
        strategy = {}
        remaining = {}
        queue = list(target)
        while queue:
            w = queue.pop()
            for v in preds[w]:
                if not alive[v] or v in attr:
                    continue
                if owner[v] == player:
                    # pick the move before adding v, so a self loop can
                    # never pose as an attracting move
                    for u in edges[v]:
                        if u in attr:
                            strategy[v] = u
                            break
                    attr.add(v)
                    queue.append(v)
                else:
                    left = remaining.get(v, deg[v]) - 1
                    remaining[v] = left
                    if left == 0:
                        attr.add(v)
                        queue.append(v)
        return attr, strategy

    def remove(order):
        for v in order:
            for p in preds[v]:
                if alive[p]:
                    deg[p] -= 1
            alive[v] = 0

    def restore(order):
        for v in reversed(order):
            alive[v] = 1
            for p in preds[v]:
                if alive[p]:
                    deg[p] += 1

    def solve(sub):
        if not sub:
            return (set(), set()), ({}, {})
        d = max(priority[v] for v in sub)
        player = d % 2
        opponent = 1 - player

        top = [v for v in sub if priority[v] == d]
        attr, attr_strategy = attractor(top, player)
        removed = [v for v in sub if v in attr]
        remove(removed)
        rest = [v for v in sub if alive[v]]
        sub_regions, sub_strategies = solve(rest)
        restore(removed)

        if not sub_regions[opponent]:
            # player wins everywhere: from top vertices of player, stay inside
            region = (set(), set())
            region[player].update(sub)
            strategy = ({}, {})
            strategy[player].update(sub_strategies[player])
            strategy[player].update(attr_strategy)
            inside = set(sub)
            for v in top:
                if owner[v] == player and v not in strategy[player]:
                    for u in edges[v]:
                        if u in inside:
                            strategy[player][v] = u
                            break
            return region, strategy

        opp_attr, opp_strategy = attractor(sub_regions[opponent], opponent)
        removed2 = [v for v in sub if v in opp_attr]
        remove(removed2)
        rest2 = [v for v in sub if alive[v]]
        regions2, strategies2 = solve(rest2)
        restore(removed2)
        region = (set(), set())
        region[player].update(regions2[player])
        region[opponent].update(opp_attr, regions2[opponent])
        strategy = ({}, {})
        strategy[player].update(strategies2[player])
        strategy[opponent].update(sub_strategies[opponent])
        strategy[opponent].update(opp_strategy)
        strategy[opponent].update(strategies2[opponent])
        return region, strategy

    return solve(list(range(n)))


def solve_game(arena: GameArena) -> Solution:
    """Solve the parity game with Zielonka's recursive algorithm."""
    worked, dead = _resolve_dead_ends(arena)
    preds = [[] for _ in range(worked.n_vertices)]
    for v, succs in enumerate(worked.edges):
        for w in set(succs):
            preds[w].append(v)
    regions, strategies = _zielonka(worked.owner, worked.priority,
                                    worked.edges, preds, worked.n_vertices)
    # dead ends have no real move, drop the artificial self loop
    for v in dead:
        strategies[0].pop(v, None)
        strategies[1].pop(v, None)
    return Solution((frozenset(regions[0]), frozenset(regions[1])),
                    (dict(strategies[0]), dict(strategies[1])))


def verify_strategy(arena: GameArena, solution: Solution,
                    samples: int = 100, seed: int = 0) -> bool:
    """Spot-check the claimed winning strategies with random opposing plays.

    From every vertex, the vertex's claimed winner follows the positional
    strategy while the opponent moves uniformly at random; each play runs
    until it closes a cycle, which is judged by its largest priority.
    Returns False on any losing play found.
    """
    rng = random.Random(seed)
    n = arena.n_vertices
    per_vertex = max(1, samples // max(1, n))
    for start in range(n):
        player = solution.winner(start)
        strategy = solution.strategy[player]
        for _ in range(per_vertex):
            v = start
            history = [v]
            seen_at = {v: 0}
            while True:
                if arena.owner[v] == player:
                    if v not in strategy:
                        if not arena.edges[v]:
                            return False  # winner is stuck: contradiction
                        v = arena.edges[v][0]
                    else:
                        v = strategy[v]
                else:
                    succs = arena.edges[v]
                    if not succs:
                        break  # opponent is stuck and loses this play
                    v = succs[rng.randrange(len(succs))]
                if v in seen_at:
                    cycle = history[seen_at[v]:]
                    top = max(arena.priority[u] for u in cycle)
                    if top % 2 != player % 2:
                        return False
                    break
                seen_at[v] = len(history)
                history.append(v)
    return True
