"""Topological classification of a regular tree language.

The two identities on the syntactic algebra decide everything: the bounded
identity (on sharp-padded triples inside the V-game relation) together with
the limit identity characterizes Boolean combinations of open sets, and the
limit identity alone characterizes the ambiguous class Delta-0-2.  The
difference level inside the Boolean combinations is then found by a direct
game search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import UNIT, stage_one_algebra, validate_algebra
from .caps import Caps, DEFAULT_CAPS, ResourceCapError
from .complement import complement
from .model import TreeAutomaton
from .quotient import SyntacticAlgebra, syntactic_algebra
from .typegames import difference_level, wins_V_types

__all__ = [
    "VOracle",
    "ClassificationReport",
    "check_eq_bool",
    "check_eq_limit",
    "classify",
]


class VOracle:
    """Memoized membership oracle for the V-game relation.

    Queries are normalized by collapsing adjacent equal types (membership
    is invariant under duplication and under letter removal), and a
    sequence is rejected without playing whenever some letter-removed
    subword already fails, which is sound by the removal closure.
    """

    def __init__(self, syn: SyntacticAlgebra, caps: Caps = DEFAULT_CAPS):
        self.syn = syn
        self.caps = caps
        self.memo = {}

    def __call__(self, types) -> bool:
        key = []
        for t in types:
            if not key or key[-1] != t:
                key.append(t)
        key = tuple(key)
        if not key:
            raise ValueError("empty membership query")
        if key not in self.memo:
            self.memo[key] = self._decide(key)
        return self.memo[key]

    def _decide(self, key):
        if len(key) >= 2:
            for i in range(len(key)):
                sub = key[:i] + key[i + 1:]
                if sub and not self(sub):
                    return False
        return wins_V_types(self.syn, key, self.caps)


def check_eq_bool(syn: SyntacticAlgebra, oracle: VOracle):
    """First violating triple of the bounded identity, or None.

    For every (u, v, w) with (u, v, w) or (w, v, u) in the V-game relation,
    u^s u w^s, u^s v w^s and u^s w w^s must coincide (s the sharp).
    """
    alg = syn.algebra
    for u in alg.V:
        for v in alg.V:
            for w in alg.V:
                forward = oracle((u, v, w))
                backward = oracle((w, v, u))
                if not (forward or backward):
                    continue
                us = alg.sharp_power(u)
                ws = alg.sharp_power(w)
                a = alg.comp(alg.comp(us, u), ws)
                b = alg.comp(alg.comp(us, v), ws)
                c = alg.comp(alg.comp(us, w), ws)
                if not (a == b == c):
                    return {"u": u, "v": v, "w": w,
                            "orientation": "forward" if forward
                            else "backward"}
    return None


def check_eq_limit(syn: SyntacticAlgebra, oracle: VOracle):
    """First violating tuple of the limit identity, or None.

    For v in V and pairs (u1, u2), (w1, w2) in the V-game relation, with
    s = u2 w2^s v, the types (s)^s u1 w1^inf and (s)^inf must coincide.
    """
    alg = syn.algebra
    pairs = [(x, y) for x in alg.V for y in alg.V if oracle((x, y))]
    for v in alg.V:
        for (u1, u2) in pairs:
            for (w1, w2) in pairs:
                s = alg.comp(alg.comp(u2, alg.sharp_power(w2)), v)
                lhs = alg.app(alg.comp(alg.sharp_power(s), u1),
                              alg.omega_of(w1))
                rhs = alg.omega_of(s)
                if lhs != rhs:
                    return {"v": v, "u1": u1, "u2": u2, "w1": w1, "w2": w2}
    return None


def _show_v(v):
    if v == UNIT:
        return "1"
    return "{" + ",".join(f"({q},{p},{qq})" for q, p, qq in sorted(v)) + "}"


@dataclass
class ClassificationReport:
    """Full verdict bundle; to_json gives the stable report schema."""

    h_size: int
    v_size: int
    sharp: int
    eq_bool_witness: dict | None
    eq_limit_witness: dict | None
    verdict_bc: bool
    verdict_delta2: bool
    difference_level: int | None
    max_n: int
    consistency: dict = field(default_factory=dict)
    timing_ms: dict = field(default_factory=dict)

    @property
    def eq_bool_holds(self):
        return self.eq_bool_witness is None

    @property
    def eq_limit_holds(self):
        return self.eq_limit_witness is None

    def __post_init__(self):
        if self.verdict_bc != (self.eq_bool_holds and self.eq_limit_holds):
            raise AssertionError("verdict out of sync with the identities")
        if self.verdict_delta2 != self.eq_limit_holds:
            raise AssertionError("Delta-0-2 verdict out of sync")
        if self.verdict_bc and not self.verdict_delta2:
            raise AssertionError("BC verdict without Delta-0-2")
        if self.difference_level is not None and not self.verdict_bc:
            raise AssertionError("difference level found outside BC")

    def to_json(self) -> dict:
        def show_witness(w):
            if w is None:
                return None
            return {k: (_show_v(x) if not isinstance(x, str) or x == "1"
                        else x)
                    for k, x in w.items()}

        return {
            "schema_version": 1,
            "algebra": {"h_size": self.h_size, "v_size": self.v_size,
                        "sharp": self.sharp},
            "eq_bool": {"holds": self.eq_bool_holds,
                        "witness": show_witness(self.eq_bool_witness)},
            "eq_limit": {"holds": self.eq_limit_holds,
                         "witness": show_witness(self.eq_limit_witness)},
            "verdicts": {"bc_sigma1": self.verdict_bc,
                         "delta2": self.verdict_delta2},
            "difference_level": {"level": self.difference_level,
                                 "max_n": self.max_n},
            "consistency": dict(self.consistency),
            "timing_ms": dict(self.timing_ms),
        }


def classify(aut: TreeAutomaton, max_n: int = 8,
             caps: Caps = DEFAULT_CAPS) -> ClassificationReport:
    """Run the whole pipeline and assemble the report.

    On a resource-cap error the exception carries the stages completed so
    far in its `completed` attribute.
    """
    timing = {}
    completed = {}
    start = time.perf_counter()

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            out = fn()
        except ResourceCapError as err:
            err.completed = dict(completed)
            raise
        timing[name] = int((time.perf_counter() - t0) * 1000)
        completed[name] = True
        return out

    alg, interp = stage("stage_one", lambda: stage_one_algebra(aut, caps))
    stage("validate", lambda: validate_algebra(alg))
    syn = stage("quotient", lambda: syntactic_algebra(alg, interp, caps))
    stage("validate_quotient", lambda: validate_algebra(syn.algebra))
    oracle = VOracle(syn, caps)
    bool_witness = stage("eq_bool", lambda: check_eq_bool(syn, oracle))
    limit_witness = stage("eq_limit", lambda: check_eq_limit(syn, oracle))
    co = stage("complement", lambda: complement(aut, caps))
    level = stage("level", lambda: difference_level(aut, co, max_n, caps))

    verdict_bc = bool_witness is None and limit_witness is None
    verdict_delta2 = limit_witness is None
    consistency = {
        "bc_equals_bool_and_limit": True,
        "bc_implies_delta2": (not verdict_bc) or verdict_delta2,
        "level_implies_bc": level is None or verdict_bc,
        "violation_implies_no_level": verdict_bc or level is None,
    }
    if bool_witness is not None:
        # the reported side condition must replay outside the memo table
        w = bool_witness
        seq = ((w["u"], w["v"], w["w"]) if w["orientation"] == "forward"
               else (w["w"], w["v"], w["u"]))
        consistency["eq_bool_witness_replays"] = wins_V_types(syn, seq, caps)
    if limit_witness is not None:
        w = limit_witness
        consistency["eq_limit_witness_replays"] = (
            wins_V_types(syn, (w["u1"], w["u2"]), caps)
            and wins_V_types(syn, (w["w1"], w["w2"]), caps))
    if not all(consistency.values()):
        raise AssertionError(f"consistency checks failed: {consistency}")
    timing["total"] = int((time.perf_counter() - start) * 1000)
    return ClassificationReport(
        h_size=len(syn.algebra.H),
        v_size=len(syn.algebra.V),
        sharp=syn.algebra.sharp,
        eq_bool_witness=bool_witness,
        eq_limit_witness=limit_witness,
        verdict_bc=verdict_bc,
        verdict_delta2=verdict_delta2,
        difference_level=level,
        max_n=max_n,
        consistency=consistency,
        timing_ms=timing,
    )
