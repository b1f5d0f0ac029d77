"""Command-line front end.

Subcommands: classify, level, algebra, game, complement, play.  Exit codes:
0 success, 1 a requested check found a violation, 2 input error, 3 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import stage_one_algebra, dump_algebra
from .caps import Caps, ResourceCapError
from .classify import classify
from .complement import assisted_complement, complement
from .model import (FinitePrefix, FormatError, parse_automaton,
                    serialize_automaton, serialize_regular_tree, unfold)
from .ops import accepts_regular_tree
from .quotient import syntactic_algebra
from .typegames import (difference_level, extract_round_witness, wins_H,
                        wins_H_inout)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="treewadge",
        description="Classify regular tree languages in the difference "
                    "hierarchy over the open sets.")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for all sampling (default 0)")
    parser.add_argument("--state-budget", type=int, default=10**6,
                        help="abort constructions beyond this many states")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="full classification report")
    p.add_argument("automaton")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--out", help="write the JSON report here")

    p = sub.add_parser("level", help="difference level search only")
    p.add_argument("automaton")
    p.add_argument("--max-n", type=int, default=8)

    p = sub.add_parser("algebra", help="dump the stage-one or syntactic "
                                       "algebra")
    p.add_argument("automaton")
    p.add_argument("--syntactic", action="store_true")

    p = sub.add_parser("game", help="decide an alternation game")
    p.add_argument("automaton")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--seq", help="comma-separated syntactic tree type "
                                     "indices, e.g. h1,h0,h1")
    group.add_argument("--inout", type=int,
                       help="rounds of the in/out game on the language")
    p.add_argument("--witness", help="write the round-1 witness tree here")

    p = sub.add_parser("complement", help="complement an automaton, or "
                                          "validate a claimed complement")
    p.add_argument("automaton")
    p.add_argument("--check", help="claimed complement to validate")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--out", help="write the complement automaton here")

    p = sub.add_parser("play", help="interactive game trace: the tool "
                                    "plays Alternator, you constrain")
    p.add_argument("automaton")
    p.add_argument("--rounds", type=int, default=2)
    return parser


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_automaton(fh.read())
    except OSError as err:
        raise FormatError(f"cannot read {path}: {err.strerror}") from err


def _write_witness(path, aut, tree):
    if not accepts_regular_tree(aut, tree):
        raise AssertionError("witness failed re-validation before writing")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_regular_tree(tree))


def _cmd_classify(args, caps):
    aut = _load(args.automaton)
    report = classify(aut, args.max_n, caps)
    print(f"|H_L| = {report.h_size}  |V_L| = {report.v_size}  "
          f"sharp = {report.sharp}")
    print(f"eq-bool: {'holds' if report.eq_bool_holds else 'violated'}")
    print(f"eq-limit: {'holds' if report.eq_limit_holds else 'violated'}")
    print(f"BC(Sigma-0-1): {'yes' if report.verdict_bc else 'no'}")
    print(f"Delta-0-2: {'yes' if report.verdict_delta2 else 'no'}")
    if report.difference_level is not None:
        print(f"difference level: {report.difference_level}")
    else:
        print(f"difference level: none up to max_n = {report.max_n}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2)
            fh.write("\n")
    return 0


def _cmd_level(args, caps):
    aut = _load(args.automaton)
    co = complement(aut, caps)
    level = difference_level(aut, co, args.max_n, caps)
    if level is None:
        print(f"no level up to max_n = {args.max_n}")
    else:
        print(f"difference level: {level}")
    return 0


def _cmd_algebra(args, caps):
    aut = _load(args.automaton)
    alg, interp = stage_one_algebra(aut, caps)
    if not args.syntactic:
        sys.stdout.write(dump_algebra(alg))
        return 0
    syn = syntactic_algebra(alg, interp, caps)
    sys.stdout.write(dump_algebra(syn.algebra))
    h_name = {h: f"h{i}" for i, h in enumerate(syn.algebra.H)}
    v_name = {v: f"v{i}" for i, v in enumerate(syn.algebra.V)}
    s_h = {h: f"h{i}" for i, h in enumerate(alg.H)}
    s_v = {v: f"v{i}" for i, v in enumerate(alg.V)}
    print("projection H:")
    for h in alg.H:
        print(f"  {s_h[h]} -> {h_name[syn.project_h[h]]}")
    print("projection V:")
    for v in alg.V:
        print(f"  {s_v[v]} -> {v_name[syn.project_v[v]]}")
    return 0


def _cmd_game(args, caps):
    aut = _load(args.automaton)
    if args.inout is not None:
        if args.inout < 1:
            raise FormatError("--inout must be at least 1")
        co = complement(aut, caps)
        verdict = wins_H_inout(aut, co, args.inout, caps)
    else:
        alg, interp = stage_one_algebra(aut, caps)
        syn = syntactic_algebra(alg, interp, caps)
        index = {f"h{i}": h for i, h in enumerate(syn.algebra.H)}
        try:
            types = [index[tok.strip()] for tok in args.seq.split(",")]
        except KeyError as err:
            raise FormatError(f"unknown type index {err.args[0]!r}; "
                              f"valid: {', '.join(sorted(index))}") from None
        if not types:
            raise FormatError("--seq needs at least one type")
        verdict = wins_H([syn.class_automata[h] for h in types], caps)
    print(f"{verdict.winner} wins")
    if verdict.witness is not None:
        sys.stdout.write(serialize_regular_tree(verdict.witness))
        if args.witness:
            _write_witness(args.witness, verdict.round_languages[0],
                           verdict.witness)
    return 0


def _cmd_complement(args, caps):
    aut = _load(args.automaton)
    if args.check:
        claimed = _load(args.check)
        try:
            result = assisted_complement(aut, claimed, args.samples,
                                         args.seed, caps)
        except ValueError as err:
            print(f"violation: {err}")
            return 1
        print("claimed complement validated")
    else:
        result = complement(aut, caps)
        print(f"complement has {result.n_states} states")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_automaton(result))
    return 0


def _parse_prefix(line, last_tree):
    """Constrainer move syntax: comma-separated word=letter pairs, the word
    over {L, R} ('.' for the root); empty input constrains to the root."""
    if not line.strip():
        return unfold(last_tree, 1)
    entries = []
    for part in line.split(","):
        part = part.strip()
        if "=" not in part:
            raise ValueError(f"expected word=letter, got {part!r}")
        word, letter = part.split("=", 1)
        word = word.strip().strip(".")
        entries.append((word, letter.strip()))
    return FinitePrefix(tuple(entries))


def _cmd_play(args, caps):
    aut = _load(args.automaton)
    co = complement(aut, caps)
    verdict = wins_H_inout(aut, co, args.rounds, caps)
    chain = verdict.round_languages
    if verdict.winner == "Constrainer":
        print("Constrainer wins this game; nothing to play")
        return 0
    print(f"Alternator wins H^(in,out) with {args.rounds} rounds; "
          f"playing it out")
    prefix = None
    tree = verdict.witness
    for i in range(len(chain)):
        if i > 0:
            tree = extract_round_witness(prefix, chain[i], caps)
        side = "inside L" if i % 2 == 0 else "outside L"
        print(f"round {i + 1} ({side}): Alternator picks")
        sys.stdout.write(serialize_regular_tree(tree))
        if i + 1 == len(chain):
            break
        while True:
            line = input("constrain (word=letter pairs, e.g. .=a,L=b; "
                         "empty for the root only): ")
            try:
                prefix = _parse_prefix(line, tree)
                if not prefix.matches_tree(tree):
                    print("prefix does not match Alternator's last tree")
                    continue
                break
            except (ValueError, FormatError) as err:
                print(f"bad prefix: {err}")
    print("game over: Alternator survived every round")
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "level": _cmd_level,
    "algebra": _cmd_algebra,
    "game": _cmd_game,
    "complement": _cmd_complement,
    "play": _cmd_play,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    caps = Caps(state_budget=args.state_budget)
    try:
        return _COMMANDS[args.command](args, caps)
    except FormatError as err:
        print(f"input error: {err}", file=sys.stderr)
        return 2
    except ResourceCapError as err:
        print(f"resource cap exceeded: {err}", file=sys.stderr)
        completed = getattr(err, "completed", None)
        if completed:
            print(f"completed stages: {', '.join(completed)}",
                  file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
