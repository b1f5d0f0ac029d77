"""Decision procedures for the difference hierarchy of regular tree
languages over the open sets."""

from .algebra import (ThinAlgebra, StageOneInterpretation, dump_algebra,
                      evaluate_type, stage_one_algebra, validate_algebra)
from .caps import Caps, ResourceCapError
from .classify import ClassificationReport, classify
from .complement import assisted_complement, complement, equivalent, included
from .model import (Alphabet, FinitePrefix, FormatError, RegularTree,
                    TreeAutomaton, parse_automaton, parse_regular_tree,
                    serialize_automaton, serialize_regular_tree, unfold)
from .ops import (accepts_regular_tree, closure, intersection, is_empty,
                  union)
from .quotient import SyntacticAlgebra, syntactic_algebra
from .typegames import (GameVerdict, alternation, difference_level, wins_H,
                        wins_H_inout, wins_H_types, wins_V_types)

__all__ = [
    "Alphabet", "Caps", "ClassificationReport", "FinitePrefix",
    "FormatError", "GameVerdict", "RegularTree", "ResourceCapError",
    "StageOneInterpretation", "SyntacticAlgebra", "ThinAlgebra",
    "TreeAutomaton", "accepts_regular_tree", "alternation",
    "assisted_complement", "classify", "closure", "complement",
    "difference_level", "dump_algebra", "equivalent", "evaluate_type",
    "included", "intersection", "is_empty", "parse_automaton",
    "parse_regular_tree", "serialize_automaton", "serialize_regular_tree",
    "stage_one_algebra", "syntactic_algebra", "unfold", "union",
    "validate_algebra", "wins_H", "wins_H_inout", "wins_H_types",
    "wins_V_types",
]
