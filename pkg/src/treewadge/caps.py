"""Resource caps shared by the construction pipelines."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["ResourceCapError", "Caps", "DEFAULT_CAPS"]


class ResourceCapError(RuntimeError):
    """Raised when a construction exceeds its configured budget."""


@dataclass(frozen=True)
class Caps:
    """Budgets for the symbolic constructions.

    state_budget bounds the number of states any single constructed
    automaton may have; carrier_cap bounds the automaton size for which
    exhaustive carrier enumeration is attempted; max_n bounds the level
    probed by the difference-hierarchy search.
    """

    state_budget: int = 10 ** 6
    carrier_cap: int = 5
    max_n: int = 8

    def charge(self, n_states, what="construction"):
        if n_states > self.state_budget:
            raise ResourceCapError(
                f"{what} exceeded state budget "
                f"({n_states} > {self.state_budget})")


DEFAULT_CAPS = Caps()
