"""Exception types shared across the package."""

from __future__ import annotations


class CapacityError(ValueError):
    """A graph or enumeration would exceed a hard size cap."""


class Graph6Error(ValueError):
    """Malformed graph6 text. ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ContractViolation(ValueError):
    """An input does not satisfy the documented precondition of an operation."""


class DiscrepancyError(AssertionError):
    """A claimed invariant disagrees with what the exact solvers compute."""

    def __init__(self, message: str, claimed: dict, computed: dict):
        super().__init__(f"{message}: claimed {claimed}, computed {computed}")
        self.claimed = claimed
        self.computed = computed


class NotFoundError(LookupError):
    """A search that is only guaranteed on large enough inputs came back empty."""


class TheoremFalsified(AssertionError):
    """The recoloring engine produced neither outcome on a certified input.

    Carries enough of the instance to reproduce the run.
    """

    def __init__(self, message: str, reproducer: dict):
        super().__init__(f"{message}; reproducer: {reproducer}")
        self.reproducer = reproducer
