"""Exception types and the work-unit budget shared by the search routines."""

from __future__ import annotations

import os

BUDGET_ENV = "HYPERCUBE_EX_BUDGET"
DEFAULT_BUDGET = 200_000_000


class InvalidParameterError(ValueError):
    """A parameter is outside the supported domain."""


class ResourceLimitError(RuntimeError):
    """A search exceeded its work-unit budget or a size cap."""


class VerificationError(Exception):
    """A structural check failed; ``clause`` names the first failing check."""

    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidParameterError(f"{BUDGET_ENV}={raw!r} is not an integer") from exc
    if value <= 0:
        raise InvalidParameterError(f"{BUDGET_ENV} must be positive")
    return value


class Budget:
    """Deterministic work counter; raises once more than ``limit`` units are spent."""

    __slots__ = ("limit", "spent", "what")

    def __init__(self, limit: int | None = None, what: str = "search"):
        self.limit = default_budget() if limit is None else int(limit)
        self.spent = 0
        self.what = what

    def charge(self, units: int = 1) -> None:
        self.spent += units
        if self.spent > self.limit:
            raise ResourceLimitError(
                f"{self.what} exceeded work budget of {self.limit} units"
            )


def as_budget(budget: Budget | int | None, what: str) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget, what)
