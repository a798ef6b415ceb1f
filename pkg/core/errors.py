# ==================== ERRORS ====================
# File: core/errors.py

class LimAvgError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code = 5


class InputError(LimAvgError):
    """Bad user input: unknown letters, malformed files, alphabet mismatch."""

    exit_code = 2


class DomainError(InputError):
    """A well-formed request outside the operation's domain (e.g. a null cylinder)."""


class InvariantError(LimAvgError):
    """An internal invariant failed. Always a bug."""

    exit_code = 5


class BudgetExhausted(LimAvgError):
    """A bounded search ran out of nodes before reaching a verdict."""

    exit_code = 4

    def __init__(self, budget: int, explored: int):
        super().__init__(f"search budget of {budget} nodes exhausted after {explored} nodes")
        self.budget = budget
        self.explored = explored
