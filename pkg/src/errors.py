"""
Exception hierarchy shared by every subpackage.
"""

from typing import Any


class AtdError(Exception):
    """Base class for all errors raised by the toolkit."""


class PreconditionError(AtdError, ValueError):
    """An operation was called on input outside its domain."""


class BudgetExceededError(AtdError, RuntimeError):
    """
    A configured cap or search budget ran out.

    Args:
        budget (str): Name of the budget key in ``src.config.BUDGETS``.
        limit (int): The value that was exceeded.
        cell (Any): Optional description of the unit of work that ran out.
    """
    def __init__(self, budget: str, limit: int, cell: Any = None):
        self.budget = budget
        self.limit = limit
        self.cell = cell
        message = f"{budget} exceeded (limit {limit})"
        if cell is not None:
            message += f" in cell {cell}"
        super().__init__(message)


class DigraphFormatError(AtdError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class CatalogFormatError(AtdError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class PresentationSyntaxError(AtdError, ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")
