"""Exception types shared across the package."""


class SyncGamesError(Exception):
    """Base class for errors raised by this package."""


class GameFormatError(SyncGamesError):
    """Malformed game/graph/correlation file.

    ``line``/``column`` are set when the underlying JSON parse failed.
    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class PreconditionError(SyncGamesError, ValueError):
    """An operation was called on input that violates its precondition."""


class ConstructionError(SyncGamesError):
    """An internal consistency check failed while building a transformed game."""


class ResourceBudgetError(SyncGamesError):
    """A search or rewrite exceeded its configured budget."""
