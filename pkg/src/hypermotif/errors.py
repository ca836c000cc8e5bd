"""Exception types raised across the package."""


class HypermotifError(Exception):
    """Base class for all package errors."""


class ParseError(HypermotifError):
    """Malformed hyperedge-list input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyHypergraphError(HypermotifError):
    """No hyperedges survived ingestion filters."""


class ConfigError(HypermotifError):
    """Invalid run configuration (budgets, generator specs, flags)."""


class InvariantError(HypermotifError):
    """An internal invariant was violated."""
