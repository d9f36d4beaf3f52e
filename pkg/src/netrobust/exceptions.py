"""Exception types shared across the package."""


class EdgeListError(ValueError):
    """Malformed edge-list input. Carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DisconnectedGraphError(ValueError):
    """Raised by operations that are only defined on connected graphs."""


class UndefinedMetricError(ValueError):
    """Raised when a metric or statistic is undefined for the given input."""


class GenerationError(RuntimeError):
    """Raised when a graph generator exhausts its retry budget."""
