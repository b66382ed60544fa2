"""Engine error taxonomy, aligned with the CLI exit codes."""


class EngineError(Exception):
    """Base class for all engine errors."""


class ParseError(EngineError):
    """Malformed input text (DSL, field spec, scalar or psi literal)."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


class FieldError(EngineError):
    """Invalid field operation: bad modulus, division by zero, field mismatch."""


class CompletionError(EngineError):
    """Completion could not produce a confluent system within the bound."""


class InfiniteDimensionalError(EngineError):
    """The quotient algebra has irreducible paths of unbounded length."""


class ConsistencyError(EngineError):
    """Two routes to the same quantity disagree; signals an engine bug."""
