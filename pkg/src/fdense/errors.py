"""Exception hierarchy shared by every solver and the CLI."""


class FdsError(Exception):
    """Base class for all errors raised by fdense."""


class ParseError(FdsError, ValueError):
    """Malformed input text; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ContractError(FdsError, ValueError):
    """A precondition of an operation does not hold (bad parameters, wrong f shape)."""


class GuardError(FdsError):
    """A resource guard tripped (enumeration budget, oracle size limit)."""
