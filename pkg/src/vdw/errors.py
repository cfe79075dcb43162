class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class StructuralError(ValueError):
    """A matching is not a set of disjoint cover pairs."""


class PreconditionError(ValueError):
    """A strategy was invoked outside the hypotheses it is proved under."""


class InvariantViolation(AssertionError):
    """An internal claim that must hold under the preconditions failed."""


class MatchingParseError(ValueError):
    def __init__(self, lineno: int, msg: str) -> None:
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno
