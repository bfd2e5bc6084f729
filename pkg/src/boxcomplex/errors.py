"""Exception hierarchy shared by the library and the CLI."""


class BoxComplexError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(BoxComplexError, ValueError):
    """Malformed graph6 / edge-list input."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class GraphValidationError(BoxComplexError, ValueError):
    """A graph violates one of the standing assumptions."""

    def __init__(self, invariant: str, message: str, witness=None):
        self.invariant = invariant
        self.witness = witness
        super().__init__(f"{invariant}: {message}")


class ParameterError(BoxComplexError, ValueError):
    pass


class ConstructionError(BoxComplexError, ValueError):
    pass


class ResourceError(BoxComplexError, RuntimeError):
    pass


class VerificationError(BoxComplexError, AssertionError):
    """A certificate that must hold did not. Carries a witness."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        if witness is not None:
            message = f"{message}; witness: {witness!r}"
        super().__init__(message)


class TheoremViolation(VerificationError):
    pass
