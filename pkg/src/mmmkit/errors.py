"""Exception types shared across the package."""


class MMMKitError(Exception):
    """Base class for every error this package raises deliberately."""


class ParseError(MMMKitError):
    """Text input does not conform to the polynomial grammar."""

    def __init__(self, message, token=None, position=None):
        super().__init__(message)
        self.token = token
        self.position = position


class AlphabetMismatch(MMMKitError):
    """Operands live over different generator alphabets."""


class DimensionMismatch(MMMKitError):
    """Vector or subspace dimensions disagree."""


class InhomogeneousError(MMMKitError):
    """A homogeneous element was required."""


class QueryError(MMMKitError):
    """Query parameters are out of range, e.g. degree below order."""
