"""Exception types shared across the package."""


class QPSiltError(Exception):
    """Base class."""


class FieldMismatchError(QPSiltError, ValueError):
    pass


class DimensionError(QPSiltError, ValueError):
    pass


class UnknownNameError(QPSiltError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class NotMutableError(QPSiltError, ValueError):
    def __init__(self, message, index=None, vertex=None):
        super().__init__(message)
        self.index = index
        self.vertex = vertex


class TruncationError(QPSiltError):
    """A computation hit the degree cap with nonzero terms beyond it."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CapExceededError(QPSiltError):
    """Stabilization or node caps were reached without a certified answer."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class FieldTooSmallError(QPSiltError):
    pass


class NotBasicError(QPSiltError, ValueError):
    pass


class NotRigidError(QPSiltError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSiltingError(QPSiltError, ValueError):
    pass


class LeavesWindowError(QPSiltError):
    """A mutated summand is not homotopic to a complex in degrees -1, 0."""

    def __init__(self, message, complex=None):
        super().__init__(message)
        self.complex = complex


class InvariantViolation(QPSiltError, AssertionError):
    """An internal consistency check failed; this indicates a bug."""


class ParseError(QPSiltError, ValueError):
    def __init__(self, message, line=None, col=None):
        loc = f"{line}:{col}: " if line is not None else ""
        super().__init__(loc + message)
        self.line = line
        self.col = col
