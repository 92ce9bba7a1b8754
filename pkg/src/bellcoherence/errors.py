"""Exception hierarchy shared by every module of the package."""


class BellCoherenceError(Exception):
    """Base class for all errors raised by this package."""


class PhysicalityViolation(BellCoherenceError, ValueError):
    """Correlation coefficients do not describe a positive semidefinite state."""


class NotBellDiagonal(BellCoherenceError, ValueError):
    pass


class NotHermitian(BellCoherenceError, ValueError):
    pass


class InvalidDensityMatrix(BellCoherenceError, ValueError):
    """Trace, Hermiticity or positivity check failed on a 4x4 matrix."""


class ParamOutOfRange(BellCoherenceError, ValueError):
    pass


class IterationCapExceeded(BellCoherenceError, ValueError):
    pass


class EmptyInput(BellCoherenceError, ValueError):
    pass


class UnsupportedCombination(BellCoherenceError, ValueError):
    """No tabulated closed form exists for the requested channel arrangement."""


class UnknownPreset(BellCoherenceError, KeyError):
    pass


class ParseError(BellCoherenceError, ValueError):
    """Syntax error in a channel spec string.

    ``offset`` is the byte offset of the offending character and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} at offset {offset}; expected one of {sorted(self.expected)}"
        else:
            message = f"{message} at offset {offset}"
        super().__init__(message)


class SemanticError(BellCoherenceError, ValueError):
    """Well-formed channel spec that is nonetheless meaningless."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} at offset {offset}"
        super().__init__(message)
