"""Exception hierarchy shared across the package."""


class RiderCountError(Exception):
    """Base class for every error raised by ridercount."""


class ZeroMove(RiderCountError, ValueError):
    pass


class ParseError(RiderCountError, ValueError):
    pass


class ParallelMoves(ParseError):
    pass


class EmptyPiece(ParseError):
    pass


class NonIntegerResult(RiderCountError, ArithmeticError):
    """A closed formula produced a non-integer where an integer count was expected."""


class TypeCountMismatch(RiderCountError):
    def __init__(self, message, *, expected=None, actual=None, witness=None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual
        self.witness = witness


class UnsupportedQ(RiderCountError, ValueError):
    pass


class ResourceLimit(RiderCountError):
    pass


class InsufficientData(RiderCountError):
    def __init__(self, residue, have, need, message=None):
        self.residue = residue
        self.have = have
        self.need = need
        super().__init__(
            message
            or f"residue class {residue}: have {have} point(s), need {need}"
        )


class InconsistentData(RiderCountError):
    def __init__(self, n, expected, actual):
        self.n = n
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"fit predicts {expected} at n={n} but data says {actual}"
        )


class NoPeriodFound(RiderCountError):
    pass


class InconsistentSystem(RiderCountError):
    pass


class CacheCorruption(RiderCountError):
    pass
