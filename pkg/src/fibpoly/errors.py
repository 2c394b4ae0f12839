"""Exception hierarchy. Division by zero uses the builtin ZeroDivisionError."""


class FibPolyError(ValueError):
    """Base class for domain errors (bad inputs, violated preconditions)."""


class SpecMismatch(FibPolyError):
    """Operands live over different fields."""


class NotIrreducible(FibPolyError):
    pass


class ConstantInput(FibPolyError):
    pass


class NotCoprime(FibPolyError):
    pass


class BNotCoprime(NotCoprime):
    """gcd(b, M) != 1, so the sequence is not purely periodic modulo M."""


class PreconditionViolated(FibPolyError):
    pass


class DegreeCapExceeded(FibPolyError):
    pass


class CoeffOutOfField(FibPolyError):
    pass


class ParseError(FibPolyError):
    def __init__(self, message: str, position: int, expected: str = ""):
        self.position = position
        self.expected = expected
        text = f"{message} at position {position}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class InternalMismatch(RuntimeError):
    """Two independent computations disagreed. Always a bug."""


class ScanBoundExceeded(RuntimeError):
    """The brute-force scan ran past the state-space bound. Always a bug."""
