"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """Input violates an operation's stated precondition."""


class CoconicError(PreconditionError):
    """The point set is contained in a conic."""


class RetryExhaustedError(RuntimeError):
    """A randomised construction failed verification on every attempt."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalInvariantError(RuntimeError):
    """A state the underlying theory rules out; always a bug."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class PrecisionError(RuntimeError):
    """Numeric residuals exceed the tolerance at the working precision."""
