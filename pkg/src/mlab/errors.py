"""Exception types shared across the package."""


class MlabError(Exception):
    """Base class for all errors raised by mlab."""


class Refused(MlabError):
    """An operation declined to run: a bound or a precondition failed."""


class BoundExceeded(Refused):
    def __init__(self, what, estimate, bound):
        self.what = what
        self.estimate = estimate
        self.bound = bound
        super().__init__(f"{what}: search space {estimate} exceeds bound {bound}")


class PreconditionError(Refused):
    pass


class NotSaturated(Refused):
    """A successor chain did not close up within the exploration bound."""

    def __init__(self, bound):
        self.bound = bound
        super().__init__(f"chain not saturated within {bound} steps")


class FunctorMismatch(MlabError):
    pass


class ParseError(MlabError):
    """Text-format diagnostic with a stable code and a 1-based position."""

    def __init__(self, code, message, line=0, column=0):
        self.code = code
        self.message = message
        self.line = line
        self.column = column
        where = f" at {line}:{column}" if line else ""
        super().__init__(f"{code}{where}: {message}")
