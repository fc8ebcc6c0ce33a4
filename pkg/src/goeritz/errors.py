"""Exception hierarchy shared by all modules."""


class GoeritzError(Exception):
    """Base class for errors raised by this package."""


class ArithmeticDomainError(GoeritzError):
    """An input is not an exact integer, or a quantity left the integer domain."""


class DeterminantError(GoeritzError):
    """A 2x2 block used as a transporter is not unimodular."""


class DegenerateBlockError(GoeritzError):
    """A 2-component block of a homology vector is zero, so its gcd carries no information."""


class HypothesisError(GoeritzError):
    """Inputs fall outside the hypotheses of the requested decision procedure."""


class PreconditionError(GoeritzError):
    """A family constructor or sequence builder received inadmissible parameters."""


class ParseError(GoeritzError):
    """Malformed textual input (vector, block or word)."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)
