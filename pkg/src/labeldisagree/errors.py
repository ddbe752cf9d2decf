"""Exception types shared across the package."""


class DisagreementError(Exception):
    """Base class for every error raised by labeldisagree."""


class ParameterError(DisagreementError, ValueError):
    """A penalty family parameter is outside its admissible range."""


class ValidationError(DisagreementError, ValueError):
    """Sampled penalty values are not nondecreasing and concave.

    ``index`` is the sample at which the check broke and ``kind`` is one of
    ``"finite"``, ``"nonnegative"``, ``"monotonicity"`` or ``"concavity"``.
    """

    def __init__(self, index: int, kind: str, detail: str = ""):
        self.index = index
        self.kind = kind
        msg = f"{kind} check failed at sample {index}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class RangeError(DisagreementError, ValueError):
    """An argument lies outside the sampled or supported range."""


class LengthMismatch(DisagreementError, ValueError):
    """Two label vectors (or a vector and an instance) differ in length."""


class CapTooLarge(DisagreementError, ValueError):
    """A truncation cap exceeds half the hyperedge size."""


class TooLarge(DisagreementError, ValueError):
    """The instance is too big for exhaustive enumeration."""


class ParseError(DisagreementError, ValueError):
    """An instance document could not be parsed."""


class SemanticError(DisagreementError, ValueError):
    """An instance is well-formed but describes an invalid problem.

    ``hyperedge`` holds the offending hyperedge index when there is one.
    """

    def __init__(self, message: str, hyperedge: int | None = None):
        self.hyperedge = hyperedge
        if hyperedge is not None:
            message = f"hyperedge {hyperedge}: {message}"
        super().__init__(message)
