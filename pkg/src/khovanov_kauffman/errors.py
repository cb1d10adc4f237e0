"""Exception hierarchy shared by the parsers and the computation pipeline."""


class KhovanovError(Exception):
    """Base class for every error raised by this package."""


class DiagramSyntaxError(KhovanovError, ValueError):
    """Raised when PD text contains a token that cannot be parsed.

    The character offset of the offending token is kept in ``position``.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class MalformedDiagramError(KhovanovError, ValueError):
    """Raised when a diagram parses but violates a structural invariant."""


class UnknownArcError(MalformedDiagramError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidChoiceError(KhovanovError, ValueError):
    """Raised for a vertex replacement choice that does not fit the graph."""


class CapExceededError(KhovanovError):
    """Raised when a diagram has more crossings than the configured cap."""

    def __init__(self, crossings, cap, context=None):
        msg = f"diagram has {crossings} crossings, above the cap of {cap}"
        if context:
            msg = f"{msg} ({context})"
        super().__init__(msg)
        self.crossings = crossings
        self.cap = cap
        self.context = context


class InvariantViolation(KhovanovError, AssertionError):
    """Raised when an internal consistency check fails (e.g. d∘d != 0)."""


class InvalidMoveError(KhovanovError, ValueError):
    """Raised when a Reidemeister move cannot be performed planarly."""
