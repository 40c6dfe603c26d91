class CircleMapError(Exception):
    """Base exception for all errors related to circle lifts and representations."""


class NonMonotoneLift(CircleMapError):
    """Raised when breakpoint values of a lift are not strictly increasing."""


class UnknownGenerator(CircleMapError):
    """Raised when a word uses a label the representation does not know."""


class RelatorNotIdentity(CircleMapError):
    """Raised when a relator acts on the circle by something other than the identity."""


class TranslationNumberNotConverged(CircleMapError):
    """Raised when the translation number bracket stays wider than the tolerance."""

    def __init__(self, bracket: tuple[float, float], iterations: int):
        self.bracket = bracket
        self.iterations = iterations
        super().__init__(
            f"translation number not resolved after {iterations} iterations, "
            f"bracket=[{bracket[0]!r}, {bracket[1]!r}]")
