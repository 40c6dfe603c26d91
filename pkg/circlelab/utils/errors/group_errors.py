class GroupError(Exception):
    """Base exception for all errors related to surface groups and their meshes."""


class InvalidGroupSpec(GroupError):
    """Raised when a group spec names an unknown family or malformed matrices."""


class RelatorError(GroupError):
    """Raised when a relator word does not evaluate to the identity."""


class CuspWordError(GroupError):
    """Raised when a cusp word is not parabolic."""


class EulerCharacteristicError(GroupError):
    """Raised when the surface is not hyperbolic (Euler characteristic >= 0)."""


class SidePairingError(GroupError):
    """Raised when a side pairing does not carry its side onto the partner side."""


class DegenerateCellError(GroupError):
    """Raised when clipping the polygon leaves a cell with vanishing area."""


class FoldingError(GroupError):
    """Raised when a point cannot be folded into the fundamental polygon."""
