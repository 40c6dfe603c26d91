"""Closed horocycles around the cusps, as paths in the disk from a point to its image under the cusp word."""



from __future__ import annotations

import numpy as np

from ..utils.errors import InvalidGroupSpec
from .moebius import to_disk
from .polygon import Cusp, SurfaceGroup



class Horocircle:
    """The horocycle at normalized height `level` around one cusp.

    Attributes:
    -----------
        cusp : Cusp
            The cusp.
        cusp_index : int
            Position of the cusp in the group.
        level : float
            Height Y in the normalized upper half-plane.
        offset : float
            Real part of the starting point before normalization.
    """
    def __init__(self, cusp: Cusp, cusp_index: int, level: float, offset: float=0.0):
        if level <= 0:
            raise InvalidGroupSpec(f"horocircle level must be positive, got {level}")
        self.cusp = cusp
        self.cusp_index = cusp_index
        self.level = float(level)
        self.offset = float(offset)

    @property
    def word(self) -> str:
        return self.cusp.word

    @property
    def length(self) -> float:
        """Hyperbolic length of the closed curve, 1/Y."""
        return 1.0 / self.level

    @property
    def delta(self) -> float:
        """Displacement of the cusp word along the curve, 2 arsinh(1/(2Y))."""
        return 2.0 * np.arcsinh(1.0 / (2.0 * self.level))

    def points(self, samples: int) -> np.ndarray:
        """`samples + 1` disk points; the last is the cusp word applied to the first."""
        u = np.linspace(0.0, 1.0, samples + 1)
        w = self.offset + self.cusp.sigma * u + 1j * self.level
        (a, b), (c, d) = self.cusp.normalizer.matrix
        return to_disk((a * w + b) / (c * w + d))

    def __repr__(self):
        return f"Horocircle(cusp={self.cusp_index}, level={self.level:g}, word={self.word!r})"


def horocircle_family(group: SurfaceGroup, cusp_index: int, levels) -> list[Horocircle]:
    """Horocircles around one cusp at strictly increasing `levels`."""
    if not group.cusps:
        raise InvalidGroupSpec(f"{group.name} has no cusps")
    if not 0 <= cusp_index < len(group.cusps):
        raise InvalidGroupSpec(f"cusp index {cusp_index} out of range")
    if any(lower >= upper for lower, upper in zip(levels, levels[1:])):
        raise InvalidGroupSpec(f"horocircle levels must be strictly increasing, got {list(levels)}")
    cusp = group.cusps[cusp_index]
    return [Horocircle(cusp, cusp_index, level) for level in levels]
