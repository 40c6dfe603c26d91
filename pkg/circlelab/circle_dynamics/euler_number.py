"""Euler numbers, the Milnor–Wood margin and finite-orbit detection."""



from __future__ import annotations

from collections import deque

import numpy as np

from ..constants import TWO_PI, setting
from ..utils.errors import RelatorNotIdentity
from .representation import Representation
from .translation import translation_number



class EulerResult:
    """
    Attributes:
    -----------
        value : float
            e(ρ).
        closed : bool
            Whether it came from the lifted relator (an integer) or from cusp words.
        residual : float
            Distance of the lifted relator from an integer translation (closed case).
        cusp_translations : list[float]
            τ of the canonical lifts of the cusp words (cusped case).
    """
    def __init__(self, value: float, closed: bool, residual: float=0.0, cusp_translations: list[float] | None=None):
        self.value = value
        self.closed = closed
        self.residual = residual
        self.cusp_translations = cusp_translations or []

    def __repr__(self):
        return f"EulerResult(value={self.value!r}, closed={self.closed})"

    def to_record(self) -> dict:
        return {
            "euler_number": self.value,
            "closed": self.closed,
            "relator_residual": self.residual,
            "cusp_translations": self.cusp_translations,
        }


def cusp_translations(rep: Representation, tol: float | None=None) -> list[float]:
    return [translation_number(rep.evaluate_word(word), tol) for word in rep.group.cusp_words]


def euler_details(rep: Representation, tol: float | None=None) -> EulerResult:
    """
    Closed surfaces: the lifted relator is translation by 2πk and e = -k.
    Cusped surfaces: e = -Σ τ(lifted cusp words).
    """
    if rep.group.closed:
        samples = np.linspace(0.0, TWO_PI, setting("circle", "sample_angles", 256), endpoint=False)
        lifted = rep.evaluate_word(rep.group.relator_words[0])
        shifts = lifted.displacement(samples) / TWO_PI
        k = int(np.round(np.mean(shifts)))
        residual = float(np.max(np.abs(shifts - k)))
        if residual > 1e-6:
            raise RelatorNotIdentity(f"lifted relator is not a translation (residual {residual:.3e})")
        return EulerResult(float(-k), True, residual)

    taus = cusp_translations(rep, tol)
    return EulerResult(-float(sum(taus)), False, cusp_translations=taus)


def euler_number(rep: Representation, tol: float | None=None) -> float:
    return euler_details(rep, tol).value


def milnor_wood_margin(rep: Representation, tol: float | None=None) -> float:
    """|χ| - |e(ρ)|, non-negative for every representation."""
    return abs(rep.group.euler_characteristic) - abs(euler_number(rep, tol))


def _orbit_candidates(rep: Representation) -> np.ndarray:
    points = [np.linspace(0.0, TWO_PI, 64, endpoint=False)]
    for label, lift in rep.lifts.items():
        marks = lift.breakpoint_set()
        points.append(marks)
        points.append(rep.letter(label)(marks))
        points.append(rep.letter(label.upper())(marks))
    return np.unique(np.mod(np.concatenate(points), TWO_PI))


def _key(x: float, tol: float) -> int:
    return int(np.round(np.mod(x, TWO_PI) / tol))


def detect_finite_orbit(rep: Representation, max_period: int=12, tol: float=1e-9) -> list[float] | None:
    """
    Searches for a finite orbit among breakpoint and grid candidates.

    A candidate's orbit is grown breadth-first under every generator and its
    inverse; it is reported once it closes with at most `max_period` points.
    Returns the sorted orbit, or None when no candidate closes.
    """
    letters = [label for label in rep.group.labels] + [label.upper() for label in rep.group.labels]
    maps = [rep.letter(letter) for letter in letters]
    modulus = _key(TWO_PI, tol)

    for start in _orbit_candidates(rep):
        orbit = {_key(start, tol) % modulus: float(start)}
        queue = deque([float(start)])
        while queue and len(orbit) <= max_period:
            x = queue.popleft()
            for f in maps:
                y = float(np.mod(f(x), TWO_PI))
                key = _key(y, tol) % modulus
                if key in orbit or (key - 1) % modulus in orbit or (key + 1) % modulus in orbit:
                    continue
                orbit[key] = y
                queue.append(y)
        if len(orbit) <= max_period and not queue:
            return sorted(orbit.values())
    return None
