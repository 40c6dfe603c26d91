"""
Translation numbers τ(F) = lim (Fⁿ(x) - x)/(2πn).

Möbius lifts are handled exactly: through a boundary fixed point when the
element is parabolic or hyperbolic, through the rotation angle at the interior
fixed point when it is elliptic. Piecewise-linear lifts first look for a
periodic point of period at most `rational_depth` among the breakpoints of the
iterates; failing that, the lift is squared repeatedly and τ is bracketed by
the extreme displacements of the power. The simplest fraction inside each
bracket is tried as an exact value. Powers are composed as non-strict lifts,
since contracting pieces of high iterates can become flat in floating point.
"""



from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..constants import TWO_PI, setting
from ..utils.errors import CircleMapError, TranslationNumberNotConverged
from .lifts import (
    CircleLift, ConjugateCircleLift, MoebiusCircleLift, PLCircleLift,
    ReflectedCircleLift)



def _moebius_translation(f: MoebiusCircleLift) -> float:
    fixed = f.element.boundary_fixed_angles()
    if fixed.size:
        return float(np.round(float(f(fixed[0]) - fixed[0]) / TWO_PI))

    (a, b), (c, d) = f.element.matrix
    # interior fixed point, taken in the upper half-plane
    w = ((a - d) + 1j * np.sign(c) * np.sqrt(4.0 - (a + d) ** 2)) / (2.0 * c)
    angle = float(np.angle(1.0 / (c * w + d) ** 2))
    x = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    d_x = f.displacement(x)
    mid = 0.5 * (d_x.min() + d_x.max())
    return (angle + TWO_PI * round((mid - angle) / TWO_PI)) / TWO_PI


def _loose(f: CircleLift) -> CircleLift:
    return f.loosened() if isinstance(f, PLCircleLift) else f


def _displacement_range(f: CircleLift) -> tuple[float, float]:
    """Extreme values of F(x) - x; attained at breakpoints for PL lifts."""
    pts = f.breakpoints if isinstance(f, PLCircleLift) else np.linspace(0.0, TWO_PI, 512, endpoint=False)
    d = f.displacement(pts)
    return float(d.min()), float(d.max())


def _has_periodic_point(power: CircleLift, p: int, atol: float) -> bool:
    """Whether F^q(x) = x + 2πp somewhere, given the power F^q."""
    low, high = _displacement_range(power)
    return low - atol <= TWO_PI * p <= high + atol


def simplest_fraction(low: float, high: float) -> Fraction:
    """The fraction of smallest denominator in [low, high]."""
    low, high = Fraction(low), Fraction(high)
    floor = math.floor(low)
    if floor == low or floor + 1 <= high:
        return Fraction(floor if floor == low else floor + 1)
    return floor + 1 / simplest_fraction(1 / (high - floor), 1 / (low - floor))


def rational_translation(f: PLCircleLift, depth: int, atol: float=1e-9) -> float | None:
    """p/q when some iterate F^q - 2πp has a fixed point, q <= depth; None otherwise."""
    f = _loose(f)
    power = f
    for q in range(1, depth + 1):
        if q > 1:
            power = f.compose(power)
        low, high = _displacement_range(power)
        p = int(np.ceil(low / TWO_PI - atol))
        if p <= high / TWO_PI + atol:
            return p / q
    return None


def orbit_translation(f: CircleLift, x: float, iterations: int) -> float:
    """(F^n(x) - x) / 2πn; within 1/n of τ(F) for every base point x."""
    return float(_loose(f).power(iterations)(x) - x) / (TWO_PI * iterations)


def translation_bracket(f: CircleLift, tol: float, cap: int, max_denominator: int | None=None) -> tuple[float, float, int]:
    """
    Brackets τ(F) by squaring F until the bracket is narrower than `tol`.

    Whenever the simplest fraction p/q inside the bracket has q <= `max_denominator`,
    F^q is checked for a point moved by exactly 2πp; a hit returns the degenerate
    bracket (p/q, p/q).

    Returns:
    --------
        (low, high, iterations)

    Raises:
    -------
        TranslationNumberNotConverged
            When a power would exceed `cap` breakpoints; carries the last bracket.
    """
    max_denominator = max_denominator or setting("circle", "rational_denominator", 4096)
    f = _loose(f)
    power, n = f, 1
    bracket, tried = (-np.inf, np.inf), set()
    for iteration in range(1, 200):
        try:
            low, high = _displacement_range(power)
            bracket = (low / (TWO_PI * n), high / (TWO_PI * n))
            if bracket[1] - bracket[0] <= tol:
                return bracket[0], bracket[1], iteration

            guess = simplest_fraction(*bracket)
            if guess.denominator <= max_denominator and guess not in tried:
                tried.add(guess)
                atol = 1e-9 * max(1.0, abs(float(guess.numerator)))
                if _has_periodic_point(f.power(guess.denominator), guess.numerator, atol):
                    return float(guess), float(guess), iteration

            power = power.compose(power)
        except CircleMapError as e:
            raise TranslationNumberNotConverged(bracket, iteration) from e
        n *= 2
        if isinstance(power, PLCircleLift) and power.breakpoints.size > cap:
            raise TranslationNumberNotConverged(bracket, iteration)
    raise TranslationNumberNotConverged(bracket, iteration)


def translation_number(f: CircleLift, tol: float | None=None) -> float:
    """
    Translation number of a lift.

    Params:
    -------
        f : CircleLift
            The lift.
        tol : float
            Target accuracy for lifts without an exact formula.
    """
    tol = tol or setting("circle", "translation_tol", 1e-8)
    if isinstance(f, MoebiusCircleLift):
        return _moebius_translation(f)
    if isinstance(f, ConjugateCircleLift):
        return translation_number(f.inner, tol)
    if isinstance(f, ReflectedCircleLift):
        return -translation_number(f.inner, tol)

    if isinstance(f, PLCircleLift):
        exact = rational_translation(f, setting("circle", "rational_depth", 12))
        if exact is not None:
            return exact
    cap = setting("circle", "breakpoint_cap", 1 << 20)
    low, high, _ = translation_bracket(f, tol, cap)
    return 0.5 * (low + high)
