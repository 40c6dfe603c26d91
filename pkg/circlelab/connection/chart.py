"""
The fiber chart φ(z, t) = ∫₀ᵗ h(z, s) ds and its inverse τ(z, ·).

φ(z, ·) is stored at the bin edges and is piecewise linear in between; it is
extended to the line by φ(z, t + 2π) = φ(z, t) + 2π.
"""



from __future__ import annotations

import numpy as np

from ..circle_dynamics import CircleLift
from ..constants import TWO_PI
from ..harmonic_measure import FiberMeasureField, measure_at
from ..hyperbolic_core import hyperbolic_distance
from ..utils.errors import NonMonotoneCumulative



def cumulative(density: np.ndarray) -> np.ndarray:
    """Cumulative at the bin edges (last axis), renormalized to end at 2π."""
    density = np.asarray(density, dtype=float)
    if np.any(density <= 0.0):
        raise NonMonotoneCumulative(f"density has non-positive entries (min {density.min():.3e})")
    steps = np.cumsum(density, axis=-1)
    zeros = np.zeros(density.shape[:-1] + (1,))
    return TWO_PI * np.concatenate([zeros, steps / steps[..., -1:]], axis=-1)


def integrate_phi(field: FiberMeasureField) -> np.ndarray:
    """φ at the bin edges for every cell; shape (cells, bins + 1)."""
    return cumulative(field.h)


def phi_lift(row: np.ndarray, t) -> np.ndarray:
    """φ(z, t) for any real t, from the edge values of one cell."""
    edges = np.linspace(0.0, TWO_PI, row.size)
    t = np.asarray(t, dtype=float)
    turns = np.floor(t / TWO_PI)
    return np.interp(t - TWO_PI * turns, edges, row) + TWO_PI * turns


def invert_phi(row: np.ndarray, theta) -> np.ndarray:
    """τ(z, θ) for θ in [0, 2π]: linear interpolation on the monotone cumulative."""
    edges = np.linspace(0.0, TWO_PI, row.size)
    return np.interp(np.asarray(theta, dtype=float), row, edges)


def tau_lift(row: np.ndarray, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    turns = np.floor(theta / TWO_PI)
    return invert_phi(row, theta - TWO_PI * turns) + TWO_PI * turns


def lipschitz_ratio(field: FiberMeasureField, z: complex) -> tuple[float, float]:
    """
    Largest slope of τ(z, ·) and the bound e^{d(0, z)} it must respect.

    τ(z, ·) is piecewise linear, so its largest difference quotient is the largest
    reciprocal density after normalization.
    """
    row = cumulative(measure_at(field, z))
    slopes = np.diff(np.linspace(0.0, TWO_PI, row.size)) / np.diff(row)
    return float(slopes.max()), float(np.exp(hyperbolic_distance(0.0, z)))


def cocycle_defect(field: FiberMeasureField, word: str, z: complex, samples: int=64) -> float:
    """
    Spread over θ of φ(γz, ρ(γ)(τ(z, θ))) - θ.

    It vanishes for a harmonic equivariant field: the transported chart differs
    from the chart at γz by a constant.
    """
    group, rep = field.mesh.group, field.rep
    gamma = group.element(word)
    lift: CircleLift = rep.evaluate_word(word)
    here = cumulative(measure_at(field, z))
    there = cumulative(measure_at(field, complex(gamma.apply(z))))
    theta = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    values = phi_lift(there, lift(invert_phi(here, theta))) - theta
    return float(values.max() - values.min())
