"""
Holonomy of the averaged connection along loops.

The lift θ̃ of a path moves by dθ̃ = Σ a_j dx_j, so the holonomy is a line integral
(composite trapezoid). Paths from z to γz are closed on the surface; the chart at
γz differs from the chart at z by φ(γz, ρ̃(γ)(0)), which is subtracted before
dividing by 2π.
"""



from __future__ import annotations

import numpy as np

from ..circle_dynamics import translation_number
from ..connection import cumulative, phi_lift, point_connection
from ..constants import TWO_PI
from ..harmonic_measure import FiberMeasureField, measure_at
from ..hyperbolic_core import Horocircle
from ..utils.errors import LoopOutsideMesh



def line_integral(field: FiberMeasureField, points: np.ndarray) -> float:
    coefficients = np.array([point_connection(field, complex(z)) for z in points])
    steps = np.diff(points)
    mean = 0.5 * (coefficients[1:] + coefficients[:-1])
    return float(np.sum(mean[:, 0] * steps.real + mean[:, 1] * steps.imag))


def _check_inside(field: FiberMeasureField, points: np.ndarray):
    mesh = field.mesh
    folded, _ = mesh.group.fold_many(points)
    outside = ~mesh.in_region(folded)
    if outside.any():
        raise LoopOutsideMesh(f"{int(outside.sum())} loop samples lie beyond the cusp cutoff")


def holonomy_translation(field: FiberMeasureField, points: np.ndarray, word: str | None=None) -> float:
    """
    Translation number of the holonomy along a sampled path.

    Params:
    -------
        field : FiberMeasureField
            Field defining the connection.
        points : np.ndarray
            Disk samples of the path.
        word : str | None
            γ when the path ends at γ applied to its start; None for loops closed in the disk.
    """
    points = np.asarray(points, dtype=complex)
    _check_inside(field, points)
    total = line_integral(field, points)
    if word:
        lift = field.rep.evaluate_word(word)
        row = cumulative(measure_at(field, complex(points[-1])))
        total -= float(phi_lift(row, lift(0.0)))
    return total / TWO_PI


def horocircle_holonomy(field: FiberMeasureField, horocircle: Horocircle, samples: int) -> float:
    return holonomy_translation(field, horocircle.points(samples), horocircle.word)


def boundary_measure_translation(field: FiberMeasureField, horocircle: Horocircle, samples: int=64) -> dict:
    """
    Averages the fiber measures along one horocircle period into a measure ν on the circle
    and reports (1/2π) ν[0, ρ̃(c)(0)) next to τ(ρ̃(c)).
    """
    points = horocircle.points(samples)[:-1]
    density = np.mean([measure_at(field, complex(z)) for z in points], axis=0)
    row = cumulative(density)
    lift = field.rep.evaluate_word(horocircle.word)
    measured = float(phi_lift(row, lift(0.0)) - phi_lift(row, 0.0)) / TWO_PI
    tau = translation_number(lift)
    return {"level": horocircle.level, "measured": measured, "translation": tau, "gap": abs(measured - tau)}
