"""
Curvature of the averaged connection and the round-loop analysis.

K(z) = -((1-|z|^2)^2 / 4) · A(z) / π, where A(z) is the signed area enclosed by
the slope loop (shoelace sum over the θ grid). The Poisson field has round
loops of radius 2/(1-|z|^2), traversed counterclockwise, and K = -1.
"""



from __future__ import annotations

import numpy as np

from ..constants import TWO_PI, setting
from ..harmonic_measure import log_gradient_norm
from .slopes import ConnectionField, slope_loop



def signed_area(loop: np.ndarray) -> np.ndarray:
    """Shoelace area of closed loops; `loop` has shape (..., samples, 2)."""
    x, y = loop[..., 0], loop[..., 1]
    return 0.5 * np.sum(x * np.roll(y, -1, axis=-1) - np.roll(x, -1, axis=-1) * y, axis=-1)


def curvature(conn: ConnectionField) -> np.ndarray:
    """K per cell (NaN where the cell has no slope loop); also stored on `conn.K`."""
    scale = (1.0 - np.abs(conn.mesh.centers) ** 2) ** 2 / 4.0
    K = -scale * signed_area(conn.slopes) / np.pi
    conn.K = np.where(conn.valid, K, np.nan)
    return conn.K


class MaximalityFit:
    """
    Attributes:
    -----------
        radius_deviation : float
            |R / (2/(1-|z|^2)) - 1| for the least-squares circle.
        speed_deviation : float
            Largest relative deviation of |dω/dθ| from 2/(1-|z|^2).
        alpha : float
            Phase of the fitted parametrization ω(θ) = c + R e^{i(θ + α)}.
        center : complex
            Fitted center.
        flat : bool
            The loop is degenerate (radius below the flat threshold).
    """
    def __init__(self, radius_deviation: float, speed_deviation: float, alpha: float, center: complex, flat: bool):
        self.radius_deviation = radius_deviation
        self.speed_deviation = speed_deviation
        self.alpha = alpha
        self.center = center
        self.flat = flat

    def to_record(self) -> dict:
        return {
            "radius_deviation": self.radius_deviation,
            "speed_deviation": self.speed_deviation,
            "alpha": self.alpha,
            "center_re": self.center.real,
            "center_im": self.center.imag,
            "flat": self.flat,
        }


def fit_circle(points: np.ndarray) -> tuple[complex, float]:
    """Algebraic least-squares circle through planar points."""
    x, y = points[:, 0], points[:, 1]
    design = np.column_stack([x, y, np.ones_like(x)])
    (a, b, c), *_ = np.linalg.lstsq(design, x ** 2 + y ** 2, rcond=None)
    center = complex(a / 2.0, b / 2.0)
    return center, float(np.sqrt(max(c + abs(center) ** 2, 0.0)))


def maximality_fit(conn: ConnectionField, cell: int) -> MaximalityFit:
    loop = slope_loop(conn, cell)
    expected = 2.0 / (1.0 - abs(conn.mesh.centers[cell]) ** 2)
    spread = float(np.max(np.linalg.norm(loop - loop.mean(axis=0), axis=1)))
    if spread < setting("connection", "flat_radius", 1e-9):
        return MaximalityFit(1.0, 1.0, 0.0, 0j, True)

    center, radius = fit_circle(loop)
    step = TWO_PI / loop.shape[0]
    speed = np.linalg.norm(np.roll(loop, -1, axis=0) - loop, axis=1) / step
    offsets = (loop[:, 0] + 1j * loop[:, 1]) - center
    alpha = float(np.angle(np.mean(np.exp(1j * (np.angle(offsets) - conn.theta)))))
    return MaximalityFit(
        abs(radius / expected - 1.0),
        float(np.max(np.abs(speed / expected - 1.0))),
        alpha, center, False)


def isoperimetric_chain(conn: ConnectionField) -> dict[str, np.ndarray]:
    """
    Per-cell links |K| <= (1/4π²) L² (1-|z|^2)²/4 <= (max |d log h|_hyp)² on cells
    with four interior neighbors, where L is the length of the slope loop.
    """
    K = curvature(conn) if conn.K is None else conn.K
    cells, norms = log_gradient_norm(conn.field)
    cells_ok = conn.valid[cells]
    cells, norms = cells[cells_ok], norms[cells_ok]
    loops = conn.slopes[cells]
    length = np.sum(np.linalg.norm(np.roll(loops, -1, axis=1) - loops, axis=2), axis=1)
    scale = (1.0 - np.abs(conn.mesh.centers[cells]) ** 2) ** 2 / 4.0
    return {
        "cells": cells,
        "abs_K": np.abs(K[cells]),
        "isoperimetric": length ** 2 * scale / (4.0 * np.pi ** 2),
        "harnack_squared": norms.max(axis=1) ** 2,
    }


def curvature_summary(conn: ConnectionField, slack: float | None=None, cells: np.ndarray | None=None) -> dict:
    """Range of K over the valid cells, or over the valid ones among `cells`."""
    slack = setting("connection", "curvature_slack", 0.05) if slack is None else slack
    K = curvature(conn) if conn.K is None else conn.K
    mask = conn.valid if cells is None else conn.valid & np.isin(np.arange(len(K)), cells)
    values = K[mask]
    if not values.size:
        return {"min_K": 0.0, "max_K": 0.0, "max_excess": -1.0, "passed": True, "cells": 0}
    return {
        "min_K": float(values.min()),
        "max_K": float(values.max()),
        "max_excess": float(np.abs(values).max() - 1.0),
        "passed": bool(np.abs(values).max() <= 1.0 + slack),
        "cells": int(values.size),
    }
