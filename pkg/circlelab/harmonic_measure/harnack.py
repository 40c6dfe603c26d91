"""Harnack check: the hyperbolic norm of d log h is at most one for positive harmonic densities."""



from __future__ import annotations

import numpy as np

from ..constants import setting
from .field import FiberMeasureField



class HarnackReport:
    """
    Attributes:
    -----------
        cells : np.ndarray
            Cells with a full interior stencil (the ones checked).
        per_cell : np.ndarray
            max over bins of |d log h|_hyp, per checked cell.
        slack : float
            Discretization budget added to the bound 1.
    """
    def __init__(self, cells: np.ndarray, per_cell: np.ndarray, slack: float):
        self.cells = cells
        self.per_cell = per_cell
        self.slack = slack

    @property
    def maximum(self) -> float:
        return float(self.per_cell.max()) if self.per_cell.size else 0.0

    @property
    def margins(self) -> np.ndarray:
        return 1.0 + self.slack - self.per_cell

    @property
    def passed(self) -> bool:
        return self.maximum <= 1.0 + self.slack

    def to_record(self) -> dict:
        return {
            "max_dlogh_hyp": self.maximum,
            "slack": self.slack,
            "checked_cells": int(self.cells.size),
            "min_margin": float(self.margins.min()) if self.per_cell.size else 1.0 + self.slack,
            "passed": self.passed,
        }


def log_gradient_norm(field: FiberMeasureField) -> tuple[np.ndarray, np.ndarray]:
    """
    ((1-|z|^2)/2)·|∇ log h| by central differences, for every bin.

    Returns (cells, values) with values of shape (len(cells), bins).
    """
    mesh = field.mesh
    cells = np.flatnonzero(mesh.interior_mask)
    log_h = np.log(field.h)
    east, west, north, south = (mesh.neighbors[cells, d] for d in range(4))
    two_h = 2.0 * mesh.spacing
    dx = (log_h[east] - log_h[west]) / two_h
    dy = (log_h[north] - log_h[south]) / two_h
    scale = (1.0 - np.abs(mesh.centers[cells]) ** 2) / 2.0
    return cells, scale[:, None] * np.hypot(dx, dy)


def harnack_check(field: FiberMeasureField, slack: float | None=None) -> HarnackReport:
    slack = setting("connection", "harnack_slack", 0.05) if slack is None else slack
    cells, norms = log_gradient_norm(field)
    per_cell = norms.max(axis=1) if cells.size else np.array([])
    return HarnackReport(cells, per_cell, slack)
