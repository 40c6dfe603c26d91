"""
Slope loops and the averaged connection.

For each cell z the loop θ -> (ω₁, ω₂)(z, θ) collects the slopes ∂φ/∂x_j at
t = τ(z, θ). The x-derivatives are central differences of φ across the east/west
and north/south neighbors at equal t; neighbors beyond a side are read from the
transported measure at the true neighbor point, neighbors cut by a cusp
fall back to a one-sided difference. The averaged connection is the θ-mean
of the loop, a_j(z) = (1/2π) ∫ ω_j(z, θ) dθ.
"""



from __future__ import annotations

import numpy as np

from ..constants import TWO_PI
from ..harmonic_measure import FiberMeasureField, measure_at
from ..hyperbolic_core import DIRECTIONS, GHOST, INTERIOR
from ..utils.errors import IncompleteStencil
from .chart import cumulative, integrate_phi, invert_phi



class ConnectionField:
    """Represents the chart, slope loops and averaged connection of a field.

    Attributes:
    -----------
        field : FiberMeasureField
            The field.
        phi : np.ndarray
            (cells, bins + 1) cumulative at the bin edges.
        gradient : np.ndarray
            (cells, 2, bins + 1) ∂φ/∂x_j at the bin edges.
        theta : np.ndarray
            The θ grid of the loops (bin edges without 2π).
        tau : np.ndarray
            (cells, bins) τ(z, θ).
        slopes : np.ndarray
            (cells, bins, 2) slope loops; NaN on cells without a usable stencil.
        averaged : np.ndarray
            (cells, 2) averaged coefficients a_j.
        valid : np.ndarray
            Cells with a slope loop.
        K : np.ndarray
            Curvature per cell (NaN where invalid), filled by `curvature`.
    """
    def __init__(self, field: FiberMeasureField, phi, gradient, tau, slopes, valid):
        self.field = field
        self.phi = phi
        self.gradient = gradient
        self.theta = np.linspace(0.0, TWO_PI, field.bins, endpoint=False)
        self.tau = tau
        self.slopes = slopes
        self.valid = valid
        self.averaged = slopes.mean(axis=1)
        self.K = None

    @property
    def mesh(self):
        return self.field.mesh

    def __repr__(self):
        return f"ConnectionField({self.field.kind}, valid={int(self.valid.sum())}/{len(self.valid)})"


def _neighbor_rows(field: FiberMeasureField) -> dict[tuple[int, int], np.ndarray]:
    """φ rows of every ghost neighbor."""
    mesh = field.mesh
    rows = {}
    for (cell, direction), ghost in mesh.ghosts.items():
        if field.evaluator is not None:
            point = mesh.centers[cell] + mesh.spacing * DIRECTIONS[direction]
            density = field.evaluator(np.array([point]))[0]
        else:
            density = np.asarray(ghost.weights) @ field.h[list(ghost.cells)]
            if ghost.word:
                density = field.transfer(ghost.word) @ density
        rows[(cell, direction)] = cumulative(density)
    return rows


def phi_gradient(field: FiberMeasureField, phi: np.ndarray | None=None) -> tuple[np.ndarray, np.ndarray]:
    """
    ∂φ/∂x_j at the bin edges by differences across neighbors.

    Returns (gradient of shape (cells, 2, bins + 1), valid mask).
    """
    mesh = field.mesh
    phi = integrate_phi(field) if phi is None else phi
    ghosts = _neighbor_rows(field)
    n = len(mesh)
    gradient = np.full((n, 2, phi.shape[1]), np.nan)
    valid = np.ones(n, dtype=bool)

    def row(cell, direction):
        kind = mesh.kinds[cell, direction]
        if kind == INTERIOR:
            return phi[mesh.neighbors[cell, direction]]
        if kind == GHOST:
            return ghosts[(cell, direction)]
        return None

    h = mesh.spacing
    for cell in range(n):
        for axis, (plus, minus) in enumerate(((0, 1), (2, 3))):
            up, down = row(cell, plus), row(cell, minus)
            if up is not None and down is not None:
                gradient[cell, axis] = (up - down) / (2.0 * h)
            elif up is not None:
                gradient[cell, axis] = (up - phi[cell]) / h
            elif down is not None:
                gradient[cell, axis] = (phi[cell] - down) / h
            else:
                valid[cell] = False
    return gradient, valid


def build_connection(field: FiberMeasureField) -> ConnectionField:
    phi = integrate_phi(field)
    gradient, valid = phi_gradient(field, phi)
    theta = np.linspace(0.0, TWO_PI, field.bins, endpoint=False)
    edges = np.linspace(0.0, TWO_PI, field.bins + 1)

    tau = np.empty((len(phi), field.bins))
    slopes = np.full((len(phi), field.bins, 2), np.nan)
    for cell in range(len(phi)):
        tau[cell] = invert_phi(phi[cell], theta)
        if valid[cell]:
            slopes[cell, :, 0] = np.interp(tau[cell], edges, gradient[cell, 0])
            slopes[cell, :, 1] = np.interp(tau[cell], edges, gradient[cell, 1])
    return ConnectionField(field, phi, gradient, tau, slopes, valid)


def slope_loop(conn: ConnectionField, cell: int) -> np.ndarray:
    """(bins, 2) loop of a cell, θ ascending from 0."""
    if not conn.valid[cell]:
        raise IncompleteStencil(f"cell {cell} has no neighbor along some axis")
    return conn.slopes[cell]


def averaged_connection(conn: ConnectionField) -> np.ndarray:
    return conn.averaged


def loop_closure(conn: ConnectionField) -> float:
    """Largest |ω(z, 2π) - ω(z, 0)| over cells with a loop."""
    ends = conn.gradient[conn.valid]
    if not ends.size:
        return 0.0
    return float(np.max(np.abs(ends[:, :, -1] - ends[:, :, 0])))


def point_connection(field: FiberMeasureField, z: complex, eps: float=1e-4) -> np.ndarray:
    """a(z) at any disk point, by differences of the transported charts at z ± eps."""
    row = cumulative(measure_at(field, z))
    theta = np.linspace(0.0, TWO_PI, field.bins, endpoint=False)
    edges = np.linspace(0.0, TWO_PI, field.bins + 1)
    tau = invert_phi(row, theta)

    result = np.empty(2)
    for axis, step in enumerate((eps, 1j * eps)):
        up = cumulative(measure_at(field, z + step))
        down = cumulative(measure_at(field, z - step))
        derivative = (up - down) / (2.0 * eps)
        result[axis] = np.interp(tau, edges, derivative).mean()
    return result


def chain_rule_residual(conn: ConnectionField) -> float:
    """
    Largest |∂τ/∂x_j + ω_j ∂τ/∂θ| over cells with four interior neighbors.

    Both sides are finite differences, so the residual is first order in the mesh size.
    """
    mesh = conn.mesh
    cells = np.flatnonzero(mesh.interior_mask & conn.valid)
    if not cells.size:
        return 0.0
    width = TWO_PI / conn.field.bins
    dtau_dtheta = np.empty_like(conn.tau[cells])
    for k, cell in enumerate(cells):
        density = conn.field.h[cell] * TWO_PI / (conn.field.h[cell].sum() * width)
        bin_index = np.minimum((conn.tau[cell] / width).astype(int), conn.field.bins - 1)
        dtau_dtheta[k] = 1.0 / density[bin_index]

    worst = 0.0
    for axis, (plus, minus) in enumerate(((0, 1), (2, 3))):
        up = conn.tau[mesh.neighbors[cells, plus]]
        down = conn.tau[mesh.neighbors[cells, minus]]
        dtau = (up - down) / (2.0 * mesh.spacing)
        worst = max(worst, float(np.max(np.abs(dtau + conn.slopes[cells, :, axis] * dtau_dtheta))))
    return worst
