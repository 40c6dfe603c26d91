"""Curvature integrals over the truncated surface and over small geodesic disks."""



from __future__ import annotations

import numpy as np

from ..connection import ConnectionField, curvature
from ..constants import TWO_PI
from ..hyperbolic_core import disk_translation
from ..utils.errors import LoopOutsideMesh



def integrate_curvature(conn: ConnectionField) -> dict:
    """
    (1/2π) Σ K area over cells with a slope loop.

    `tail_bound` is the unmeshed part of the area 2π|χ|, divided by 2π; it bounds the
    missing contribution because |K| <= 1.
    """
    K = curvature(conn) if conn.K is None else conn.K
    areas = conn.mesh.areas[conn.valid]
    integral = float(np.sum(K[conn.valid] * areas) / TWO_PI)
    meshed = float(areas.sum())
    tail = max(conn.mesh.full_area - meshed, 0.0) / TWO_PI
    return {"integral": integral, "tail_bound": tail, "meshed_area": meshed}


def geodesic_circle_loop(center: complex, radius: float, samples: int) -> np.ndarray:
    """`samples + 1` points of the hyperbolic circle, counterclockwise, closing on the first."""
    theta = np.linspace(0.0, TWO_PI, samples + 1)
    theta[-1] = 0.0
    return disk_translation(center).apply(np.tanh(radius / 2.0) * np.exp(1j * theta))


def interpolate_cells(conn: ConnectionField, values: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Bilinear interpolation of a per-cell quantity, skipping cells where it is NaN."""
    mesh = conn.mesh
    out = np.empty(points.size)
    for k, z in enumerate(points):
        cells, weights = mesh.interpolation(complex(z))
        pairs = [(c, w) for c, w in zip(cells, weights) if np.isfinite(values[c])]
        if not pairs:
            raise LoopOutsideMesh(f"no curvature data near {complex(z):.4f}")
        total = sum(w for _, w in pairs)
        out[k] = sum(values[c] * w for c, w in pairs) / total
    return out


def enclosed_curvature(conn: ConnectionField, center: complex, radius: float,
                       radial: int=24, angular: int=64) -> float:
    """(1/2π) ∫ K vol over the hyperbolic disk, by midpoint quadrature in geodesic polar coordinates."""
    K = curvature(conn) if conn.K is None else conn.K
    rho = (np.arange(radial) + 0.5) * (radius / radial)
    theta = (np.arange(angular) + 0.5) * (TWO_PI / angular)
    rr, tt = np.meshgrid(rho, theta, indexing="ij")
    points = disk_translation(center).apply(np.tanh(rr / 2.0) * np.exp(1j * tt)).ravel()
    if not np.all(conn.mesh.in_region(points)):
        raise LoopOutsideMesh("geodesic disk leaves the meshed polygon")
    weights = (np.sinh(rr) * (radius / radial) * (TWO_PI / angular)).ravel()
    return float(np.sum(interpolate_cells(conn, K, points) * weights) / TWO_PI)
