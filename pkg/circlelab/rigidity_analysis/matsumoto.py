"""
Extraction of the semiconjugacy onto the boundary action for maximal fields.

At a base point z₀ with round slope loops the fiber chart is, up to a rotation α,
the boundary chart of the disk seen from z₀:

    𝔪(t) = F_{z₀}(φ(z₀, t) + α),

where F_{z₀} is the boundary lift of the transvection taking 0 to z₀ and α is the
circular mean of arg ∇h(z₀, τ(z₀, θ)) - θ. 𝔪 is monotone of degree one and
intertwines ρ with the boundary action.
"""



from __future__ import annotations

from typing import Optional

import numpy as np

from ..circle_dynamics import MoebiusCircleLift, PLCircleLift, Representation, fuchsian_representation
from ..connection import ConnectionField, cumulative, maximality_fit, phi_lift
from ..constants import TWO_PI, setting
from ..harmonic_measure import FiberMeasureField, SemiconjugacyResult, bin_edges, measure_at
from ..hyperbolic_core import disk_translation, poisson_cumulative
from ..utils.errors import NonMaximalError



class MatsumotoMap:
    """
    Attributes:
    -----------
        base_point : complex
            z₀.
        alpha : float
            Rotation aligning the chart with the gradient directions.
        boundary_map : PLCircleLift
            𝔪, sampled at the bin edges.
        collapsed_map : PLCircleLift | None
            m with 𝔪 = m∘ψ, when a semiconjugacy ψ was supplied.
        equivariance_residual : float
            sup |𝔪(ρ(γ)x) - ρ₀(γ)(𝔪(x))| over generators (circle distance).
    """
    def __init__(self, base_point: complex, alpha: float, boundary_map: PLCircleLift,
                 collapsed_map: Optional[PLCircleLift], equivariance_residual: float):
        self.base_point = base_point
        self.alpha = alpha
        self.boundary_map = boundary_map
        self.collapsed_map = collapsed_map
        self.equivariance_residual = equivariance_residual

    def __call__(self, t):
        return self.boundary_map(t)

    def to_record(self) -> dict:
        return {
            "base_re": self.base_point.real,
            "base_im": self.base_point.imag,
            "alpha": self.alpha,
            "equivariance_residual": self.equivariance_residual,
            "boundary_map": self.boundary_map.to_json(),
        }


def gradient_phase(field: FiberMeasureField, z0: complex, eps: float=1e-4) -> float:
    """α at z₀; each bin is weighted by its mass, which samples θ uniformly."""
    density = measure_at(field, z0)
    density = density / density.mean()
    gradient = []
    for step in (eps, 1j * eps):
        up, down = measure_at(field, z0 + step), measure_at(field, z0 - step)
        gradient.append((up / up.mean() - down / down.mean()) / (2.0 * eps))
    direction = np.angle(gradient[0] + 1j * gradient[1])
    row = cumulative(density)
    theta = 0.5 * (row[1:] + row[:-1])
    return float(np.angle(np.sum(density * np.exp(1j * (direction - theta)))))


def _circle_gap(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(np.mod(a - b + np.pi, TWO_PI) - np.pi)


def equivariance_gap(boundary_map: PLCircleLift, rep: Representation, base: Representation, samples: int | None=None) -> float:
    x = np.linspace(0.0, TWO_PI, samples or setting("circle", "sample_angles", 256), endpoint=False)
    worst = 0.0
    for label in rep.group.labels:
        gap = _circle_gap(boundary_map(rep.letter(label)(x)), base.letter(label)(boundary_map(x)))
        worst = max(worst, float(gap.max()))
    return worst


def extract_matsumoto_map(
    field: FiberMeasureField,
    conn: ConnectionField,
    z0: complex=0j,
    semi: Optional[SemiconjugacyResult]=None,
    threshold: float | None=None) -> MatsumotoMap:
    """
    Builds 𝔪 at the base point `z0`.

    Raises:
    -------
        NonMaximalError
            When the slope loop at the cell of `z0` is flat or not round within `threshold`.
    """
    threshold = setting("rigidity", "fit_threshold", 0.05) if threshold is None else threshold
    fit = maximality_fit(conn, conn.mesh.nearest_cell(z0))
    if fit.flat or fit.radius_deviation > threshold:
        raise NonMaximalError(f"slope loop at {complex(z0):.3f} is not round (radius deviation {fit.radius_deviation:.3e})")

    alpha = gradient_phase(field, z0)
    row = cumulative(measure_at(field, z0))
    edges = bin_edges(field.bins)[:-1]
    chart = MoebiusCircleLift(disk_translation(z0))
    values = chart(phi_lift(row, edges) + alpha)
    boundary_map = PLCircleLift(edges, values)

    collapsed = None
    if semi is not None:
        psi = semi.psi(edges)
        keep = np.concatenate([[True], np.diff(psi) > 1e-14]) & (psi < psi[0] + TWO_PI - 1e-14)
        collapsed = PLCircleLift(psi[keep], values[keep])

    residual = equivariance_gap(boundary_map, field.rep, fuchsian_representation(field.mesh.group))
    return MatsumotoMap(complex(z0), alpha, boundary_map, collapsed, residual)


def poisson_reconstruction(field: FiberMeasureField, boundary_map: PLCircleLift) -> np.ndarray:
    """Per cell, the bin densities of the pullback by 𝔪 of the Poisson measure."""
    cuts = boundary_map(bin_edges(field.bins))
    z = field.mesh.centers[:, None]
    return np.diff(poisson_cumulative(z, cuts[None, :]), axis=1) / (TWO_PI / field.bins)


def reconstruction_error(field: FiberMeasureField, boundary_map: PLCircleLift, cells: np.ndarray | None=None) -> float:
    """Relative L¹ distance between the field and its Poisson reconstruction."""
    recon = poisson_reconstruction(field, boundary_map)
    h = field.h / field.h.mean(axis=1, keepdims=True)
    if cells is not None:
        recon, h = recon[cells], h[cells]
    return float(np.abs(recon - h).sum() / np.abs(h).sum())
