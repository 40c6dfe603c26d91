"""
This module decides maximality and, for maximal fields, extracts the boundary map.
A field is maximal when K stays within the band around -1 on the interior cells
away from the cusps; positive Euler numbers are handled by reversing the
orientation of the circle first.
"""



from __future__ import annotations

from typing import Optional

import numpy as np

from ..circle_dynamics import euler_number, reverse_orientation
from ..connection import ConnectionField, build_connection, curvature
from ..constants import setting
from ..harmonic_measure import FiberMeasureField, collapse_semiconjugacy
from ..utils import CheckLog, announce
from ..utils.errors import AtomicMeasureError
from .matsumoto import MatsumotoMap, extract_matsumoto_map, reconstruction_error



class RigidityReport:
    """
    Attributes:
    -----------
        euler_number : float
            e(ρ) before any reversal.
        maximal : bool
            K within the band of -1 on the core cells.
        margin : float
            max |K + 1| over the core cells.
        reversed : bool
            Whether the orientation was reversed (e > 0).
        matsumoto : MatsumotoMap | None
            The boundary map, for maximal fields.
        reconstruction_error : float | None
            Relative L¹ distance of the Poisson reconstruction.
    """
    def __init__(self, euler_number: float, maximal: bool, margin: float, reversed: bool,
                 matsumoto: Optional[MatsumotoMap]=None, reconstruction_error: Optional[float]=None):
        self.euler_number = euler_number
        self.maximal = maximal
        self.margin = margin
        self.reversed = reversed
        self.matsumoto = matsumoto
        self.reconstruction_error = reconstruction_error

    def to_record(self) -> dict:
        return {
            "euler_number": self.euler_number,
            "maximal": self.maximal,
            "margin": self.margin,
            "reversed": self.reversed,
            "matsumoto": self.matsumoto.to_record() if self.matsumoto else None,
            "reconstruction_error": self.reconstruction_error,
        }


def core_cells(conn: ConnectionField) -> np.ndarray:
    """Cells with four interior neighbors and below half of every cusp cutoff."""
    mesh = conn.mesh
    mask = mesh.interior_mask & conn.valid
    for cusp, level in zip(mesh.group.cusps, mesh.cusp_levels):
        mask &= cusp.level(mesh.centers) <= 0.5 * level
    return np.flatnonzero(mask)


def maximality_margin(conn: ConnectionField) -> float:
    K = curvature(conn) if conn.K is None else conn.K
    cells = core_cells(conn)
    if not cells.size:
        return float("inf")
    return float(np.max(np.abs(K[cells] + 1.0)))


def rigidity_report(
    field: FiberMeasureField,
    conn: Optional[ConnectionField]=None,
    z0: complex=0j,
    log: Optional[CheckLog]=None) -> RigidityReport:
    """
    Params:
    -------
        field : FiberMeasureField
            Field with its representation attached.
        conn : ConnectionField
            Connection of `field`; rebuilt after a reversal.
        z0 : complex
            Base point of the extraction.
        log : CheckLog
            Receives the maximality, equivariance and reconstruction checks.
    """
    band = setting("rigidity", "maximal_band", 0.05)
    e = euler_number(field.rep)
    flipped = e > 0
    if flipped:
        field = field.with_bins_reflected(reverse_orientation(field.rep))
        conn = None
        announce("rigidity", "positive Euler number, orientation reversed")
    conn = conn or build_connection(field)

    margin = maximality_margin(conn)
    maximal = margin <= band
    report = RigidityReport(e, maximal, margin, flipped)
    if log is not None:
        log.add_event("rigidity", "maximal", maximal, margin, f"advisory, band {band:g}")
    if not maximal:
        announce("rigidity", f"not maximal (max |K + 1| = {margin:.3e})")
        return report

    try:
        semi = collapse_semiconjugacy(field, field.rep, z0)
    except AtomicMeasureError:
        semi = None
    report.matsumoto = extract_matsumoto_map(field, conn, z0, semi)
    report.reconstruction_error = reconstruction_error(field, report.matsumoto.boundary_map, core_cells(conn))
    announce("rigidity", f"maximal; equivariance {report.matsumoto.equivariance_residual:.3e}, "
                         f"reconstruction {report.reconstruction_error:.3e}")

    if log is not None:
        tol = setting("rigidity", "equivariance_tol", 0.02)
        residual = report.matsumoto.equivariance_residual
        log.add_event("rigidity", "equivariance", residual <= tol, residual, f"tol {tol:g}")
        log.add_event("rigidity", "reconstruction", report.reconstruction_error <= tol, report.reconstruction_error,
                      f"tol {tol:g}")
    return report
