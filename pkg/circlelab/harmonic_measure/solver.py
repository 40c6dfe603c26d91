"""
Damped Jacobi relaxation for equivariant harmonic fiber-measure fields.

Each sweep replaces h by (1 - ω) h + ω M h, where M is the conformal
five-point mean. Neighbors outside the polygon are read at their folded
point and pushed forward by ρ of the folding word; neighbors cut by a cusp
horoball use linear extrapolation through the cell. Every row is renormalized
to fiber mass 2π after the sweep.
"""



from __future__ import annotations

from typing import Optional

import numpy as np

from ..circle_dynamics import Representation, detect_finite_orbit
from ..constants import setting
from ..hyperbolic_core import HyperbolicMesh, SurfaceGroup
from ..utils import CheckLog, announce, progress_every
from ..utils.errors import SolverError, SolverNotConverged
from .field import FiberMeasureField
from .rebin import TransferCache



def _normalize_rows(h: np.ndarray) -> np.ndarray:
    # mean density one is fiber mass 2π with uniform ν
    return h / h.mean(axis=1, keepdims=True)


def solve_harmonic_field(
    group: SurfaceGroup,
    rep: Representation,
    mesh: HyperbolicMesh,
    bins: Optional[int]=None,
    tol: Optional[float]=None,
    max_sweeps: Optional[int]=None,
    damping: Optional[float]=None,
    log: Optional[CheckLog]=None) -> FiberMeasureField:
    """
    Relaxes the uniform field to the discrete equivariant harmonic fixed point.

    Params:
    -------
        group, rep, mesh :
            Must refer to the same surface group.
        bins : int
            Fiber bins T.
        tol : float
            Stop once max |M h - h| is below `tol`.
        max_sweeps : int
            Sweep budget.
        damping : float
            Relaxation weight ω in (0, 1].
        log : CheckLog
            Receives the advisories and the convergence check.

    Raises:
    -------
        SolverNotConverged
            With the residual history, when the budget runs out.
    """
    bins = bins or setting("solver", "bins", 256)
    tol = tol or setting("solver", "tol", 1e-6)
    max_sweeps = max_sweeps or setting("solver", "max_sweeps", 20000)
    damping = damping or setting("solver", "damping", 0.8)
    floor = setting("solver", "collapse_floor", 1e-12)
    if rep.group.name != group.name or mesh.group.name != group.name:
        raise SolverError("mesh, representation and group disagree")

    advisories = []
    orbit = detect_finite_orbit(rep)
    if orbit is not None:
        advisories.append(f"finite orbit of size {len(orbit)} detected")
        announce("harmonic", advisories[-1])

    operator = mesh.stencil_operator(mesh.averaging_weights())
    transfer = TransferCache(rep, bins)
    h = np.ones((len(mesh), bins))
    history: list[float] = []
    every = progress_every()

    for sweep in range(1, max_sweeps + 1):
        mean = operator.apply(h, transfer)
        residual = float(np.max(np.abs(mean - h)))
        history.append(residual)
        if every and sweep % every == 0:
            announce("harmonic", f"sweep {sweep}: residual {residual:.3e}")
        if residual < tol:
            break
        h = _normalize_rows((1.0 - damping) * h + damping * mean)
    else:
        if log is not None:
            log.add_event("harmonic", "converged", False, history[-1], f"tol {tol:g}")
        raise SolverNotConverged(history, max_sweeps)

    if float(h.min()) < floor:
        advisories.append(f"density below {floor:g} in some bin (possible atomic limit)")
        announce("harmonic", advisories[-1])
    if log is not None:
        log.add_event("harmonic", "converged", True, history[-1], f"{len(history)} sweeps, tol {tol:g}")
        log.add_event("harmonic", "finite_orbit", orbit is None, 0.0 if orbit is None else len(orbit), "advisory")
        log.add_event("harmonic", "positive_density", float(h.min()) >= floor, float(h.min()))

    field = FiberMeasureField(mesh, h, rep, "solved", None, tol, history, advisories)
    field._transfer = transfer
    announce("harmonic", f"converged in {len(history)} sweeps ({len(transfer)} transfer words)")
    return field
