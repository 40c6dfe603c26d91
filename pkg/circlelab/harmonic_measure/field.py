"""
Fiber-measure fields: a density h(z, t) per mesh cell and fiber bin.

### Key Features:
- **Exact fields**:
    - `exact_fuchsian_field` (Poisson kernel), `conjugated_fuchsian_field`
      (pushforward of the Poisson measures by a conjugator) and `kernel_mixture_field`
      (a two-kernel synthetic field). They carry an evaluator valid at any disk point.

- **Evaluation anywhere**:
    - `measure_at` folds a point into the polygon, interpolates, and pushes the
      histogram forward by ρ of the folding word.

- **Checks**:
    - Fiber mass, positivity, discrete harmonicity and equivariance residuals,
      and the circle Wasserstein-1 distance.

- **Files**:
    - A binary payload (header, h, ν) and a JSON sidecar.

### Dependencies:
- **`numpy`**: For the density grids and the binary payload.
"""



from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from ..circle_dynamics import CircleLift, Representation
from ..constants import TWO_PI
from ..hyperbolic_core import GHOST, INTERIOR, HyperbolicMesh, poisson_cumulative, poisson_kernel
from ..utils import JsonLoader
from ..utils.errors import SolverError
from .rebin import TransferCache, bin_centers, bin_edges



MAGIC = b"CLFIELD1"

HEADER = np.dtype([
    ("magic", "S8"), ("cells", "<u8"), ("bins", "<u8"),
    ("tol", "<f8"), ("residual", "<f8"), ("sweeps", "<u8")])


class FiberMeasureField:
    """Represents the discretized disintegration h(z, t) vol(z) ν(t).

    Attributes:
    -----------
        mesh : HyperbolicMesh
            The mesh.
        h : np.ndarray
            Cells x bins positive densities; the fiber mass of a cell is Σ h ν.
        nu : np.ndarray
            Transverse weight per bin (uniform 2π/T).
        rep : Representation | None
            The action the field is equivariant for.
        kind : str
            "solved", "fuchsian-exact", "conjugated-exact", "mixture", ...
        evaluator : callable | None
            Exact density at arbitrary disk points, for analytic fields.
        tol : float
            Solver tolerance (0 for exact fields).
        residual_history : list[float]
            Solver residuals per sweep.
        advisories : list[str]
            Non-fatal findings (finite orbits, collapsing bins).
    """
    def __init__(
        self,
        mesh: HyperbolicMesh,
        h: np.ndarray,
        rep: Optional[Representation]=None,
        kind: str="solved",
        evaluator: Optional[Callable]=None,
        tol: float=0.0,
        residual_history: Optional[list[float]]=None,
        advisories: Optional[list[str]]=None):

        self.mesh = mesh
        self.h = np.asarray(h, dtype=float)
        if self.h.shape[0] != len(mesh):
            raise SolverError(f"field has {self.h.shape[0]} rows for {len(mesh)} cells")
        self.nu = np.full(self.bins, TWO_PI / self.bins)
        self.rep = rep
        self.kind = kind
        self.evaluator = evaluator
        self.tol = tol
        self.residual_history = residual_history or []
        self.advisories = advisories or []
        self._transfer = TransferCache(rep, self.bins) if rep is not None else None

    def __repr__(self):
        return f"FiberMeasureField({self.kind}, cells={len(self.mesh)}, bins={self.bins})"

    @property
    def bins(self) -> int:
        return self.h.shape[1]

    @property
    def edges(self) -> np.ndarray:
        return bin_edges(self.bins)

    @property
    def centers(self) -> np.ndarray:
        return bin_centers(self.bins)

    @property
    def transfer(self) -> TransferCache:
        if self._transfer is None:
            raise SolverError(f"{self.kind} field has no representation to transport with")
        return self._transfer

    def fiber_mass(self) -> np.ndarray:
        return self.h @ self.nu

    def mass_defect(self) -> float:
        return float(np.max(np.abs(self.fiber_mass() - TWO_PI)))

    def at_point(self, z: complex) -> np.ndarray:
        """Density histogram at a disk point; see `measure_at`."""
        return measure_at(self, z)

    def with_bins_reflected(self, rep: Optional[Representation]=None) -> FiberMeasureField:
        """
        The field seen through x -> -x (bin k becomes bin T-1-k).

        `rep` should be the orientation-reversed action the new field is equivariant for.
        """
        evaluator = None
        if self.evaluator is not None:
            evaluator = lambda z: self.evaluator(z)[..., ::-1]
        return FiberMeasureField(self.mesh, self.h[:, ::-1].copy(), rep, self.kind + "-reflected",
                                 evaluator, self.tol, self.residual_history, self.advisories)

    def write(self, path: str) -> dict:
        """
        Writes the binary payload and its JSON sidecar (`path` + ".json").

        Returns the sidecar dict.
        """
        header = np.zeros(1, dtype=HEADER)
        header["magic"] = MAGIC
        header["cells"] = len(self.mesh)
        header["bins"] = self.bins
        header["tol"] = self.tol
        header["residual"] = self.residual_history[-1] if self.residual_history else 0.0
        header["sweeps"] = len(self.residual_history)
        with open(path, "wb") as file:
            file.write(header.tobytes())
            file.write(np.ascontiguousarray(self.h, dtype="<f8").tobytes())
            file.write(np.ascontiguousarray(self.nu, dtype="<f8").tobytes())

        sidecar = {
            "kind": self.kind,
            "cells": len(self.mesh),
            "bins": self.bins,
            "tol": self.tol,
            "residual_history": self.residual_history,
            "advisories": self.advisories,
            "checks": field_checks(self),
            "mesh": self.mesh.to_json(),
            "representation": self.rep.to_json() if self.rep is not None else None,
        }
        JsonLoader.write_json(path + ".json", sidecar)
        return sidecar

    @classmethod
    def read(cls, path: str) -> FiberMeasureField:
        with open(path, "rb") as file:
            raw = file.read()
        header = np.frombuffer(raw[:HEADER.itemsize], dtype=HEADER)[0]
        if header["magic"] != MAGIC:
            raise SolverError(f"{path} is not a field file")
        cells, bins = int(header["cells"]), int(header["bins"])
        body = np.frombuffer(raw[HEADER.itemsize:], dtype="<f8")
        h = body[:cells * bins].reshape(cells, bins).copy()

        sidecar = JsonLoader.read_artifact(path + ".json")
        mesh = HyperbolicMesh.from_json(sidecar["mesh"])
        rep = None
        if sidecar.get("representation"):
            rep = Representation.from_json(sidecar["representation"], mesh.group)
        return cls(mesh, h, rep, sidecar.get("kind", "solved"), None, float(header["tol"]),
                   sidecar.get("residual_history"), sidecar.get("advisories"))


def measure_at(field: FiberMeasureField, z: complex) -> np.ndarray:
    """
    Fiber density histogram at any disk point.

    Analytic fields use their evaluator. Otherwise z = W(z') is folded into the polygon,
    the histogram at z' is interpolated bilinearly and pushed forward by ρ(W).
    """
    if field.evaluator is not None:
        return np.asarray(field.evaluator(np.array([z])))[0]
    mesh = field.mesh
    folded, word = mesh.group.fold(z)
    if mesh.in_region(folded)[0]:
        cells, weights = mesh.interpolation(folded)
    else:
        cells, weights = [mesh.nearest_cell(folded)], [1.0]
    local = np.asarray(weights) @ field.h[cells]
    if not word:
        return local
    return field.transfer(word) @ local


def _poisson_bin_masses(z: np.ndarray, cuts: np.ndarray) -> np.ndarray:
    """Poisson mass of z between consecutive lifted cut points, as densities."""
    cumulative = poisson_cumulative(z[:, None], cuts[None, :])
    return np.diff(cumulative, axis=1) / (TWO_PI / (cuts.size - 1))


def exact_fuchsian_field(mesh: HyperbolicMesh, bins: int, rep: Optional[Representation]=None) -> FiberMeasureField:
    """h(z, t) = P(z, t) at the bin centers; the harmonic field of the boundary action."""
    centers = bin_centers(bins)
    evaluator = lambda z: poisson_kernel(np.asarray(z)[:, None], centers[None, :])
    return FiberMeasureField(mesh, evaluator(mesh.centers), rep, "fuchsian-exact", evaluator)


def conjugated_fuchsian_field(mesh: HyperbolicMesh, bins: int, g: CircleLift,
                              rep: Optional[Representation]=None) -> FiberMeasureField:
    """The pushforward by g of the Poisson measures, integrated exactly per bin."""
    cuts = g.inverse()(bin_edges(bins))
    evaluator = lambda z: _poisson_bin_masses(np.asarray(z, dtype=complex), cuts)
    return FiberMeasureField(mesh, evaluator(mesh.centers), rep, "conjugated-exact", evaluator)


def kernel_mixture_field(mesh: HyperbolicMesh, bins: int, shift: float=np.pi / 2, weight: float=0.5) -> FiberMeasureField:
    """(1-w) P(z, t) + w P(z, t + shift), a field whose slope loops are not round."""
    centers = bin_centers(bins)

    def evaluator(z):
        z = np.asarray(z)[:, None]
        return (1.0 - weight) * poisson_kernel(z, centers[None, :]) + weight * poisson_kernel(z, centers[None, :] + shift)

    return FiberMeasureField(mesh, evaluator(mesh.centers), None, "mixture", evaluator)


def constant_field(mesh: HyperbolicMesh, bins: int, rep: Optional[Representation]=None) -> FiberMeasureField:
    evaluator = lambda z: np.ones((np.asarray(z).size, bins))
    return FiberMeasureField(mesh, np.ones((len(mesh), bins)), rep, "constant", evaluator)


def circle_wasserstein(p: np.ndarray, q: np.ndarray) -> float:
    """
    W1 on the circle between two density histograms on the same bins.

    Both are normalized to probability measures; the distance is in radians.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    width = TWO_PI / p.size
    gap = np.cumsum(p / p.sum()) - np.cumsum(q / q.sum())
    return float(width * np.sum(np.abs(gap - np.median(gap))))


def harmonic_residual(field: FiberMeasureField) -> float:
    """Largest |mean of the four neighbors - h| over cells whose neighbors are all interior cells."""
    mesh = field.mesh
    mask = mesh.interior_mask
    if not mask.any():
        return 0.0
    neighbors = mesh.neighbors[mask]
    mean = field.h[neighbors].mean(axis=1)
    return float(np.max(np.abs(mean - field.h[mask])))


def equivariance_residual(field: FiberMeasureField) -> float:
    """
    Largest W1 distance between the transported measure at a ghost neighbor and the
    linear extrapolation of the stored measures on the other side of the edge.
    """
    mesh = field.mesh
    opposite = (1, 0, 3, 2)
    worst = 0.0
    for (cell, direction), ghost in mesh.ghosts.items():
        back = opposite[direction]
        if mesh.kinds[cell, back] != INTERIOR:
            continue
        local = np.asarray(ghost.weights) @ field.h[list(ghost.cells)]
        transported = field.transfer(ghost.word) @ local if ghost.word else local
        extrapolated = 2.0 * field.h[cell] - field.h[mesh.neighbors[cell, back]]
        worst = max(worst, circle_wasserstein(transported, np.maximum(extrapolated, 0.0)))
    return worst


def field_checks(field: FiberMeasureField) -> dict:
    checks = {
        "mass_defect": field.mass_defect(),
        "min_density": float(field.h.min()),
        "harmonic_residual": harmonic_residual(field),
    }
    if field.rep is not None and any(k == GHOST for k in field.mesh.kinds.ravel()):
        checks["equivariance_residual"] = equivariance_residual(field)
    return checks
