"""
Euclidean grid meshes of a truncated fundamental polygon.

Cells are the grid squares whose centers lie in the polygon and below the
cusp cutoff. Hyperbolic areas come from sub-sample quadrature of 4/(1-|z|^2)^2;
sub-samples of clipped squares are credited to the nearest kept cell, so the
areas add up to the area of the truncated polygon.

Each cell has four neighbors (east, west, north, south). A neighbor is an
interior cell, a ghost (a point outside the polygon folded back in, read
by bilinear interpolation and transported by the folding word), or cut
off by a cusp horoball.
"""



from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from scipy.spatial import cKDTree

from ..utils.errors import DegenerateCellError, InvalidGroupSpec
from .moebius import conformal_factor, hyperbolic_distance
from .polygon import SurfaceGroup, build_surface_group



DIRECTIONS = (1.0 + 0.0j, -1.0 + 0.0j, 1.0j, -1.0j)
"""East, west, north, south."""

INTERIOR, GHOST, CUSP = 0, 1, 2


class Ghost:
    """A neighbor outside the polygon.

    Attributes:
    -----------
        word : str
            Folding word W, so that the neighbor is W applied to the folded point.
        cells : tuple[int, ...]
            Interior cells interpolated at the folded point.
        weights : tuple[float, ...]
            Interpolation weights (summing to one).
    """
    def __init__(self, word: str, cells, weights):
        self.word = word
        self.cells = tuple(int(c) for c in cells)
        self.weights = tuple(float(w) for w in weights)

    def to_record(self) -> dict:
        return {"kind": "ghost", "word": self.word, "cells": list(self.cells), "weights": list(self.weights)}


class StencilOperator:
    """A linear map on per-cell fiber histograms built from mesh neighbors.

    Interior contributions form one sparse matrix; ghost contributions are grouped by
    folding word so that the transfer matrix of each word is applied once.

    Attributes:
    -----------
        interior : scipy.sparse.csr_matrix
            Cells x cells weights on interior neighbors (and the cell itself).
        ghosts : dict[str, tuple[np.ndarray, scipy.sparse.csr_matrix]]
            Word -> (receiving rows, rows x cells interpolation weights).
    """
    def __init__(self, interior, ghosts):
        self.interior = interior
        self.ghosts = ghosts

    @property
    def words(self) -> list[str]:
        return sorted(self.ghosts)

    def apply(self, values: np.ndarray, transfer) -> np.ndarray:
        """
        Params:
        -------
            values : np.ndarray
                Cells x bins array.
            transfer : callable
                word -> bins x bins matrix R with pushed = R @ histogram, or None for the identity.
        """
        out = np.asarray(self.interior @ values)
        for word, (rows, weights) in self.ghosts.items():
            local = np.asarray(weights @ values)
            matrix = transfer(word) if word else None
            if matrix is not None:
                local = local @ matrix.T
            np.add.at(out, rows, local)
        return out


class HyperbolicMesh:
    """Represents a cell decomposition of the truncated fundamental polygon.

    Attributes:
    -----------
        group : SurfaceGroup
            The surface group.
        resolution : int
            Grid squares per side of [-1, 1]^2.
        cusp_levels : list[float]
            Horoball truncation level per cusp; the area cut from cusp i is 1/level.
        spacing : float
            Euclidean side of a grid square.
        index : np.ndarray
            (i, j) grid indices of the cells.
        centers : np.ndarray
            Cell centers.
        areas : np.ndarray
            Hyperbolic areas.
        kinds : np.ndarray
            Cells x 4 neighbor kinds (INTERIOR, GHOST, CUSP).
        neighbors : np.ndarray
            Cells x 4 neighbor cell indices (-1 when not INTERIOR).
        ghosts : dict[tuple[int, int], Ghost]
            (cell, direction) -> ghost data.
    """
    def __init__(self, group: SurfaceGroup, resolution: int, cusp_levels: list[float],
                 index, areas, kinds, neighbors, ghosts):
        self.group = group
        self.resolution = int(resolution)
        self.cusp_levels = list(cusp_levels)
        self.spacing = 2.0 / self.resolution
        self.index = np.asarray(index, dtype=int)
        self.centers = self.grid_point(self.index[:, 0], self.index[:, 1])
        self.areas = np.asarray(areas, dtype=float)
        self.kinds = np.asarray(kinds, dtype=int)
        self.neighbors = np.asarray(neighbors, dtype=int)
        self.ghosts = ghosts
        self._lookup = -np.ones((self.resolution, self.resolution), dtype=int)
        self._lookup[self.index[:, 0], self.index[:, 1]] = np.arange(len(self.index))
        self._tree = cKDTree(np.column_stack([self.centers.real, self.centers.imag]))

    def __len__(self):
        return len(self.centers)

    def grid_point(self, i, j):
        return (-1.0 + (np.asarray(i) + 0.5) * self.spacing) + 1j * (-1.0 + (np.asarray(j) + 0.5) * self.spacing)

    @property
    def total_area(self) -> float:
        return float(self.areas.sum())

    @property
    def full_area(self) -> float:
        """2π|χ|, the area of the untruncated surface."""
        return 2.0 * np.pi * abs(self.group.euler_characteristic)

    @property
    def interior_mask(self) -> np.ndarray:
        """Cells whose four neighbors are all interior cells."""
        return np.all(self.kinds == INTERIOR, axis=1)

    def nearest_cell(self, z: complex) -> int:
        return int(self._tree.query([z.real, z.imag])[1])

    def nearest_cells(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex).ravel()
        return self._tree.query(np.column_stack([z.real, z.imag]))[1]

    def max_cell_diameter(self) -> float:
        half = self.spacing / 2.0
        a = self.centers - half - 1j * half
        b = self.centers + half + 1j * half
        c = self.centers + half - 1j * half
        d = self.centers - half + 1j * half
        return float(max(hyperbolic_distance(a, b).max(), hyperbolic_distance(c, d).max()))

    def in_region(self, z) -> np.ndarray:
        """Inside the polygon and below every cusp cutoff."""
        return region_mask(self.group, self.cusp_levels, z)

    def interpolation(self, z: complex) -> tuple[list[int], list[float]]:
        """Bilinear weights over the kept cells surrounding z (nearest cell as fallback)."""
        u = (z.real + 1.0) / self.spacing - 0.5
        v = (z.imag + 1.0) / self.spacing - 0.5
        i0, j0 = int(np.floor(u)), int(np.floor(v))
        fu, fv = u - i0, v - j0
        cells, weights = [], []
        for di, dj, w in ((0, 0, (1 - fu) * (1 - fv)), (1, 0, fu * (1 - fv)),
                          (0, 1, (1 - fu) * fv), (1, 1, fu * fv)):
            i, j = i0 + di, j0 + dj
            if 0 <= i < self.resolution and 0 <= j < self.resolution and self._lookup[i, j] >= 0 and w > 0:
                cells.append(int(self._lookup[i, j]))
                weights.append(float(w))
        total = sum(weights)
        if total < 1e-12:
            return [self.nearest_cell(z)], [1.0]
        return cells, [w / total for w in weights]

    def stencil_operator(self, weights: np.ndarray) -> StencilOperator:
        """
        Assembles a `StencilOperator` from per-direction weights.

        Params:
        -------
            weights : np.ndarray
                Cells x 5 array; columns 0-3 weight the E, W, N, S neighbors and
                column 4 weights the cell itself. CUSP neighbors are skipped.
        """
        n = len(self)
        rows, cols, vals = list(range(n)), list(range(n)), list(weights[:, 4])
        ghost_terms: dict[str, tuple[list, list, list]] = {}
        for c in range(n):
            for d in range(4):
                w = weights[c, d]
                if w == 0.0:
                    continue
                if self.kinds[c, d] == INTERIOR:
                    rows.append(c)
                    cols.append(int(self.neighbors[c, d]))
                    vals.append(w)
                elif self.kinds[c, d] == GHOST:
                    ghost = self.ghosts[(c, d)]
                    r, k, v = ghost_terms.setdefault(ghost.word, ([], [], []))
                    for cell, gw in zip(ghost.cells, ghost.weights):
                        r.append(c)
                        k.append(cell)
                        v.append(w * gw)

        interior = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        ghosts = {}
        for word, (r, k, v) in ghost_terms.items():
            receivers, local_rows = np.unique(r, return_inverse=True)
            matrix = sp.csr_matrix((v, (local_rows, k)), shape=(len(receivers), n))
            ghosts[word] = (receivers, matrix)
        return StencilOperator(interior, ghosts)

    def averaging_weights(self) -> np.ndarray:
        """
        Weights of the conformal 5-point mean.

        Along an axis with both neighbors present each gets 1/4; when a neighbor
        is cut by a cusp, the pair is replaced by the linear extrapolation through
        the cell, which puts weight 1/2 on the cell itself.
        """
        weights = np.zeros((len(self), 5))
        for axis in ((0, 1), (2, 3)):
            present = np.all(self.kinds[:, axis] != CUSP, axis=1)
            weights[present, axis[0]] = 0.25
            weights[present, axis[1]] = 0.25
            weights[~present, 4] += 0.5
        return weights

    def direction_weights(self, direction: int) -> np.ndarray:
        weights = np.zeros((len(self), 5))
        weights[:, direction] = (self.kinds[:, direction] != CUSP).astype(float)
        return weights

    def to_json(self) -> dict:
        cells = []
        for c in range(len(self)):
            neighbors = []
            for d in range(4):
                if self.kinds[c, d] == INTERIOR:
                    neighbors.append({"kind": "cell", "cell": int(self.neighbors[c, d])})
                elif self.kinds[c, d] == GHOST:
                    neighbors.append(self.ghosts[(c, d)].to_record())
                else:
                    neighbors.append({"kind": "cusp"})
            cells.append({
                "i": int(self.index[c, 0]),
                "j": int(self.index[c, 1]),
                "center_re": float(self.centers[c].real),
                "center_im": float(self.centers[c].imag),
                "area_hyp": float(self.areas[c]),
                "neighbors": neighbors,
            })
        return {
            "group": self.group.to_json(),
            "resolution": self.resolution,
            "cusp_levels": self.cusp_levels,
            "cells": cells,
        }

    @classmethod
    def from_json(cls, payload: dict, group: SurfaceGroup | None=None) -> HyperbolicMesh:
        group = group or build_surface_group(payload["group"]["spec"])
        cells = payload["cells"]
        n = len(cells)
        kinds = np.full((n, 4), CUSP, dtype=int)
        neighbors = -np.ones((n, 4), dtype=int)
        ghosts = {}
        for c, record in enumerate(cells):
            for d, nb in enumerate(record["neighbors"]):
                if nb["kind"] == "cell":
                    kinds[c, d] = INTERIOR
                    neighbors[c, d] = nb["cell"]
                elif nb["kind"] == "ghost":
                    kinds[c, d] = GHOST
                    ghosts[(c, d)] = Ghost(nb["word"], nb["cells"], nb["weights"])
        index = [[r["i"], r["j"]] for r in cells]
        areas = [r["area_hyp"] for r in cells]
        return cls(group, payload["resolution"], payload["cusp_levels"], index, areas, kinds, neighbors, ghosts)


def region_mask(group: SurfaceGroup, cusp_levels: list[float], z) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    inside = group.in_polygon(z) & (np.abs(z) < 1.0 - 1e-12)
    for cusp, level in zip(group.cusps, cusp_levels):
        inside &= cusp.level(z) <= level
    return inside


def cusp_level_for_area(cusp_area: float) -> float:
    """Truncation level leaving `cusp_area` of hyperbolic area beyond it (per cusp)."""
    if cusp_area <= 0:
        raise InvalidGroupSpec("cusp area must be positive")
    return 1.0 / cusp_area


def build_mesh(group: SurfaceGroup, resolution: int, cusp_cutoff: float | list[float] | None=None,
               subsamples: int=8) -> HyperbolicMesh:
    """
    Meshes the polygon of `group` truncated at the cusp levels.

    Params:
    -------
        group : SurfaceGroup
            The surface group.
        resolution : int
            Grid squares per side of [-1, 1]^2, at least 8.
        cusp_cutoff : float | list[float]
            Horoball level per cusp (one value is used for every cusp).
        subsamples : int
            Quadrature points per cell side.
    """
    if resolution < 8:
        raise InvalidGroupSpec(f"resolution {resolution} is below 8")
    if group.cusps:
        if cusp_cutoff is None:
            raise InvalidGroupSpec("cusped groups need a cusp cutoff level")
        levels = list(np.broadcast_to(np.atleast_1d(np.asarray(cusp_cutoff, dtype=float)), (len(group.cusps),)))
    else:
        levels = []

    h = 2.0 / resolution
    ii, jj = np.meshgrid(np.arange(resolution), np.arange(resolution), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    centers = (-1.0 + (ii + 0.5) * h) + 1j * (-1.0 + (jj + 0.5) * h)

    keep = region_mask(group, levels, centers)
    index = np.column_stack([ii[keep], jj[keep]])
    kept_centers = centers[keep]
    n = len(kept_centers)
    if n == 0:
        raise DegenerateCellError("no cell center lies inside the truncated polygon")

    offsets = (np.arange(subsamples) + 0.5) / subsamples - 0.5
    ox, oy = np.meshgrid(offsets * h, offsets * h, indexing="ij")
    sub = (centers[:, None] + (ox.ravel() + 1j * oy.ravel())[None, :]).ravel()
    sub = sub[np.abs(sub) < 1.0 - 1e-9]
    sub = sub[region_mask(group, levels, sub)]
    tree = cKDTree(np.column_stack([kept_centers.real, kept_centers.imag]))
    owner = tree.query(np.column_stack([sub.real, sub.imag]))[1]
    areas = np.bincount(owner, weights=conformal_factor(sub) * (h / subsamples) ** 2, minlength=n)
    if np.any(areas < 1e-14):
        raise DegenerateCellError(f"{int(np.sum(areas < 1e-14))} cells have area below 1e-14")

    lookup = -np.ones((resolution, resolution), dtype=int)
    lookup[index[:, 0], index[:, 1]] = np.arange(n)
    mesh = HyperbolicMesh(group, resolution, levels, index, areas,
                          np.full((n, 4), CUSP), -np.ones((n, 4), dtype=int), {})

    steps = ((1, 0), (-1, 0), (0, 1), (0, -1))
    for c in range(n):
        for d, (di, dj) in enumerate(steps):
            i, j = index[c, 0] + di, index[c, 1] + dj
            if 0 <= i < resolution and 0 <= j < resolution and lookup[i, j] >= 0:
                mesh.kinds[c, d] = INTERIOR
                mesh.neighbors[c, d] = lookup[i, j]
                continue

            point = kept_centers[c] + h * DIRECTIONS[d]
            if abs(point) >= 1.0 - 1e-9 or group.in_polygon(point)[0]:
                continue
            folded, word = group.fold(point)
            if not mesh.in_region(folded)[0]:
                continue
            cells, weights = mesh.interpolation(folded)
            mesh.kinds[c, d] = GHOST
            mesh.ghosts[(c, d)] = Ghost(word, cells, weights)

    return mesh
