"""
Binary connection files, map CSVs and payload digests.

A connection file is a fixed header, then per cell (a₁, a₂, K, fit residual),
then the slope loops (cells × bins × 2), all little-endian float64. The JSON
summary next to it (`path` + ".json") carries the curvature range and the mean
fit residual.
"""



from __future__ import annotations

import hashlib

import numpy as np
import pandas as pd

from ..circle_dynamics import PLCircleLift, Representation
from ..connection import ConnectionField, curvature, curvature_summary, maximality_fit
from ..hyperbolic_core import HyperbolicMesh, SurfaceGroup
from ..utils import JsonLoader
from ..utils.errors import PipelineError



MAGIC = b"CLCONN01"

HEADER = np.dtype([("magic", "S8"), ("cells", "<i8"), ("bins", "<i8")])


def fit_residuals(conn: ConnectionField) -> np.ndarray:
    """Radius deviation of the round-loop fit per cell (NaN without a loop or for flat loops)."""
    residuals = np.full(len(conn.valid), np.nan)
    for cell in np.flatnonzero(conn.valid):
        fit = maximality_fit(conn, cell)
        if not fit.flat:
            residuals[cell] = fit.radius_deviation
    return residuals


def write_connection(conn: ConnectionField, path: str) -> dict:
    K = curvature(conn) if conn.K is None else conn.K
    residuals = fit_residuals(conn)
    header = np.zeros(1, dtype=HEADER)
    header["magic"] = MAGIC
    header["cells"] = len(K)
    header["bins"] = conn.field.bins
    table = np.column_stack([conn.averaged, K, residuals])
    with open(path, "wb") as file:
        file.write(header.tobytes())
        file.write(np.ascontiguousarray(table, dtype="<f8").tobytes())
        file.write(np.ascontiguousarray(conn.slopes, dtype="<f8").tobytes())

    summary = curvature_summary(conn)
    finite = residuals[np.isfinite(residuals)]
    summary["mean_fit_residual"] = float(finite.mean()) if finite.size else None
    JsonLoader.write_json(path + ".json", summary)
    return summary


def read_connection(path: str) -> dict[str, np.ndarray]:
    """Returns `averaged` (cells, 2), `K`, `fit_residual` and `slopes` (cells, bins, 2)."""
    with open(path, "rb") as file:
        raw = file.read()
    header = np.frombuffer(raw[:HEADER.itemsize], dtype=HEADER)[0]
    if header["magic"] != MAGIC:
        raise PipelineError(f"{path} is not a connection file")
    cells, bins = int(header["cells"]), int(header["bins"])
    body = np.frombuffer(raw[HEADER.itemsize:], dtype="<f8")
    table = body[:cells * 4].reshape(cells, 4)
    slopes = body[cells * 4:].reshape(cells, bins, 2)
    return {"averaged": table[:, :2].copy(), "K": table[:, 2].copy(), "fit_residual": table[:, 3].copy(),
            "slopes": slopes.copy()}


def write_map_csv(lift: PLCircleLift, path: str):
    """Breakpoints and values in radians, 17 significant digits."""
    frame = pd.DataFrame({"breakpoint_rad": lift.breakpoints, "value_rad": lift.values})
    frame.to_csv(path, index=False, float_format="%.17g")


def read_map_csv(path: str) -> PLCircleLift:
    frame = pd.read_csv(path)
    return PLCircleLift(frame["breakpoint_rad"].to_numpy(), frame["value_rad"].to_numpy())


def file_digest(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as file:
        for chunk in iter(lambda: file.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def load_group(path: str) -> SurfaceGroup:
    return SurfaceGroup.from_json(JsonLoader.read_artifact(path))


def load_representation(path: str, group: SurfaceGroup | None=None) -> Representation:
    return Representation.from_json(JsonLoader.read_artifact(path), group)


def load_mesh(path: str, group: SurfaceGroup | None=None) -> HyperbolicMesh:
    return HyperbolicMesh.from_json(JsonLoader.read_artifact(path), group)
