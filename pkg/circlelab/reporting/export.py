"""
Plot-ready tables from a pipeline output directory.

Angles are in radians and areas are hyperbolic. CSV floats use 17 significant digits.
"""



from __future__ import annotations

import os

import numpy as np
import pandas as pd

from ..constants import TWO_PI
from ..harmonic_measure import FiberMeasureField
from ..hyperbolic_core import HyperbolicMesh
from ..utils import JsonLoader
from ..utils.errors import PipelineError, UnknownQuantity
from .artifacts import read_connection



QUANTITIES = ("h", "K", "slopes", "holonomy-sequence")

FORMATS = ("csv", "json")

FILES = {
    "field": "field.bin",
    "mesh": "mesh.json",
    "connection": "connection.bin",
    "gauss_bonnet": "gauss_bonnet.json",
}


def _cell_columns(mesh: HyperbolicMesh) -> dict[str, np.ndarray]:
    return {
        "center_re": mesh.centers.real,
        "center_im": mesh.centers.imag,
        "area_hyp": mesh.areas,
    }


def h_table(directory: str) -> pd.DataFrame:
    field = FiberMeasureField.read(os.path.join(directory, FILES["field"]))
    cells, bins = field.h.shape
    columns = {key: np.repeat(values, bins) for key, values in _cell_columns(field.mesh).items()}
    return pd.DataFrame({
        "cell": np.repeat(np.arange(cells), bins),
        **columns,
        "t_rad": np.tile(field.centers, cells),
        "h": field.h.ravel(),
    })


def k_table(directory: str) -> pd.DataFrame:
    mesh = HyperbolicMesh.from_json(JsonLoader.read_artifact(os.path.join(directory, FILES["mesh"])))
    grid = read_connection(os.path.join(directory, FILES["connection"]))
    return pd.DataFrame({**_cell_columns(mesh), "K": grid["K"]})


def slopes_table(directory: str) -> pd.DataFrame:
    grid = read_connection(os.path.join(directory, FILES["connection"]))
    cells, bins, _ = grid["slopes"].shape
    return pd.DataFrame({
        "cell": np.repeat(np.arange(cells), bins),
        "theta_rad": np.tile(np.arange(bins) * (TWO_PI / bins), cells),
        "omega_1": grid["slopes"][:, :, 0].ravel(),
        "omega_2": grid["slopes"][:, :, 1].ravel(),
    })


def holonomy_table(directory: str) -> pd.DataFrame:
    report = JsonLoader.read_artifact(os.path.join(directory, FILES["gauss_bonnet"]))
    columns = ["cusp", "level", "delta", "tau_hol", "target"]
    return pd.DataFrame(report.get("holonomy", []), columns=columns)


TABLES = {
    "h": h_table,
    "K": k_table,
    "slopes": slopes_table,
    "holonomy-sequence": holonomy_table,
}


def emit_grid(directory: str, quantity: str, fmt: str="csv", out: str | None=None) -> str:
    """
    Writes one quantity of a pipeline output directory as a table.

    Params:
    -------
        directory : str
            Pipeline output directory.
        quantity : str
            One of `h`, `K`, `slopes`, `holonomy-sequence`.
        fmt : str
            `csv` or `json` (records).
        out : str
            Destination; defaults to `<directory>/<quantity>.<fmt>`.

    Raises:
    -------
        UnknownQuantity
            For a quantity without a table.
    """
    if quantity not in TABLES:
        raise UnknownQuantity(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    if fmt not in FORMATS:
        raise PipelineError(f"unknown format {fmt!r}")

    frame = TABLES[quantity](directory)
    out = out or os.path.join(directory, f"{quantity}.{fmt}")
    if fmt == "csv":
        frame.to_csv(out, index=False, float_format="%.17g")
    else:
        frame.to_json(out, orient="records", double_precision=15)
    return out


def read_grid(path: str) -> pd.DataFrame:
    if path.endswith(".json"):
        return pd.read_json(path, orient="records")
    return pd.read_csv(path)
