"""This module implements the `lab curvature` command: connection and curvature grids of a field file."""



import argparse
import json

from .connection import build_connection, isoperimetric_chain
from .harmonic_measure import FiberMeasureField
from .reporting import write_connection
from .utils import announce



class CurvatureCommands:
    """Commands for the averaged connection."""
    def _curvature(self, args: argparse.Namespace) -> int:
        field = FiberMeasureField.read(args.field)
        conn = build_connection(field)
        summary = write_connection(conn, args.out)
        chain = isoperimetric_chain(conn)
        if chain["cells"].size:
            summary["isoperimetric_max"] = float(chain["isoperimetric"].max())
            summary["harnack_squared_max"] = float(chain["harnack_squared"].max())
        print(json.dumps(summary, indent=2, sort_keys=True))
        announce("connection", f"{int(conn.valid.sum())} cells with slope loops -> {args.out}")
        return 0


def setup(cli):
    commands = CurvatureCommands()

    parser = cli.add_command("curvature", commands._curvature, "Connection and curvature of a field file.")
    parser.add_argument("--field", required=True)
    parser.add_argument("--out", default="conn.bin")
