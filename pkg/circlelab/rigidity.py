"""This module implements the `lab rigidity` command: maximality and the extracted boundary map."""



import argparse

from .constants import setting
from .reporting import load_group, load_representation, prepare_field, write_map_csv
from .rigidity_analysis import rigidity_report
from .utils import CheckLog, JsonLoader, announce



class RigidityCommands:
    """Commands for the maximal case."""
    def _rigidity(self, args: argparse.Namespace) -> int:
        group = load_group(args.group)
        rep = load_representation(args.rep, group)
        log = CheckLog()
        field = prepare_field(group, rep, args.res, args.bins, args.cusp_area, args.exact, log)
        report = rigidity_report(field, z0=complex(*args.base_point), log=log)

        record = report.to_record()
        record["checks"] = log.to_records()
        JsonLoader.write_json(args.out, record)
        if report.matsumoto is not None and args.maps:
            write_map_csv(report.matsumoto.boundary_map, args.maps)
            announce("rigidity", f"boundary map -> {args.maps}")
        return 0


def setup(cli):
    commands = RigidityCommands()

    parser = cli.add_command("rigidity", commands._rigidity, "Maximality check and boundary-map extraction.")
    parser.add_argument("--group", required=True)
    parser.add_argument("--rep", required=True)
    parser.add_argument("--res", type=int, default=setting("mesh", "resolution", 64))
    parser.add_argument("--bins", type=int, default=setting("solver", "bins", 256))
    parser.add_argument("--cusp-area", type=float, default=setting("mesh", "cusp_area", 0.5))
    parser.add_argument("--base-point", type=float, nargs=2, default=(0.0, 0.0), metavar=("RE", "IM"))
    parser.add_argument("--exact", action="store_true")
    parser.add_argument("--out", default="rigidity.json")
    parser.add_argument("--maps", default=None, help="CSV for the extracted map.")
