"""This module implements the `lab gauss-bonnet` command."""



import argparse

from .constants import setting
from .gauss_bonnet import gauss_bonnet_report
from .reporting import load_group, load_representation, prepare_field
from .utils import CheckLog, JsonLoader, announce
from .utils.errors import ConfigError



class GaussBonnetCommands:
    """Commands comparing curvature and holonomy with the Euler number."""
    def _gauss_bonnet(self, args: argparse.Namespace) -> int:
        available = setting("gauss_bonnet", "levels", [])
        if not 1 <= args.levels <= len(available):
            raise ConfigError(f"--levels must be between 1 and {len(available)}, got {args.levels}")
        group = load_group(args.group)
        rep = load_representation(args.rep, group)
        log = CheckLog()
        field = prepare_field(group, rep, args.res, args.bins, args.cusp_area, args.exact, log)
        levels = available[:args.levels]
        report = gauss_bonnet_report(field, levels=levels, log=log)

        record = report.to_record()
        record["mesh"] = {"resolution": args.res, "cells": len(field.mesh), "cusp_levels": field.mesh.cusp_levels}
        record["tolerances"] = {"numerical_budget": report.budget, "solver_tol": field.tol}
        record["checks"] = log.to_records()
        JsonLoader.write_json(args.out, record)
        announce("gauss_bonnet", f"{'pass' if record['passed'] else 'FAIL'} -> {args.out}")
        return 0


def setup(cli):
    commands = GaussBonnetCommands()

    parser = cli.add_command("gauss-bonnet", commands._gauss_bonnet, "Gauss–Bonnet and horocircle holonomy report.")
    parser.add_argument("--group", required=True)
    parser.add_argument("--rep", required=True)
    parser.add_argument("--res", type=int, default=setting("mesh", "resolution", 64))
    parser.add_argument("--bins", type=int, default=setting("solver", "bins", 256))
    parser.add_argument("--cusp-area", type=float, default=setting("mesh", "cusp_area", 0.5))
    parser.add_argument("--levels", type=int, default=len(setting("gauss_bonnet", "levels", [])),
                        help="Number of horocircle levels, lowest first.")
    parser.add_argument("--exact", action="store_true", help="Use the closed-form field for Fuchsian kinds.")
    parser.add_argument("--out", default="report.json")
