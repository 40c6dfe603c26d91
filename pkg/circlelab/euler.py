"""
This module implements the `lab rep` and `lab euler` commands.

`lab rep` writes a representation file of any supported kind (seeded for the
random kinds); `lab euler` prints the Euler number and Milnor–Wood margin of one.
"""



import argparse
import json

import numpy as np

from .circle_dynamics import REPRESENTATION_KINDS, detect_finite_orbit, euler_details
from .reporting import PipelineConfig, build_representation, load_group, load_representation
from .utils import JsonLoader, announce



class EulerCommands:
    """Commands for circle actions and their Euler numbers."""
    def _rep(self, args: argparse.Namespace) -> int:
        group = load_group(args.group)
        config = PipelineConfig(family=group.name, representation=args.kind, rotation_angle=args.angle,
                                breakpoints=args.breakpoints, seed=args.seed)
        rep = build_representation(config, group)
        JsonLoader.write_json(args.out, rep.to_json())
        announce("rep", f"{rep.kind} action of {group.name} -> {args.out}")
        return 0

    def _euler(self, args: argparse.Namespace) -> int:
        group = load_group(args.group)
        rep = load_representation(args.rep, group)
        result = euler_details(rep, args.tol)
        record = result.to_record()
        record["milnor_wood_margin"] = abs(group.euler_characteristic) - abs(result.value)
        orbit = detect_finite_orbit(rep)
        record["finite_orbit"] = None if orbit is None else [float(x) for x in np.sort(orbit)]
        print(json.dumps(record, indent=2, sort_keys=True))
        return 0


def setup(cli):
    commands = EulerCommands()

    parser = cli.add_command("rep", commands._rep, "Write a representation file.")
    parser.add_argument("--group", required=True, help="Group JSON file.")
    parser.add_argument("--kind", choices=REPRESENTATION_KINDS, default="fuchsian-boundary")
    parser.add_argument("--angle", type=float, default=0.0, help="Rotation angle for `rotation`.")
    parser.add_argument("--breakpoints", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="rep.json")

    parser = cli.add_command("euler", commands._euler, "Euler number and Milnor–Wood margin of a representation.")
    parser.add_argument("--group", required=True)
    parser.add_argument("--rep", required=True)
    parser.add_argument("--tol", type=float, default=None, help="Translation-number tolerance.")
