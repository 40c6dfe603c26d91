"""
This module implements the `lab harmonic` and `lab harnack` commands.

### Commands:
- **`lab harmonic`**: solves the equivariant harmonic field of a representation on a
  mesh and writes the binary field file with its JSON sidecar.
- **`lab harnack`**: checks max |d log h|_hyp <= 1 + slack on a field file and, with
  `--mc-point`, compares the fiber measure at a point with a Monte Carlo estimate.
"""



import argparse
import json

import numpy as np

from .constants import setting
from .harmonic_measure import (
    FiberMeasureField, circle_wasserstein, harnack_check, mc_fiber_measure, measure_at, solve_harmonic_field)
from .reporting import STAGES, load_group, load_mesh, load_representation
from .utils import CheckLog, announce



class HarmonicCommands:
    """Commands for harmonic fiber-measure fields."""
    def _harmonic(self, args: argparse.Namespace) -> int:
        group = load_group(args.group)
        rep = load_representation(args.rep, group)
        mesh = load_mesh(args.mesh, group)
        log = CheckLog()
        field = solve_harmonic_field(group, rep, mesh, args.bins, args.tol, args.max_sweeps, log=log)
        sidecar = field.write(args.out)
        for event in log.events:
            print(event)
        announce("harmonic", f"mass defect {sidecar['checks']['mass_defect']:.3e} -> {args.out}")
        return 0

    def _harnack(self, args: argparse.Namespace) -> int:
        field = FiberMeasureField.read(args.field)
        record = harnack_check(field, args.slack).to_record()
        if args.mc_point is not None:
            z0 = complex(*args.mc_point)
            seed = np.random.SeedSequence(args.seed, spawn_key=(STAGES["montecarlo"],))
            estimate = mc_fiber_measure(field, z0, paths=args.paths, seed=seed)
            record["montecarlo"] = {
                "point": list(args.mc_point),
                "paths": args.paths,
                "resampled": estimate.resampled,
                "wasserstein": circle_wasserstein(estimate.histogram(field.bins), measure_at(field, z0)),
            }
        print(json.dumps(record, indent=2, sort_keys=True))
        return 0


def setup(cli):
    commands = HarmonicCommands()

    parser = cli.add_command("harmonic", commands._harmonic, "Solve the harmonic fiber-measure field.")
    parser.add_argument("--group", required=True)
    parser.add_argument("--rep", required=True)
    parser.add_argument("--mesh", required=True)
    parser.add_argument("--bins", type=int, default=setting("solver", "bins", 256))
    parser.add_argument("--tol", type=float, default=setting("solver", "tol", 1e-6))
    parser.add_argument("--max-sweeps", type=int, default=setting("solver", "max_sweeps", 20000))
    parser.add_argument("--out", default="field.bin")

    parser = cli.add_command("harnack", commands._harnack, "Harnack check of a field file.")
    parser.add_argument("--field", required=True)
    parser.add_argument("--slack", type=float, default=None)
    parser.add_argument("--mc-point", type=float, nargs=2, default=None, metavar=("RE", "IM"))
    parser.add_argument("--paths", type=int, default=setting("montecarlo", "paths", 100000))
    parser.add_argument("--seed", type=int, default=setting("pipeline", "seed", 0))
