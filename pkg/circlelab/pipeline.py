"""
This module implements the `lab run` and `lab emit` commands.

### Commands:
- **`lab run`**: runs every stage for a config file and writes the artifacts and
  `summary.json` into the config's output directory; exits 3 when a stage fails.
- **`lab emit`**: turns one quantity of an output directory into a CSV or JSON table.
"""



import argparse

from .reporting import FORMATS, QUANTITIES, PipelineConfig, emit_grid, run_pipeline
from .utils import announce



class PipelineCommands:
    """Commands for whole runs and their exports."""
    def _run(self, args: argparse.Namespace) -> int:
        config = PipelineConfig.read(args.config)
        if args.out_dir:
            config.out_dir = args.out_dir
        result = run_pipeline(config)
        failed = [event for event in result.log.events if not event.passed]
        for event in failed:
            print(event)
        announce("pipeline", f"{len(result.log.events)} checks, {len(failed)} failed")
        return result.status

    def _emit(self, args: argparse.Namespace) -> int:
        path = emit_grid(args.dir, args.quantity, args.format, args.out)
        announce("emit", f"{args.quantity} -> {path}")
        return 0


def setup(cli):
    commands = PipelineCommands()

    parser = cli.add_command("run", commands._run, "Run the full pipeline for a config file.")
    parser.add_argument("--config", required=True)
    parser.add_argument("--out-dir", default=None, help="Overrides the config's output directory.")

    parser = cli.add_command("emit", commands._emit, "Export a grid from a pipeline output directory.")
    parser.add_argument("--dir", required=True)
    parser.add_argument("--quantity", choices=QUANTITIES, required=True)
    parser.add_argument("--format", choices=FORMATS, default="csv")
    parser.add_argument("--out", default=None)
