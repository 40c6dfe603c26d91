import argparse
import importlib
import sys

from dotenv import load_dotenv

from circlelab.utils.errors import (
    CircleMapError, ConfigError, GroupError, PipelineError, SolverError, StageError)



EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_STAGE_FAILURE = 3


class LabCli:
    """Representation of the `lab` command line.

    Attributes:
    -----------
        parser : argparse.ArgumentParser
            Top-level parser.
        initial_extensions : list[str]
            Command modules under `circlelab` whose `setup(cli)` registers sub-commands.
    """
    def __init__(self):
        self.parser = argparse.ArgumentParser(
            prog="lab", description="Harmonic fiber measures, curvature and Euler numbers of circle actions.")
        self.subparsers = self.parser.add_subparsers(dest="command", required=True)
        self.initial_extensions = [
            "group",
            "euler",
            "harmonic",
            "curvature",
            "gaussbonnet",
            "rigidity",
            "pipeline",
        ]

    def add_command(self, name: str, handler, help: str) -> argparse.ArgumentParser:
        """Registers a sub-command; `handler(args)` returns an exit status."""
        parser = self.subparsers.add_parser(name, help=help, description=help)
        parser.set_defaults(handler=handler)
        return parser

    def load_extensions(self):
        for name in self.initial_extensions:
            try:
                importlib.import_module(f"circlelab.{name}").setup(self)
            except ModuleNotFoundError as e:
                print(f"Error loading {name}: {e}", file=sys.stderr)

    def run(self, argv=None) -> int:
        self.load_extensions()
        args = self.parser.parse_args(argv)
        try:
            return args.handler(args) or EXIT_OK
        except (ConfigError, GroupError) as e:
            print(f"invalid input: {e}", file=sys.stderr)
            return EXIT_VALIDATION
        except StageError as e:
            print(f"stage '{e.stage}' failed: {e.cause}", file=sys.stderr)
            return EXIT_STAGE_FAILURE
        except (CircleMapError, SolverError, PipelineError) as e:
            print(f"{args.command} failed: {e}", file=sys.stderr)
            return EXIT_STAGE_FAILURE


def main(argv=None) -> int:
    load_dotenv()
    return LabCli().run(argv)

if __name__ == "__main__":
    sys.exit(main())
