"""
This module implements the `lab group` and `lab mesh` commands.

### Commands:
- **`lab group`**: builds a surface group from its family and writes it as JSON.
- **`lab mesh`**: meshes the fundamental polygon of a group file, truncated so that
  `--cusp-area` of hyperbolic area is left beyond every cusp cutoff.
"""



import argparse

from .constants import families, setting
from .hyperbolic_core import build_mesh, build_surface_group, cusp_level_for_area
from .reporting import load_group
from .utils import JsonLoader, announce



class GroupCommands:
    """Commands for surface groups and their meshes."""
    def _group(self, args: argparse.Namespace) -> int:
        group = build_surface_group(args.family)
        JsonLoader.write_json(args.out, group.to_json())
        announce("group", f"{group.name}: genus {group.genus}, {len(group.cusps)} cusps, "
                          f"χ = {group.euler_characteristic} -> {args.out}")
        return 0

    def _mesh(self, args: argparse.Namespace) -> int:
        group = load_group(args.group)
        cutoff = None if group.closed else cusp_level_for_area(args.cusp_area)
        mesh = build_mesh(group, args.res, cutoff)
        JsonLoader.write_json(args.out, mesh.to_json())
        announce("mesh", f"{len(mesh)} cells, meshed area {mesh.total_area:.4f} of {mesh.full_area:.4f} -> {args.out}")
        return 0


def setup(cli):
    commands = GroupCommands()

    parser = cli.add_command("group", commands._group, "Build a surface group and write it as JSON.")
    parser.add_argument("--family", choices=sorted(families), default="punctured-torus")
    parser.add_argument("--out", default="group.json")

    parser = cli.add_command("mesh", commands._mesh, "Mesh the fundamental polygon of a group.")
    parser.add_argument("--group", required=True, help="Group JSON file.")
    parser.add_argument("--res", type=int, default=setting("mesh", "resolution", 64))
    parser.add_argument("--cusp-area", type=float, default=setting("mesh", "cusp_area", 0.5))
    parser.add_argument("--out", default="mesh.json")
