"""This module loads the defaults, group families and convention sheet used by every stage."""



import math
import os

from .utils import JsonLoader



DATA_DIR = os.getenv("LAB_DATA_DIR") or os.path.abspath(
    os.path.join(os.path.dirname(__file__), "../data"))

DEFAULTS_FILE = os.path.join(DATA_DIR, "defaults.json")

defaults = JsonLoader.load_json(DEFAULTS_FILE)
"""Stores the default settings of each stage (mesh, circle, solver, ...)."""

FAMILIES_FILE = os.path.join(DATA_DIR, "families.json")

families = JsonLoader.load_json(FAMILIES_FILE)
"""Stores the generator data of the supported surface-group families."""

CONVENTIONS_FILE = os.path.join(DATA_DIR, "conventions.json")

conventions = JsonLoader.load_json(CONVENTIONS_FILE)
"""Stores the orientation and sign conventions, embedded verbatim in reports."""

TWO_PI = math.tau
"""Length of the circle."""

VERSION = "0.4.0"
"""Tool version written into every report."""


def setting(section: str, key: str, fallback=None):
    """Returns `defaults[section][key]`, or `fallback` when the sheet lacks it."""
    return defaults.get(section, {}).get(key, fallback)
