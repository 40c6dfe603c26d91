"""
This module runs the whole laboratory for one configuration.
Stages run in order (group, representation, mesh, harmonic field, connection,
Gauss–Bonnet, rigidity); each writes its artifact into the output directory and
records its checks in one shared `CheckLog`.

### Key Features:
- **Determinism**:
    - All randomness comes from the root seed, split per stage by `SeedSequence`;
      identical configurations give byte-identical payload files.

- **Failure handling**:
    - An exception inside a stage becomes a `StageError` naming the stage; the
      summary is still written, with the residual history when there is one.

- **Summary**:
    - `summary.json` carries the tool version, the config hash, every check and
      the SHA-256 of every payload file.
"""



from __future__ import annotations

import os

from typing import Callable, Optional

from ..circle_dynamics import (Representation, conjugate_representation, euler_details, fuchsian_representation,
                               random_pl_homeomorphism, random_pl_representation, reverse_orientation,
                               rotation_representation, trivial_representation)
from ..connection import build_connection, chain_rule_residual, curvature, loop_closure
from ..constants import TWO_PI, VERSION, conventions
from ..gauss_bonnet import gauss_bonnet_report
from ..harmonic_measure import (FiberMeasureField, conjugated_fuchsian_field, exact_fuchsian_field, field_checks,
                                harnack_check, solve_harmonic_field)
from ..hyperbolic_core import SurfaceGroup, build_mesh, build_surface_group, cusp_level_for_area
from ..rigidity_analysis import rigidity_report
from ..utils import CheckLog, JsonLoader, announce
from ..utils.errors import StageError
from .artifacts import file_digest, write_connection, write_map_csv
from .config import PipelineConfig



EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_STAGE_FAILURE = 3

PAYLOADS = ("group.json", "representation.json", "mesh.json", "field.bin", "field.bin.json",
            "connection.bin", "connection.bin.json", "gauss_bonnet.json", "rigidity.json", "maps.csv")


class PipelineResult:
    """
    Attributes:
    -----------
        status : int
            Exit status (0 or 3).
        summary : dict
            Contents of `summary.json`.
        log : CheckLog
            Every check recorded by the stages.
    """
    def __init__(self, status: int, summary: dict, log: CheckLog):
        self.status = status
        self.summary = summary
        self.log = log


def build_representation(config: PipelineConfig, group: SurfaceGroup) -> Representation:
    rng = config.stage_rng("rep")
    kind = config.representation
    if kind == "fuchsian-boundary":
        return fuchsian_representation(group)
    if kind == "rotation":
        return rotation_representation(group, config.rotation_angle)
    if kind == "trivial":
        return trivial_representation(group)
    if kind == "pl-custom":
        return random_pl_representation(group, rng, config.breakpoints)
    if kind == "conjugated-fuchsian":
        return conjugate_representation(fuchsian_representation(group), random_pl_homeomorphism(rng, config.breakpoints))
    return reverse_orientation(fuchsian_representation(group))


def build_field(config: PipelineConfig, group: SurfaceGroup, rep: Representation, mesh, log: CheckLog) -> FiberMeasureField:
    if config.field_source == "exact":
        if rep.kind == "conjugated-fuchsian":
            return conjugated_fuchsian_field(mesh, config.bins, rep.conjugator, rep)
        return exact_fuchsian_field(mesh, config.bins, rep)
    return solve_harmonic_field(group, rep, mesh, config.bins, config.tol, config.max_sweeps, log=log)


def prepare_field(group: SurfaceGroup, rep: Representation, resolution: int, bins: int, cusp_area: float,
                  exact: bool=False, log: Optional[CheckLog]=None) -> FiberMeasureField:
    """Meshes `group` and solves (or evaluates) the field of `rep`; used by the single-stage commands."""
    cutoff = None if group.closed else cusp_level_for_area(cusp_area)
    mesh = build_mesh(group, resolution, cutoff)
    if exact:
        if rep.kind == "conjugated-fuchsian":
            return conjugated_fuchsian_field(mesh, bins, rep.conjugator, rep)
        if rep.kind == "fuchsian-boundary":
            return exact_fuchsian_field(mesh, bins, rep)
        announce("harmonic", f"no exact field for kind {rep.kind!r}; solving")
    return solve_harmonic_field(group, rep, mesh, bins, log=log)


def _stage(name: str, action: Callable):
    announce(name, "start")
    try:
        return action()
    except StageError:
        raise
    except Exception as error:
        raise StageError(name, error, getattr(error, "residual_history", None)) from error


def _summary(config: PipelineConfig, log: CheckLog, results: dict, error: Optional[StageError]) -> dict:
    payload = config.to_json()
    payload.pop("out_dir")
    files = {}
    for name in PAYLOADS:
        path = os.path.join(config.out_dir, name)
        if os.path.exists(path):
            files[name] = file_digest(path)
    summary = {
        "version": VERSION,
        "config_hash": config.config_hash(),
        "config": payload,
        "conventions": conventions,
        "status": "ok" if error is None else "failed",
        "checks": log.to_records(),
        "files": files,
        **results,
    }
    if error is not None:
        summary["failed_stage"] = error.stage
        summary["error"] = str(error.cause)
        summary["residual_history"] = error.residual_history
    return summary


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    """
    Runs every stage for `config` and writes the artifacts and `summary.json`.

    The config is validated on construction, so a malformed config raises
    `ConfigError` before anything is written.
    """
    os.makedirs(config.out_dir, exist_ok=True)
    out = lambda name: os.path.join(config.out_dir, name)
    # payloads of an earlier run must not be digested into this summary
    for name in PAYLOADS:
        if os.path.exists(out(name)):
            os.remove(out(name))
    log = CheckLog()
    results: dict = {}
    error = None
    try:
        group = _stage("group", lambda: build_surface_group(config.family))
        JsonLoader.write_json(out("group.json"), group.to_json())

        rep = _stage("rep", lambda: build_representation(config, group))
        JsonLoader.write_json(out("representation.json"), rep.to_json())
        euler = _stage("rep", lambda: euler_details(rep))
        results["euler_number"] = euler.value

        cutoff = None if group.closed else cusp_level_for_area(config.cusp_area)
        mesh = _stage("mesh", lambda: build_mesh(group, config.resolution, cutoff))
        JsonLoader.write_json(out("mesh.json"), mesh.to_json())

        field = _stage("harmonic", lambda: build_field(config, group, rep, mesh, log))
        _stage("harmonic", lambda: field.write(out("field.bin")))
        harnack = harnack_check(field)
        log.add_event("harmonic", "harnack", harnack.passed, harnack.maximum, f"slack {harnack.slack:g}")
        checks = field_checks(field)
        # closed-form fields sample the kernel at bin centers
        mass_tol = 1e-9 if field.evaluator is None else 0.02 * TWO_PI
        log.add_event("harmonic", "mass_defect", checks["mass_defect"] <= mass_tol, checks["mass_defect"],
                      f"tol {mass_tol:g}")

        conn = _stage("connection", lambda: build_connection(field))
        curvature(conn)
        _stage("connection", lambda: write_connection(conn, out("connection.bin")))
        closure = loop_closure(conn)
        log.add_event("connection", "loop_closure", closure <= 1e-9, closure)
        log.add_event("connection", "chain_rule", True, chain_rule_residual(conn), "advisory, first order in the mesh size")

        gb = _stage("gauss_bonnet", lambda: gauss_bonnet_report(field, conn, config.levels, log))
        record = gb.to_record()
        record["mesh"] = {"resolution": mesh.resolution, "cells": len(mesh), "cusp_levels": mesh.cusp_levels}
        record["tolerances"] = {"numerical_budget": gb.budget, "solver_tol": config.tol}
        JsonLoader.write_json(out("gauss_bonnet.json"), record)
        results["curvature_integral"] = gb.integral

        rigidity = _stage("rigidity", lambda: rigidity_report(field, conn, log=log))
        record = rigidity.to_record()
        record["disclaimer"] = "describes the harmonic measures produced by the solver only"
        JsonLoader.write_json(out("rigidity.json"), record)
        if rigidity.matsumoto is not None:
            write_map_csv(rigidity.matsumoto.boundary_map, out("maps.csv"))
        results["maximal"] = rigidity.maximal
    except StageError as stage_error:
        error = stage_error
        announce(stage_error.stage, f"failed: {stage_error.cause}")

    summary = _summary(config, log, results, error)
    JsonLoader.write_json(out("summary.json"), summary)
    announce("pipeline", "summary written" if error is None else f"stopped at stage '{error.stage}'")
    return PipelineResult(EXIT_OK if error is None else EXIT_STAGE_FAILURE, summary, log)
