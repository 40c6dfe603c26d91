import os

import numpy as np
import pytest

os.environ.setdefault("LAB_QUIET", "1")

from circlelab.circle_dynamics import (
    conjugate_representation, fuchsian_representation, random_pl_homeomorphism, rotation_representation)
from circlelab.connection import build_connection, curvature
from circlelab.harmonic_measure import (
    FiberMeasureField, conjugated_fuchsian_field, constant_field, exact_fuchsian_field, kernel_mixture_field,
    solve_harmonic_field)
from circlelab.hyperbolic_core import build_mesh, build_surface_group
from circlelab.reporting import PipelineConfig, run_pipeline



# torus meshes are cut at level 1, i.e. cusp area 1
TORUS_CUTOFF = 1.0


@pytest.fixture(scope="session")
def torus():
    return build_surface_group("punctured-torus")


@pytest.fixture(scope="session")
def genus2():
    return build_surface_group("closed-genus-2")


@pytest.fixture(scope="session")
def torus_mesh(torus):
    return build_mesh(torus, 32, TORUS_CUTOFF)


@pytest.fixture(scope="session")
def genus2_mesh(genus2):
    return build_mesh(genus2, 32)


@pytest.fixture(scope="session")
def torus_rep(torus):
    return fuchsian_representation(torus)


@pytest.fixture(scope="session")
def genus2_rep(genus2):
    return fuchsian_representation(genus2)


@pytest.fixture(scope="session")
def rotation_rep(torus):
    return rotation_representation(torus, 0.3)


@pytest.fixture(scope="session")
def exact_torus(torus_mesh, torus_rep):
    return exact_fuchsian_field(torus_mesh, 128, torus_rep)


@pytest.fixture(scope="session")
def exact_torus_conn(exact_torus):
    conn = build_connection(exact_torus)
    curvature(conn)
    return conn


@pytest.fixture(scope="session")
def conjugator():
    return random_pl_homeomorphism(np.random.default_rng(7), 4)


@pytest.fixture(scope="session")
def conjugated_torus(torus_mesh, torus_rep, conjugator):
    rep = conjugate_representation(torus_rep, conjugator)
    return conjugated_fuchsian_field(torus_mesh, 128, conjugator, rep)


@pytest.fixture(scope="session")
def mixture_torus(torus_mesh, torus_rep):
    mixture = kernel_mixture_field(torus_mesh, 128)
    return FiberMeasureField(torus_mesh, mixture.h, torus_rep, mixture.kind, mixture.evaluator)


@pytest.fixture(scope="session")
def flat_torus(torus_mesh, rotation_rep):
    return constant_field(torus_mesh, 64, rotation_rep)


@pytest.fixture(scope="session")
def solved_genus2(genus2, genus2_rep, genus2_mesh):
    return solve_harmonic_field(genus2, genus2_rep, genus2_mesh, bins=64, tol=1e-6)


def disk_cells(mesh, radius):
    """Indices of the cells whose center lies within Euclidean `radius` of 0."""
    return np.flatnonzero(np.abs(mesh.centers) < radius)


EXACT_CONFIG = {
    "family": "punctured-torus",
    "representation": "fuchsian-boundary",
    "field_source": "exact",
    "resolution": 32,
    "bins": 128,
    "cusp_area": 1.0,
    "levels": [0.5, 0.9],
    "seed": 7,
}


@pytest.fixture(scope="session")
def exact_run(tmp_path_factory):
    """A full pipeline run on the exact Fuchsian torus field; returns (config, result)."""
    config = PipelineConfig(**EXACT_CONFIG, out_dir=str(tmp_path_factory.mktemp("exact-run")))
    return config, run_pipeline(config)
