import numpy as np
import pytest

from circlelab.connection import build_connection, curvature
from circlelab.gauss_bonnet import milnor_wood_sweep
from circlelab.harmonic_measure import exact_fuchsian_field, solve_harmonic_field
from circlelab.hyperbolic_core import build_mesh

from conftest import TORUS_CUTOFF, disk_cells



pytestmark = pytest.mark.slow

FINE = 64
FINE_BINS = 256


@pytest.fixture(scope="module")
def fine_torus_mesh(torus):
    return build_mesh(torus, FINE, TORUS_CUTOFF)


@pytest.fixture(scope="module")
def fine_genus2_mesh(genus2):
    return build_mesh(genus2, FINE)


def test_poisson_curvature_at_fine_resolution(fine_torus_mesh, torus_rep):
    conn = build_connection(exact_fuchsian_field(fine_torus_mesh, FINE_BINS, torus_rep))
    K = curvature(conn)
    cells = disk_cells(fine_torus_mesh, 0.4)
    cells = cells[conn.valid[cells]]
    assert cells.size > 100
    assert np.abs(K[cells] + 1.0).max() <= 5e-3


def test_solver_matches_the_poisson_field_at_fine_resolution(genus2, genus2_rep, fine_genus2_mesh):
    solved = solve_harmonic_field(genus2, genus2_rep, fine_genus2_mesh, bins=FINE_BINS, tol=1e-6, max_sweeps=100000)
    exact = exact_fuchsian_field(fine_genus2_mesh, FINE_BINS, genus2_rep)
    cells = disk_cells(fine_genus2_mesh, 0.6)
    gap = np.abs(solved.h[cells] - exact.h[cells]).sum() / exact.h[cells].sum()
    assert gap <= 0.05


def test_random_pl_sweep_respects_the_curvature_bound(torus, torus_mesh):
    rows = milnor_wood_sweep(torus, np.random.default_rng(7), count=20, mesh=torus_mesh, bins=64, radius=0.5)
    assert len(rows) == 20
    assert min(row["margin"] for row in rows) >= -1e-6
    assert max(row["max_abs_K"] for row in rows) <= 1.05
