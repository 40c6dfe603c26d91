import numpy as np
import pytest

from circlelab.circle_dynamics import random_pl_homeomorphism, reverse_orientation
from circlelab.harmonic_measure import (
    FiberMeasureField, bin_centers, circle_wasserstein, field_checks, harmonic_residual, measure_at, push_histogram,
    rebin_matrix)
from circlelab.utils.errors import SolverError



def test_exact_field_is_uniform_at_the_origin(exact_torus):
    cell = exact_torus.mesh.nearest_cell(0j)
    row = exact_torus.h[cell]
    assert np.all(np.abs(row - 1.0) < 0.15)
    np.testing.assert_allclose(measure_at(exact_torus, 0j), 1.0, atol=1e-12)


def test_exact_field_mass(exact_torus):
    assert exact_torus.mass_defect() < 0.02 * 2 * np.pi
    assert exact_torus.h.min() > 0


def test_conjugated_field_has_exact_mass(conjugated_torus):
    assert conjugated_torus.mass_defect() < 1e-9


def test_measure_at_transports_folded_points(exact_torus):
    # beyond the side carried by the circle |z - (1 + i)| = 1
    z = 0.6 + 0.6j
    assert not exact_torus.mesh.group.in_polygon(z)[0]
    stored = FiberMeasureField(exact_torus.mesh, exact_torus.h, exact_torus.rep)
    assert circle_wasserstein(measure_at(stored, z), measure_at(exact_torus, z)) < 0.1


def test_circle_wasserstein_of_shifted_atoms():
    bins = 64
    p = np.zeros(bins)
    q = np.zeros(bins)
    p[0] = 1.0
    q[5] = 1.0
    assert circle_wasserstein(p, p) == 0.0
    assert circle_wasserstein(p, q) == pytest.approx(5 * 2 * np.pi / bins)
    q = np.zeros(bins)
    q[bins - 3] = 1.0
    assert circle_wasserstein(p, q) == pytest.approx(3 * 2 * np.pi / bins)


def test_rebin_matrix_preserves_mass():
    f = random_pl_homeomorphism(np.random.default_rng(4), 5)
    matrix = rebin_matrix(f, 64)
    np.testing.assert_allclose(matrix.sum(axis=0), 1.0, atol=1e-12)
    density = 1.0 + 0.5 * np.sin(bin_centers(64))
    assert push_histogram(f, density).sum() == pytest.approx(density.sum())


def test_rotation_transfers_uniform_density(rotation_rep):
    matrix = rebin_matrix(rotation_rep.letter("a"), 64)
    np.testing.assert_allclose(matrix @ np.ones(64), 1.0, atol=1e-12)


def test_constant_field_is_harmonic(flat_torus):
    assert harmonic_residual(flat_torus) == 0.0
    checks = field_checks(flat_torus)
    assert checks["mass_defect"] < 1e-12
    assert checks.get("equivariance_residual", 0.0) < 1e-9


def test_reflected_field_reverses_bins(exact_torus, torus_rep):
    reflected = exact_torus.with_bins_reflected(reverse_orientation(torus_rep))
    np.testing.assert_array_equal(reflected.h, exact_torus.h[:, ::-1])
    z = 0.2 - 0.1j
    np.testing.assert_allclose(measure_at(reflected, z), measure_at(exact_torus, z)[::-1])


def test_field_file_round_trip(tmp_path, flat_torus):
    path = str(tmp_path / "field.bin")
    sidecar = flat_torus.write(path)
    assert sidecar["checks"]["mass_defect"] < 1e-12
    restored = FiberMeasureField.read(path)
    np.testing.assert_array_equal(restored.h, flat_torus.h)
    assert restored.rep is not None
    assert len(restored.mesh) == len(flat_torus.mesh)


def test_wrong_row_count_is_rejected(torus_mesh):
    with pytest.raises(SolverError):
        FiberMeasureField(torus_mesh, np.ones((3, 64)))


def test_transfer_needs_a_representation(torus_mesh):
    field = FiberMeasureField(torus_mesh, np.ones((len(torus_mesh), 64)))
    with pytest.raises(SolverError):
        field.transfer("a")
