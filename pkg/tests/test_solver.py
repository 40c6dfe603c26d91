import numpy as np
import pytest

from circlelab.circle_dynamics import rotation_representation
from circlelab.harmonic_measure import exact_fuchsian_field, harmonic_residual, solve_harmonic_field
from circlelab.utils import CheckLog
from circlelab.utils.errors import SolverError, SolverNotConverged



def test_solved_field_is_close_to_the_poisson_field(solved_genus2, genus2_mesh, genus2_rep):
    exact = exact_fuchsian_field(genus2_mesh, solved_genus2.bins, genus2_rep)
    gap = np.abs(solved_genus2.h - exact.h).sum() / exact.h.sum()
    assert gap <= 0.15


def test_solved_field_is_normalized_and_positive(solved_genus2):
    assert solved_genus2.mass_defect() < 1e-9
    assert solved_genus2.h.min() > 0
    assert solved_genus2.residual_history[-1] < 1e-6
    assert harmonic_residual(solved_genus2) < 1e-3


def test_rotation_action_keeps_the_uniform_field(torus, torus_mesh, rotation_rep):
    log = CheckLog()
    field = solve_harmonic_field(torus, rotation_rep, torus_mesh, bins=64, log=log)
    np.testing.assert_allclose(field.h, 1.0, atol=1e-12)
    names = {event.name: event for event in log.events}
    assert names["converged"].passed
    assert names["positive_density"].passed


def test_finite_orbit_is_an_advisory(torus, torus_mesh):
    rep = rotation_representation(torus, 2 * np.pi / 3)
    log = CheckLog()
    field = solve_harmonic_field(torus, rep, torus_mesh, bins=48, log=log)
    assert any("finite orbit" in note for note in field.advisories)
    finite = next(event for event in log.events if event.name == "finite_orbit")
    assert not finite.passed
    assert log.events[0].passed


def test_sweep_budget_raises_with_history(genus2, genus2_rep, genus2_mesh):
    log = CheckLog()
    with pytest.raises(SolverNotConverged) as info:
        solve_harmonic_field(genus2, genus2_rep, genus2_mesh, bins=32, max_sweeps=3, log=log)
    assert len(info.value.residual_history) == 3
    assert info.value.sweeps == 3
    assert not log.all_passed


def test_mismatched_groups_are_rejected(genus2, torus_mesh, rotation_rep):
    with pytest.raises(SolverError):
        solve_harmonic_field(genus2, rotation_rep, torus_mesh, bins=32)
