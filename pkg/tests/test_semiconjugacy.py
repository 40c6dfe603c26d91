import numpy as np
import pytest

from circlelab.circle_dynamics import trivial_representation
from circlelab.harmonic_measure import FiberMeasureField, collapse_semiconjugacy, cumulative_map
from circlelab.utils.errors import AtomicMeasureError



def test_uniform_density_gives_the_identity():
    psi = cumulative_map(np.ones(32))
    x = np.linspace(-1.0, 8.0, 101)
    np.testing.assert_allclose(psi(x), x, atol=1e-12)
    assert psi.strict


def test_poisson_field_collapses_to_a_conjugate(exact_torus, torus_rep):
    result = collapse_semiconjugacy(exact_torus, torus_rep, 0.2 + 0.1j)
    assert result.support_deficiency == 0.0
    assert result.rep_prime is not None
    assert result.equivariance_residual <= 1e-6


def test_conjugated_field_collapses_exactly(conjugated_torus):
    result = collapse_semiconjugacy(conjugated_torus, conjugated_torus.rep)
    assert result.equivariance_residual <= 1e-8
    assert result.rep_prime.kind == "semiconjugated"
    assert result.to_record()["collapsed_kind"] == "semiconjugated"


def test_atomic_measure_is_rejected(torus_mesh, torus_rep):
    h = np.zeros((len(torus_mesh), 64))
    h[:, 0] = 64.0
    with pytest.raises(AtomicMeasureError):
        collapse_semiconjugacy(FiberMeasureField(torus_mesh, h, torus_rep), torus_rep)


def test_half_supported_measure_collapses_an_arc(torus, torus_mesh):
    rep = trivial_representation(torus)
    h = np.zeros((len(torus_mesh), 64))
    h[:, :32] = 2.0
    result = collapse_semiconjugacy(FiberMeasureField(torus_mesh, h, rep), rep)
    assert not result.psi.strict
    assert result.support_deficiency == pytest.approx(np.pi)
    assert result.rep_prime is not None
    assert result.equivariance_residual == pytest.approx(0.0, abs=1e-12)
    assert result.rep_prime.kind == "semiconjugated"
