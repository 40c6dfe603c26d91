import numpy as np
import pytest

from circlelab.connection import cocycle_defect, cumulative, invert_phi, lipschitz_ratio, phi_lift, tau_lift
from circlelab.utils.errors import NonMonotoneCumulative



def test_cumulative_of_uniform_density_is_the_bin_edges():
    np.testing.assert_allclose(cumulative(np.ones(4)), [0.0, np.pi / 2, np.pi, 3 * np.pi / 2, 2 * np.pi])


def test_cumulative_rejects_empty_bins():
    with pytest.raises(NonMonotoneCumulative):
        cumulative(np.array([1.0, 0.0, 2.0]))


def test_phi_lift_is_a_degree_one_lift(exact_torus):
    row = cumulative(exact_torus.h[5])
    t = np.linspace(-4.0, 4.0, 41)
    np.testing.assert_allclose(phi_lift(row, t + 2 * np.pi), phi_lift(row, t) + 2 * np.pi, atol=1e-12)
    assert np.all(np.diff(phi_lift(row, t)) > 0)


def test_tau_inverts_phi(exact_torus):
    row = cumulative(exact_torus.h[17])
    t = np.linspace(0.0, 2 * np.pi, 50, endpoint=False)
    np.testing.assert_allclose(invert_phi(row, phi_lift(row, t)), t, atol=1e-10)
    theta = np.linspace(-3.0, 9.0, 37)
    np.testing.assert_allclose(phi_lift(row, tau_lift(row, theta)), theta, atol=1e-10)


@pytest.mark.parametrize("z", [0j, 0.3 + 0.2j, -0.45 + 0.1j])
def test_inverse_chart_respects_the_lipschitz_bound(exact_torus, z):
    slope, bound = lipschitz_ratio(exact_torus, z)
    assert slope <= bound * 1.01


def test_poisson_chart_is_equivariant(exact_torus):
    for word in ("a", "B"):
        assert cocycle_defect(exact_torus, word, 0.1 + 0.05j) <= 0.05
