import numpy as np
import pytest

from circlelab.circle_dynamics import PLCircleLift, reverse_orientation
from circlelab.connection import build_connection
from circlelab.rigidity_analysis import (
    core_cells, extract_matsumoto_map, maximality_margin, reconstruction_error, rigidity_report)
from circlelab.utils import CheckLog
from circlelab.utils.errors import NonMaximalError



X = np.linspace(0.0, 2 * np.pi, 97)


def test_poisson_field_is_maximal(exact_torus, exact_torus_conn):
    log = CheckLog()
    report = rigidity_report(exact_torus, exact_torus_conn, log=log)
    assert report.euler_number == -1.0
    assert report.maximal
    assert not report.reversed
    assert report.matsumoto.equivariance_residual <= 1e-2
    np.testing.assert_allclose(report.matsumoto(X), X, atol=2e-2)
    assert report.reconstruction_error <= 0.05
    assert log.all_passed


def test_boundary_map_does_not_depend_on_the_base_point(exact_torus, exact_torus_conn):
    matsumoto = extract_matsumoto_map(exact_torus, exact_torus_conn, 0.2 + 0.1j)
    assert matsumoto.boundary_map.circle_distance(extract_matsumoto_map(exact_torus, exact_torus_conn).boundary_map) <= 2e-2


def test_conjugated_field_recovers_the_conjugator(conjugated_torus, conjugator):
    conn = build_connection(conjugated_torus)
    report = rigidity_report(conjugated_torus, conn)
    assert report.maximal
    assert report.matsumoto.boundary_map.circle_distance(conjugator.inverse()) <= 2e-2
    assert report.reconstruction_error <= 0.05
    assert report.matsumoto.collapsed_map is not None


def test_flat_field_is_not_maximal(flat_torus):
    report = rigidity_report(flat_torus)
    assert report.euler_number == 0.0
    assert not report.maximal
    assert report.margin == pytest.approx(1.0, abs=1e-9)
    assert report.matsumoto is None
    assert report.to_record()["matsumoto"] is None


def test_maximality_check_fails_for_a_flat_field(flat_torus):
    log = CheckLog()
    rigidity_report(flat_torus, log=log)
    maximal = next(event for event in log.events if event.name == "maximal")
    assert not maximal.passed
    assert maximal.margin == pytest.approx(1.0, abs=1e-9)


def test_mixture_field_is_not_maximal(mixture_torus):
    conn = build_connection(mixture_torus)
    assert maximality_margin(conn) > 0.3
    assert not rigidity_report(mixture_torus, conn).maximal
    with pytest.raises(NonMaximalError):
        extract_matsumoto_map(mixture_torus, conn)


def test_positive_euler_number_is_reversed(exact_torus, torus_rep):
    reflected = exact_torus.with_bins_reflected(reverse_orientation(torus_rep))
    report = rigidity_report(reflected)
    assert report.euler_number == 1.0
    assert report.reversed
    assert report.maximal


def test_core_cells_stay_below_half_the_cutoff(exact_torus_conn, torus):
    cells = core_cells(exact_torus_conn)
    assert cells.size > 0
    levels = torus.cusps[0].level(exact_torus_conn.mesh.centers[cells])
    assert np.all(levels <= 0.5 * exact_torus_conn.mesh.cusp_levels[0])


def test_reconstruction_error_of_a_wrong_map(conjugated_torus):
    assert reconstruction_error(conjugated_torus, PLCircleLift.identity()) > 1e-3
