import numpy as np
import pytest

from circlelab.reporting import emit_grid, h_table, holonomy_table, k_table, read_grid, slopes_table
from circlelab.utils.errors import UnknownQuantity



def test_h_table(exact_run):
    config, _ = exact_run
    frame = h_table(config.out_dir)
    assert list(frame.columns) == ["cell", "center_re", "center_im", "area_hyp", "t_rad", "h"]
    masses = frame.groupby("cell")["h"].sum() * (2 * np.pi / config.bins)
    np.testing.assert_allclose(masses, 2 * np.pi, rtol=0.02)


def test_k_table(exact_run):
    config, _ = exact_run
    frame = k_table(config.out_dir)
    assert list(frame.columns) == ["center_re", "center_im", "area_hyp", "K"]
    central = frame[np.hypot(frame.center_re, frame.center_im) < 0.4]
    np.testing.assert_allclose(central.K, -1.0, atol=0.05)


def test_slopes_table(exact_run):
    config, _ = exact_run
    frame = slopes_table(config.out_dir)
    assert list(frame.columns) == ["cell", "theta_rad", "omega_1", "omega_2"]
    assert len(frame) == frame.cell.nunique() * config.bins


def test_holonomy_table(exact_run):
    config, _ = exact_run
    frame = holonomy_table(config.out_dir)
    assert list(frame.level) == config.levels
    assert (frame.target == -1.0).all()


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_emitted_tables_read_back(exact_run, tmp_path, fmt):
    config, _ = exact_run
    path = emit_grid(config.out_dir, "K", fmt, str(tmp_path / f"K.{fmt}"))
    frame = read_grid(path)
    expected = k_table(config.out_dir)
    assert len(frame) == len(expected)
    np.testing.assert_allclose(frame.center_re, expected.center_re, atol=1e-12)


def test_unknown_quantity(exact_run):
    config, _ = exact_run
    with pytest.raises(UnknownQuantity):
        emit_grid(config.out_dir, "torsion")
