import numpy as np
import pytest

from circlelab.hyperbolic_core import (
    CUSP, GHOST, HyperbolicMesh, build_mesh, cusp_level_for_area, horocircle_family, to_upper)
from circlelab.utils.errors import InvalidGroupSpec

from conftest import TORUS_CUTOFF



def test_cusp_level_for_area():
    assert cusp_level_for_area(0.5) == 2.0
    with pytest.raises(InvalidGroupSpec):
        cusp_level_for_area(0.0)


def test_resolution_below_eight_is_rejected(genus2):
    with pytest.raises(InvalidGroupSpec):
        build_mesh(genus2, 4)


def test_cusped_group_needs_a_cutoff(torus):
    with pytest.raises(InvalidGroupSpec):
        build_mesh(torus, 16)


def test_closed_mesh_area_approaches_surface_area(genus2_mesh):
    assert genus2_mesh.full_area == pytest.approx(4 * np.pi)
    assert genus2_mesh.total_area == pytest.approx(4 * np.pi, rel=0.02)


def test_truncated_mesh_misses_the_cusp_area(torus_mesh):
    assert torus_mesh.cusp_levels == [TORUS_CUTOFF]
    expected = 2 * np.pi - 1.0 / TORUS_CUTOFF
    assert torus_mesh.total_area == pytest.approx(expected, rel=0.03)


def test_cells_lie_in_the_region(torus_mesh):
    assert np.all(torus_mesh.in_region(torus_mesh.centers))
    assert np.all(torus_mesh.areas > 0)


def test_closed_mesh_has_ghosts_but_no_cusp_neighbors(genus2_mesh):
    kinds = genus2_mesh.kinds.ravel()
    assert np.any(kinds == GHOST)
    assert not np.any(kinds == CUSP)


def test_ghost_words_map_back(genus2_mesh):
    group = genus2_mesh.group
    steps = (1.0, -1.0, 1j, -1j)
    for (cell, direction), ghost in list(genus2_mesh.ghosts.items())[:20]:
        point = genus2_mesh.centers[cell] + genus2_mesh.spacing * steps[direction]
        folded = complex(group.element(ghost.word).inverse().apply(point))
        assert group.in_polygon(folded)[0]
        assert sum(ghost.weights) == pytest.approx(1.0)


def test_averaging_weights_sum_to_one(torus_mesh):
    np.testing.assert_allclose(torus_mesh.averaging_weights().sum(axis=1), 1.0)


def test_interpolation_weights(torus_mesh):
    cells, weights = torus_mesh.interpolation(0.11 - 0.07j)
    assert sum(weights) == pytest.approx(1.0)
    assert len(cells) == 4


def test_nearest_cell(torus_mesh):
    cell = torus_mesh.nearest_cell(0j)
    assert abs(torus_mesh.centers[cell]) <= torus_mesh.spacing


def test_json_round_trip(torus_mesh, torus):
    rebuilt = HyperbolicMesh.from_json(torus_mesh.to_json(), torus)
    np.testing.assert_array_equal(rebuilt.areas, torus_mesh.areas)
    np.testing.assert_array_equal(rebuilt.kinds, torus_mesh.kinds)
    assert rebuilt.ghosts.keys() == torus_mesh.ghosts.keys()


def test_horocircle_closes_under_its_cusp_word(torus):
    (horocircle,) = horocircle_family(torus, 0, [0.75])
    points = horocircle.points(64)
    image = complex(torus.element(horocircle.word).apply(points[0]))
    assert abs(image - points[-1]) < 1e-9
    assert horocircle.length == pytest.approx(1 / 0.75)
    assert horocircle.delta == pytest.approx(2 * np.arcsinh(1 / 1.5))


def test_horocircle_sits_at_its_level(torus):
    (horocircle,) = horocircle_family(torus, 0, [0.5])
    w = to_upper(horocircle.points(16))
    (a, b), (c, d) = torus.cusps[0].level_maps[0]
    np.testing.assert_allclose(((a * w + b) / (c * w + d)).imag, 0.5, atol=1e-9)


def test_horocircle_family_needs_increasing_levels_and_cusps(torus, genus2):
    assert [h.level for h in horocircle_family(torus, 0, [0.5, 0.75, 1.0])] == [0.5, 0.75, 1.0]
    with pytest.raises(InvalidGroupSpec):
        horocircle_family(torus, 0, [1.0, 0.5, 0.75])
    with pytest.raises(InvalidGroupSpec):
        horocircle_family(torus, 0, [0.5, 0.5])
    with pytest.raises(InvalidGroupSpec):
        horocircle_family(torus, 1, [0.5])
    with pytest.raises(InvalidGroupSpec):
        horocircle_family(genus2, 0, [1.0])
