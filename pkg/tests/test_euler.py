import numpy as np
import pytest

from circlelab.circle_dynamics import (
    PLCircleLift, Representation, conjugate_representation, detect_finite_orbit, euler_details, euler_number,
    milnor_wood_margin, random_pl_homeomorphism, random_pl_representation, reverse_orientation,
    rotation_representation, trivial_representation)
from circlelab.gauss_bonnet import milnor_wood_sweep
from circlelab.utils.errors import CircleMapError, RelatorNotIdentity, UnknownGenerator



def test_fuchsian_torus_is_maximal(torus_rep):
    assert euler_number(torus_rep) == -1.0
    assert milnor_wood_margin(torus_rep) == 0.0


def test_fuchsian_genus_two_is_maximal(genus2_rep):
    details = euler_details(genus2_rep)
    assert details.closed
    assert details.value == -2.0
    assert details.residual < 1e-6


def test_rotations_and_trivial_have_zero_euler_number(torus, genus2):
    assert euler_number(rotation_representation(torus, 1.3)) == 0.0
    assert euler_number(rotation_representation(genus2, 0.7)) == 0.0
    assert euler_number(trivial_representation(torus)) == 0.0


def test_orientation_reversal_flips_the_sign(torus_rep, genus2_rep):
    assert euler_number(reverse_orientation(torus_rep)) == 1.0
    assert euler_number(reverse_orientation(genus2_rep)) == 2.0


def test_conjugation_keeps_the_euler_number(torus_rep, conjugator):
    rep = conjugate_representation(torus_rep, conjugator)
    assert rep.kind == "conjugated-fuchsian"
    assert euler_number(rep) == -1.0


def test_milnor_wood_sweep_margins_are_non_negative(torus):
    rows = milnor_wood_sweep(torus, np.random.default_rng(2024), count=8)
    assert len(rows) == 8
    assert min(row["margin"] for row in rows) >= -1e-6


def test_random_pl_needs_a_free_group(genus2):
    with pytest.raises(CircleMapError):
        random_pl_representation(genus2, np.random.default_rng(0))


def test_relator_must_act_trivially(genus2):
    f = random_pl_homeomorphism(np.random.default_rng(1), 4)
    lifts = {label: f if label == "a" else PLCircleLift.identity() for label in genus2.labels}
    lifts["b"] = PLCircleLift.rotation(0.5)
    rep = Representation(genus2, lifts, "pl-custom")
    with pytest.raises(RelatorNotIdentity):
        rep.validate()


def test_missing_generator_is_rejected(torus):
    with pytest.raises(UnknownGenerator):
        Representation(torus, {"a": PLCircleLift.identity()}, "pl-custom")


def test_unknown_letter_is_rejected(torus_rep):
    with pytest.raises(UnknownGenerator):
        torus_rep.evaluate_word("aq")


def test_json_round_trip_keeps_the_action(torus_rep, conjugator):
    rep = conjugate_representation(torus_rep, conjugator)
    restored = Representation.from_json(rep.to_json())
    x = np.linspace(0.0, 2 * np.pi, 33)
    for label in rep.group.labels:
        np.testing.assert_allclose(restored.letter(label)(x), rep.letter(label)(x), atol=1e-10)
    assert euler_number(restored) == -1.0


def test_rational_rotation_has_a_finite_orbit(torus):
    rep = rotation_representation(torus, 2 * np.pi / 3)
    orbit = detect_finite_orbit(rep)
    assert orbit is not None
    assert len(orbit) == 3


def test_fuchsian_action_has_no_short_finite_orbit(torus_rep):
    assert detect_finite_orbit(torus_rep) is None
