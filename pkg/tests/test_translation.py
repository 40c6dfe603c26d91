from fractions import Fraction

import numpy as np
import pytest

from circlelab.circle_dynamics import (
    MoebiusCircleLift, PLCircleLift, ReflectedCircleLift, orbit_translation, random_pl_homeomorphism,
    rational_translation, simplest_fraction, translation_bracket, translation_number)
from circlelab.hyperbolic_core import disk_rotation
from circlelab.utils.errors import TranslationNumberNotConverged



def test_irrational_rotation():
    assert translation_number(PLCircleLift.rotation(1.0)) == pytest.approx(1.0 / (2 * np.pi), abs=1e-12)


def test_half_turn_rotation_is_rational():
    assert translation_number(PLCircleLift.rotation(np.pi)) == pytest.approx(0.5)


def test_map_with_fixed_point_has_zero_translation():
    f = PLCircleLift([0.0, 2.0, 4.0], [0.0, 1.0, 4.5])
    assert rational_translation(f, 4) == 0.0
    assert translation_number(f) == 0.0
    assert translation_number(f.shift(2)) == 2.0


def test_period_three_orbit():
    # permutes 0, 2π/3, 4π/3 cyclically with a non-rigid map in between
    third = 2 * np.pi / 3
    f = PLCircleLift([0.0, 1.0, third, third + 0.5, 2 * third], [third, third + 0.2, 2 * third, 2 * third + 1.3, 2 * np.pi])
    assert translation_number(f) == pytest.approx(1.0 / 3.0)


@pytest.mark.parametrize("beta", [0.4, 2.0, 5.5])
def test_elliptic_moebius_lift(beta):
    lift = MoebiusCircleLift(disk_rotation(beta)).canonical()
    assert translation_number(lift) == pytest.approx(beta / (2 * np.pi), abs=1e-9)


def test_reflection_flips_the_sign():
    lift = PLCircleLift.rotation(1.0)
    assert translation_number(ReflectedCircleLift(lift)) == pytest.approx(-1.0 / (2 * np.pi), abs=1e-12)


def test_cusp_word_of_torus_translates_by_one(torus_rep, torus):
    assert translation_number(torus_rep.evaluate_word(torus.cusp_words[0])) == 1.0


def test_bracket_contains_the_value():
    f = random_pl_homeomorphism(np.random.default_rng(19), 4)
    low, high, _ = translation_bracket(f, 1e-3, 1 << 20)
    assert high - low <= 1e-3
    x = np.linspace(0.0, 2 * np.pi, 16, endpoint=False)
    orbit = x.copy()
    for _ in range(400):
        orbit = f(orbit)
    estimate = (orbit - x) / (2 * np.pi * 400)
    assert np.all(estimate > low - 1.0 / 400)
    assert np.all(estimate < high + 1.0 / 400)


def test_bracket_gives_up_at_the_breakpoint_cap():
    # conjugate of an irrational rotation: no periodic point, breakpoints keep growing
    g = random_pl_homeomorphism(np.random.default_rng(23), 6)
    f = g.compose(PLCircleLift.rotation(1.0)).compose(g.inverse())
    with pytest.raises(TranslationNumberNotConverged) as info:
        translation_bracket(f, 1e-14, 4, max_denominator=1)
    low, high = info.value.bracket
    assert low <= 1.0 / (2 * np.pi) <= high


TOL = 1e-4
SEEDS = range(10)


@pytest.mark.parametrize("seed", SEEDS)
def test_default_tolerance_resolves_or_reports_a_bracket(seed):
    f = random_pl_homeomorphism(np.random.default_rng(seed), 4)
    try:
        tau = translation_number(f)
    except TranslationNumberNotConverged as error:
        low, high = error.bracket
        assert low <= high
    else:
        assert np.isfinite(tau)


@pytest.mark.parametrize("seed", SEEDS)
def test_random_lifts_resolve(seed):
    f = random_pl_homeomorphism(np.random.default_rng(seed), 4)
    tau = translation_number(f, TOL)
    assert np.isfinite(tau)
    assert translation_number(f.shift(1), TOL) == pytest.approx(tau + 1.0, abs=TOL)


@pytest.mark.parametrize("seed", SEEDS)
def test_conjugation_keeps_translation_number(seed):
    rng = np.random.default_rng(100 + seed)
    f = random_pl_homeomorphism(rng, 4)
    g = random_pl_homeomorphism(rng, 4)
    conjugate = g.compose(f).compose(g.inverse())
    assert abs(translation_number(conjugate, TOL) - translation_number(f, TOL)) <= 2 * TOL


@pytest.mark.parametrize("seed", SEEDS)
def test_powers_scale_translation_number(seed):
    f = random_pl_homeomorphism(np.random.default_rng(200 + seed), 4).loosened()
    tau = translation_number(f, TOL)
    for n in (2, 3, 5, 8):
        assert abs(translation_number(f.power(n), n * TOL) - n * tau) <= n * TOL + 1e-12


@pytest.mark.parametrize("seed", SEEDS)
def test_orbit_estimate_ignores_the_base_point(seed):
    f = random_pl_homeomorphism(np.random.default_rng(300 + seed), 4)
    n = 4096
    at_zero = orbit_translation(f, 0.0, n)
    at_pi = orbit_translation(f, np.pi, n)
    assert abs(at_zero - at_pi) <= 1.0 / n
    assert abs(at_zero - translation_number(f, TOL)) <= 1.0 / n + TOL


def test_simplest_fraction():
    assert simplest_fraction(0.3, 0.36) == Fraction(1, 3)
    assert simplest_fraction(0.9, 1.2) == 1
    assert simplest_fraction(-0.26, -0.24) == Fraction(-1, 4)
    assert simplest_fraction(0.25, 0.25) == Fraction(1, 4)


def test_bracket_certifies_rational_values():
    # period-five rotation hidden behind a conjugator
    g = random_pl_homeomorphism(np.random.default_rng(41), 5)
    f = g.compose(PLCircleLift.rotation(2 * np.pi * 2 / 5)).compose(g.inverse())
    low, high, _ = translation_bracket(f, 1e-12, 1 << 20)
    assert low == high == pytest.approx(0.4, abs=1e-12)
