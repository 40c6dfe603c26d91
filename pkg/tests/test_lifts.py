import numpy as np
import pytest

from circlelab.circle_dynamics import (
    ConjugateCircleLift, MoebiusCircleLift, PLCircleLift, ReflectedCircleLift, lift_from_json,
    random_pl_homeomorphism, sampled_composition)
from circlelab.hyperbolic_core import disk_rotation, disk_translation
from circlelab.utils.errors import CircleMapError, NonMonotoneLift



X = np.linspace(-3.0, 9.0, 257)


@pytest.fixture
def pl_pair():
    rng = np.random.default_rng(11)
    return random_pl_homeomorphism(rng, 5), random_pl_homeomorphism(rng, 3)


def test_random_pl_is_a_degree_one_lift(pl_pair):
    f, _ = pl_pair
    np.testing.assert_allclose(f(X + 2 * np.pi), f(X) + 2 * np.pi, atol=1e-12)
    assert np.all(f.slopes() > 0)
    assert 0.0 <= float(f(0.0)) < 2 * np.pi


def test_random_pl_is_reproducible():
    a = random_pl_homeomorphism(np.random.default_rng(5), 4)
    b = random_pl_homeomorphism(np.random.default_rng(5), 4)
    np.testing.assert_array_equal(a.values, b.values)


def test_pl_composition_is_exact(pl_pair):
    f, g = pl_pair
    composed = f @ g
    assert isinstance(composed, PLCircleLift)
    np.testing.assert_allclose(composed(X), f(g(X)), atol=1e-12)


def test_pl_inverse(pl_pair):
    f, _ = pl_pair
    np.testing.assert_allclose(f.inverse()(f(X)), X, atol=1e-12)


def test_moebius_composition_keeps_the_lift():
    a = MoebiusCircleLift(disk_translation(0.4 + 0.1j) @ disk_rotation(2.5))
    b = MoebiusCircleLift(disk_translation(-0.3j), k=1)
    composed = a @ b
    assert isinstance(composed, MoebiusCircleLift)
    np.testing.assert_allclose(composed(X), a(b(X)), atol=1e-10)
    np.testing.assert_allclose(a.inverse()(a(X)), X, atol=1e-10)


def test_mixed_composition_is_sampled(pl_pair):
    f, _ = pl_pair
    m = MoebiusCircleLift(disk_translation(0.3 - 0.2j))
    composed = f @ m
    assert isinstance(composed, PLCircleLift)
    assert composed.sup_distance(sampled_composition(f, m)) == 0.0
    np.testing.assert_allclose(composed(X), f(m(X)), atol=1e-4)


def test_conjugate_lift(pl_pair):
    g, f = pl_pair
    conj = ConjugateCircleLift(g, f)
    np.testing.assert_allclose(conj(X), g(f(g.inverse()(X))), atol=1e-12)
    np.testing.assert_allclose(conj.inverse()(conj(X)), X, atol=1e-10)


def test_reflected_lift(pl_pair):
    f, g = pl_pair
    r = ReflectedCircleLift(f)
    np.testing.assert_allclose(r(X), -f(-X))
    both = r @ ReflectedCircleLift(g)
    assert isinstance(both, ReflectedCircleLift)
    np.testing.assert_allclose(both(X), -f(g(-X)), atol=1e-12)


def test_shift_and_canonical(pl_pair):
    f, _ = pl_pair
    shifted = f.shift(3)
    np.testing.assert_allclose(shifted(X), f(X) + 6 * np.pi)
    assert 0.0 <= float(shifted.canonical()(0.0)) < 2 * np.pi


def test_circle_distance_ignores_deck_shifts(pl_pair):
    f, _ = pl_pair
    assert f.circle_distance(f.shift(-2)) == pytest.approx(0.0, abs=1e-12)
    assert f.sup_distance(f.shift(1)) == pytest.approx(2 * np.pi)


def test_decreasing_values_are_rejected():
    with pytest.raises(NonMonotoneLift):
        PLCircleLift([0.0, 1.0], [0.0, -0.5])


def test_breakpoints_outside_the_period_are_rejected():
    with pytest.raises(CircleMapError):
        PLCircleLift([0.0, 7.0], [0.0, 1.0])


def test_non_strict_lift_has_no_inverse():
    flat = PLCircleLift([0.0, 1.0, 2.0], [0.0, 1.0, 1.0], strict=False)
    with pytest.raises(NonMonotoneLift):
        flat.inverse()


def test_lift_from_json_restores_the_carrier(pl_pair):
    f, g = pl_pair
    conj = ConjugateCircleLift(g, MoebiusCircleLift(disk_translation(0.2j), k=1))
    restored = lift_from_json(conj.to_json())
    np.testing.assert_allclose(restored(X), conj(X), atol=1e-10)
