import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgnsa.errors import DimensionError, InvalidInputError, InvalidSizeError
from qgnsa.quantum import (
    DEFAULT_ADJ,
    AngleRegister,
    adjust,
    new_register,
    reset_to_superposition,
    sample,
)

HALF_PI = math.pi / 2


@pytest.mark.parametrize("n", [1, 4, 192])
def test_new_register_is_equal_superposition(n):
    reg = new_register(n)
    assert reg.n == n
    assert np.all(reg.angles == HALF_PI)
    assert np.allclose(reg.probabilities(), 0.5)


@pytest.mark.parametrize("n", [0, -3, 2.5])
def test_new_register_rejects_bad_size(n):
    with pytest.raises(InvalidSizeError):
        new_register(n)


def test_register_rejects_out_of_range_angles():
    with pytest.raises(InvalidInputError):
        AngleRegister([0.1, 4.0])


def test_register_is_immutable():
    reg = new_register(3)
    with pytest.raises(ValueError):
        reg.angles[0] = 0.0


def test_sample_endpoints_are_deterministic(rng):
    assert not sample(AngleRegister(np.zeros(5)), 100, rng).any()
    assert sample(AngleRegister(np.full(5, math.pi)), 100, rng).all()


def test_sample_shape_and_equal_superposition_frequency(rng):
    shots = sample(new_register(8), 10_000, rng)
    assert shots.shape == (10_000, 8)
    assert shots.dtype == bool
    assert np.all(np.abs(shots.mean(axis=0) - 0.5) <= 0.02)


def test_sample_is_reproducible():
    reg = AngleRegister([0.3, 1.2, 2.9])
    a = sample(reg, 50, np.random.default_rng(9))
    b = sample(reg, 50, np.random.default_rng(9))
    assert np.array_equal(a, b)


def test_sample_rejects_zero_shots(rng):
    with pytest.raises(InvalidSizeError):
        sample(new_register(2), 0, rng)


def test_adjust_examples():
    assert adjust(AngleRegister([HALF_PI]), [True], 0.1).angles[0] == HALF_PI + 0.1
    assert adjust(AngleRegister([math.pi - 0.05]), [True], 0.1).angles[0] == math.pi
    assert adjust(AngleRegister([0.02]), [False], 0.1).angles[0] == 0.0


def test_adjust_is_pure():
    reg = new_register(3)
    out = adjust(reg, [True, False, True], 0.2)
    assert np.all(reg.angles == HALF_PI)
    assert out is not reg


def test_adjust_length_mismatch():
    with pytest.raises(DimensionError):
        adjust(new_register(3), [True, False], 0.1)


def test_adjust_rejects_non_positive_step():
    with pytest.raises(InvalidInputError):
        adjust(new_register(2), [True, False], 0.0)


@pytest.mark.parametrize(
    "angles", [[0.0, math.pi, 0.3], [HALF_PI] * 4, list(np.linspace(0, math.pi, 192))]
)
def test_reset_to_superposition(angles):
    out = reset_to_superposition(AngleRegister(angles))
    assert out.n == len(angles)
    assert np.all(out.angles == HALF_PI)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.floats(0, math.pi), min_size=1, max_size=16),
    st.data(),
)
def test_clamp_invariant(angles, data):
    reg = AngleRegister(angles)
    for _ in range(data.draw(st.integers(1, 30))):
        bits = data.draw(st.lists(st.booleans(), min_size=reg.n, max_size=reg.n))
        step = data.draw(st.floats(1e-6, math.pi))
        reg = adjust(reg, bits, step)
        assert np.all((reg.angles >= 0) & (reg.angles <= math.pi))


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.booleans(), min_size=1, max_size=24),
    st.floats(0.01, math.pi),
)
def test_repeated_adjust_saturates_and_collapses(bits, step):
    reg = new_register(len(bits))
    for _ in range(math.ceil(HALF_PI / step)):
        reg = adjust(reg, bits, step)
    assert reg.saturation() == 1.0
    shots = sample(reg, 20, np.random.default_rng(0))
    assert np.all(shots == np.array(bits))


def test_default_adj_saturates_in_ten_steps():
    bits = np.array([True, False] * 6)
    reg = new_register(12)
    for _ in range(10):
        reg = adjust(reg, bits, DEFAULT_ADJ)
    assert reg.saturation() == 1.0
