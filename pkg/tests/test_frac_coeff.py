from math import comb, gamma

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracsum.errors import DomainError, RangeError
from fracsum.frac_coeff import (
    DIRECT_INDEX_LIMIT,
    FracOrder,
    inverse_weights,
    partial_weight_sums,
    recurrence_weights,
    weight_direct,
    weights,
)

non_integer_orders = st.floats(-4.9, 4.9).filter(lambda r: abs(r - round(r)) > 1e-3)


def gamma_ratio(r, i):
    # independent of scipy: math.gamma with the sign pulled out explicitly
    return (-1) ** i * gamma(r + 1) / (gamma(i + 1) * gamma(r - i + 1))


def test_frozen_values_half_order():
    np.testing.assert_array_equal(weights(0.5, 5).weights, [1.0, -0.5, -0.125, -0.0625, -0.0390625])


def test_order_one_is_first_difference():
    np.testing.assert_array_equal(weights(1, 4).weights, [1.0, -1.0, 0.0, 0.0])


@pytest.mark.parametrize("k", [0, 1, 2, 3, 5])
def test_integer_orders_are_signed_binomials(k):
    w = weights(k, 12).weights
    expected = np.array([(-1) ** i * comb(k, i) for i in range(12)], dtype=float)
    assert np.array_equal(w, expected)
    assert not np.signbit(w[k + 1 :]).any()


@pytest.mark.parametrize("r", [0.25, 0.5, 0.9, 1.5, -0.5, 2.75])
def test_recurrence_matches_math_gamma(r):
    w = recurrence_weights(r, 25)
    ref = np.array([gamma_ratio(r, i) for i in range(25)])
    np.testing.assert_allclose(w, ref, rtol=1e-12)


@given(non_integer_orders, st.integers(0, 40))
def test_direct_weight_matches_recurrence(r, i):
    w = recurrence_weights(r, i + 1)[i]
    assert weight_direct(r, i) == pytest.approx(w, rel=1e-11, abs=1e-300)


@given(st.floats(-3, 3), st.integers(1, 60))
def test_partial_sums_shift_the_order(r, n):
    np.testing.assert_allclose(np.cumsum(recurrence_weights(r, n)),
                               partial_weight_sums(r, n), rtol=1e-10, atol=1e-12)


@given(st.floats(0.01, 2.5), st.integers(1, 80))
def test_inverse_kernel_convolves_to_delta(r, n):
    conv = np.convolve(weights(r, n).weights, inverse_weights(r, n))[:n]
    expected = np.zeros(n)
    expected[0] = 1.0
    np.testing.assert_allclose(conv, expected, atol=1e-12)


def test_inverse_order_one_is_running_sum():
    np.testing.assert_array_equal(inverse_weights(1.0, 6), np.ones(6))


@pytest.mark.parametrize("bad", [-1, -2.0, float("nan"), float("inf")])
def test_rejected_orders(bad):
    with pytest.raises(DomainError):
        FracOrder(bad)


def test_direct_index_limit():
    weight_direct(0.5, DIRECT_INDEX_LIMIT)
    with pytest.raises(RangeError):
        weight_direct(0.5, DIRECT_INDEX_LIMIT + 1)


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        weights(0.5, -1)
