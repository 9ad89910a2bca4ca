import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from fracsum.almost import (
    AlmostVerdict,
    d_sequence,
    envelopes,
    estimate_almost_limit,
    lorentz_grid,
    make_generator,
    miller_orhan_blocks,
    spread_at,
)
from fracsum.errors import DomainError, NameLookupError, SizeError


def naive_means(x, m_max):
    n = len(x)
    out = np.full((m_max + 1, n), np.nan)
    for m in range(m_max + 1):
        for s in range(n - m):
            out[m, s] = np.mean(x[s : s + m + 1])
    return out


@given(arrays(np.float64, st.integers(2, 60), elements=st.floats(-1e3, 1e3)), st.data())
@settings(max_examples=50)
def test_grid_matches_naive(x, data):
    m_max = data.draw(st.integers(0, len(x) - 1))
    fast = lorentz_grid(x, m_max).as_array()
    np.testing.assert_allclose(fast, naive_means(x, m_max), atol=1e-9, equal_nan=True)


def test_grid_cell_and_range():
    g = lorentz_grid(np.arange(10.0), 3)
    assert g(2, 4) == pytest.approx(5.0)
    with pytest.raises(SizeError):
        g(3, 7)
    with pytest.raises(SizeError):
        lorentz_grid(np.ones(4), 4)


def test_alternating_limit_is_zero():
    # (-1)^k has Lorentz means within 1/(m+1) of zero
    x = make_generator("alternating", 4000)
    est = estimate_almost_limit(x, 1000, 1e-3)
    assert abs(est.value) <= 1.0 / 1001
    assert est.final_spread == pytest.approx(2.0 / 1001)


def test_zero_one_limit_is_half():
    x = make_generator("zero_one", 4000)
    est = estimate_almost_limit(x, 1000, 1e-3)
    assert est.verdict is AlmostVerdict.CONVERGENT
    assert est.value == pytest.approx(0.5)
    assert est.final_spread == pytest.approx(1.0 / 1001)


def test_degenerate_range_is_inconclusive():
    est = estimate_almost_limit(np.ones(10), 5, 1e-3)
    assert est.verdict is AlmostVerdict.INCONCLUSIVE


def test_miller_orhan_block_ledger():
    assert miller_orhan_blocks(20) == [(0, 1), (1, 1), (0, 100), (1, 10)]
    assert miller_orhan_blocks(5, ones=10) == [(0, 1), (1, 10)]
    with pytest.raises(DomainError):
        miller_orhan_blocks(5, zeros=0)


def test_miller_orhan_default_lengths_are_too_sparse_at_this_size():
    # with unit initial blocks the ones have length 100 around k = 10^4, so the
    # spread at m = 2000 is only about 0.05; the witness needs longer 1-blocks
    x = make_generator("miller_orhan", 20000)
    assert spread_at(x, 2000) == pytest.approx(0.05, abs=1e-3)
    longer = make_generator("miller_orhan", 20000, ones=10)
    assert spread_at(longer, 2000) >= 0.1


def test_miller_orhan_not_convergent():
    x = make_generator("miller_orhan", 20000, ones=10)
    est = estimate_almost_limit(x, 2000, 1e-2)
    assert est.verdict is AlmostVerdict.NOT_CONVERGENT


def test_d_sequence_grows_like_power():
    d = d_sequence(0.5, 4096)
    ratio = d[4095] / d[1023]
    assert ratio == pytest.approx(2.0, rel=0.02)


def test_envelopes_match_rows():
    rng = np.random.default_rng(5)
    cols = rng.standard_normal((50, 3))
    hi, lo = envelopes(cols, 7)
    for j in range(3):
        row = lorentz_grid(cols[:, j], 7).row(7)
        assert hi[j] == pytest.approx(row.max()) and lo[j] == pytest.approx(row.min())


def test_generators():
    np.testing.assert_array_equal(make_generator("alternating", 4).values, [1, -1, 1, -1])
    np.testing.assert_array_equal(make_generator("constant", 3, c=2.5).values, [2.5] * 3)
    np.testing.assert_array_equal(make_generator("blocks", 5, lengths=[2, 1], values=[7, 0]).values,
                                  [7, 7, 0, 7, 7])
    np.testing.assert_allclose(make_generator("harmonic", 3).values, [1, 0.5, 1 / 3])
    with pytest.raises(NameLookupError):
        make_generator("fibonacci", 3)
    with pytest.raises(DomainError):
        make_generator("d_sequence", 3)
    with pytest.raises(SizeError):
        make_generator("constant", 0)
