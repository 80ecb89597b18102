import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secrecy_outage.numerics import (
    CompositionCapError,
    compensated_sum,
    enumerate_weak_compositions,
    log_gamma,
    regularized_lower_gamma,
    significance_lost,
)


def test_log_gamma_integer_point():
    # Gamma(5) = 24
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), abs=1e-15)


def test_log_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_gamma(0.0)
    with pytest.raises(ValueError):
        log_gamma(-2.5)


def test_regularized_lower_gamma_integer_shape_series():
    # for integer shape the regularized function has the closed finite form
    # 1 - exp(-x) * sum_{m<s} x^m / m!
    for s in (1, 2, 6):
        for x in (0.0, 0.5, 6.0, 30.0):
            expected = 1.0 - math.exp(-x) * sum(x**m / math.factorial(m) for m in range(s))
            assert regularized_lower_gamma(s, x) == pytest.approx(expected, abs=1e-12)


def test_regularized_lower_gamma_frozen_value():
    # independently computed with mpmath.gammainc(6, 0, 6) / gamma(6)
    assert regularized_lower_gamma(6, 6.0) == pytest.approx(0.5543203586353888, abs=1e-14)


def test_regularized_lower_gamma_domain():
    with pytest.raises(ValueError):
        regularized_lower_gamma(0.0, 1.0)
    with pytest.raises(ValueError):
        regularized_lower_gamma(2.0, -1.0)


def test_regularized_lower_gamma_array_roundtrip():
    import numpy as np

    out = regularized_lower_gamma(3, np.array([0.0, 1.0, 10.0]))
    assert out.shape == (3,)
    assert out[0] == 0.0
    assert 0.0 < out[1] < out[2] <= 1.0
    assert isinstance(regularized_lower_gamma(3, 1.0), float)


def test_composition_enumeration_order_and_count():
    comps = list(enumerate_weak_compositions(3, 3))
    parts = [c.parts for c in comps]
    assert parts[0] == (3, 0, 0)
    assert parts[-1] == (0, 0, 3)
    assert parts == sorted(parts, reverse=True)
    assert len(parts) == math.comb(3 + 3 - 1, 3 - 1)
    assert all(sum(p) == 3 for p in parts)
    assert len(set(parts)) == len(parts)


def test_composition_k_zero():
    comps = list(enumerate_weak_compositions(0, 4))
    assert len(comps) == 1
    assert comps[0].parts == (0, 0, 0, 0)
    assert comps[0].multinomial_coeff == 1
    assert comps[0].beta1 == 0


def test_composition_single_part():
    comps = list(enumerate_weak_compositions(5, 1))
    assert [c.parts for c in comps] == [(5,)]


def test_composition_multinomial_total():
    # summing the bare multinomial coefficients over all weak compositions
    # of k into M parts gives M**k
    for k, m in [(2, 3), (4, 2), (5, 4)]:
        total = sum(c.multinomial_coeff for c in enumerate_weak_compositions(k, m))
        assert total == m**k


def test_composition_cap_is_eager_and_named():
    with pytest.raises(CompositionCapError) as err:
        enumerate_weak_compositions(40, 10, cap=1000)
    assert err.value.k == 40
    assert err.value.num_parts == 10
    assert err.value.count == math.comb(49, 9)
    assert "k=40" in str(err.value)
    assert "num_parts=10" in str(err.value)


def test_composition_invalid_arguments():
    with pytest.raises(ValueError):
        enumerate_weak_compositions(-1, 3)
    with pytest.raises(ValueError):
        enumerate_weak_compositions(2, 0)


@settings(max_examples=60, deadline=None)
@given(
    k=st.integers(min_value=0, max_value=6),
    num_parts=st.integers(min_value=1, max_value=6),
    x=st.floats(min_value=0.05, max_value=3.0),
)
def test_composition_expansion_identity(k, num_parts, x):
    # the whole point of the enumeration: it expands a truncated-exponential
    # power term by term
    total = sum(
        c.multinomial_coeff * c.inv_factorial_product * x**c.beta1
        for c in enumerate_weak_compositions(k, num_parts)
    )
    direct = sum(x**m / math.factorial(m) for m in range(num_parts)) ** k
    assert total == pytest.approx(direct, rel=1e-10)


def test_compensated_sum_beats_naive():
    terms = [1e16, 1.0, -1e16]
    naive = sum(terms)
    total, largest = compensated_sum(terms)
    assert naive == 0.0
    assert total == 1.0
    assert largest == 1e16


def test_compensated_sum_empty():
    assert compensated_sum([]) == (0.0, 0.0)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.floats(min_value=-1e9, max_value=1e9, allow_nan=False),
        max_size=30,
    )
)
def test_compensated_sum_tracks_fsum(terms):
    total, largest = compensated_sum(terms)
    assert total == pytest.approx(math.fsum(terms), rel=1e-9, abs=1e-9)
    assert largest == (max(abs(t) for t in terms) if terms else 0.0)


def test_significance_lost_threshold():
    assert significance_lost(1e-11, 1.0)
    assert not significance_lost(1e-9, 1.0)
    assert not significance_lost(0.5, 1.0)
    assert not significance_lost(0.0, 0.0)
