import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from secrecy_outage.channel import (
    GammaSnr,
    SystemConfig,
    make_rng,
    mixture_cdf,
    sample_channel,
    sample_channel_block,
    snr_cdf,
    snr_cdf_finite_sum,
    snr_pdf,
)


def test_config_derived_quantities(base_cfg):
    assert base_cfg.rho == 2.0
    assert base_cfg.a_d == pytest.approx(5.0)
    assert base_cfg.a_e == pytest.approx(2.0)


@pytest.mark.parametrize(
    "field,value",
    [
        ("K", 0),
        ("K", 1.5),
        ("zeta", -0.1),
        ("zeta", 1.1),
        ("r_th", -1.0),
        ("snr", 0.0),
        ("snr", -3.0),
        ("M", 0),
        ("N", 0),
        ("a", 0.0),
        ("b", -0.2),
    ],
)
def test_config_rejects_bad_values(field, value):
    kwargs = dict(K=2, zeta=0.9, r_th=1.0, snr=10.0, M=2, N=2, a=0.5, b=0.5)
    kwargs[field] = value
    with pytest.raises(ValueError):
        SystemConfig(**kwargs)


def test_config_allows_zero_rate_threshold():
    cfg = SystemConfig(K=1, zeta=0.9, r_th=0.0, snr=10.0, M=2, N=2, a=0.5, b=0.5)
    assert cfg.rho == 1.0


def test_gamma_snr_validation():
    with pytest.raises(ValueError):
        GammaSnr(shape=0, scale=1.0)
    with pytest.raises(ValueError):
        GammaSnr(shape=2, scale=0.0)
    assert GammaSnr(shape=3, scale=2.0).mean == pytest.approx(6.0)


def test_pdf_normalizes():
    dist = GammaSnr(shape=4, scale=2.5)
    total, _ = integrate.quad(lambda x: snr_pdf(dist, x), 0.0, np.inf)
    assert total == pytest.approx(1.0, abs=1e-9)


def test_pdf_at_origin():
    assert snr_pdf(GammaSnr(shape=1, scale=2.0), 0.0) == pytest.approx(0.5)
    assert snr_pdf(GammaSnr(shape=3, scale=2.0), 0.0) == 0.0


def test_pdf_rejects_negative():
    with pytest.raises(ValueError):
        snr_pdf(GammaSnr(shape=2, scale=1.0), -0.5)


def test_cdf_endpoints():
    dist = GammaSnr(shape=3, scale=1.5)
    assert snr_cdf(dist, 0.0) == 0.0
    assert snr_cdf(dist, 1e9) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    shape=st.integers(min_value=1, max_value=10),
    scale=st.floats(min_value=1e-3, max_value=1e4),
    x=st.floats(min_value=0.0, max_value=1e5),
)
def test_cdf_forms_agree(shape, scale, x):
    # the finite-sum form used by the closed-form expressions must match the
    # regularized incomplete gamma everywhere
    dist = GammaSnr(shape=shape, scale=scale)
    assert snr_cdf_finite_sum(dist, x) == pytest.approx(snr_cdf(dist, x), abs=1e-12)


def test_cdf_array_shapes():
    dist = GammaSnr(shape=2, scale=1.0)
    xs = np.linspace(0.0, 5.0, 7)
    out = snr_cdf(dist, xs)
    assert out.shape == xs.shape
    assert np.all(np.diff(out) >= 0.0)


def test_mixture_cdf_floor_and_body():
    dist = GammaSnr(shape=2, scale=1.0)
    assert mixture_cdf(dist, 0.7, 0.0) == pytest.approx(0.3)
    assert mixture_cdf(dist, 0.7, 1e9) == pytest.approx(1.0, abs=1e-12)
    assert mixture_cdf(dist, 1.0, 2.0) == pytest.approx(snr_cdf(dist, 2.0))
    with pytest.raises(ValueError):
        mixture_cdf(dist, 1.2, 1.0)


def test_make_rng_streams_are_deterministic_and_distinct():
    a1 = make_rng(7, 0).standard_normal(4)
    a2 = make_rng(7, 0).standard_normal(4)
    b = make_rng(7, 1).standard_normal(4)
    assert np.array_equal(a1, a2)
    assert not np.array_equal(a1, b)


def test_sample_block_shapes_and_order(base_cfg):
    rng = make_rng(0, 0)
    gamma_d, gamma_e, active = sample_channel_block(base_cfg, rng, 5)
    assert gamma_d.shape == (5, base_cfg.K)
    assert gamma_e.shape == (5, base_cfg.K)
    assert active.shape == (5, base_cfg.K)
    assert active.dtype == np.bool_
    assert np.all(gamma_d > 0.0) and np.all(gamma_e > 0.0)
    # contract: draw order is destination, eavesdropper, backhaul, so a
    # fresh generator in the same state reproduces the block piecewise
    rng2 = make_rng(0, 0)
    d2 = base_cfg.a_d * rng2.standard_exponential((5, base_cfg.K, base_cfg.M)).sum(axis=2)
    e2 = base_cfg.a_e * rng2.standard_exponential((5, base_cfg.K, base_cfg.N)).sum(axis=2)
    act2 = rng2.random((5, base_cfg.K)) < base_cfg.zeta
    assert np.array_equal(gamma_d, d2)
    assert np.array_equal(gamma_e, e2)
    assert np.array_equal(active, act2)


def test_sample_block_moments(base_cfg):
    rng = make_rng(3, 0)
    gamma_d, gamma_e, active = sample_channel_block(base_cfg, rng, 200_000)
    mean_d = base_cfg.M * base_cfg.a_d
    mean_e = base_cfg.N * base_cfg.a_e
    assert gamma_d.mean() == pytest.approx(mean_d, rel=0.01)
    assert gamma_e.mean() == pytest.approx(mean_e, rel=0.01)
    assert gamma_d.var() == pytest.approx(base_cfg.M * base_cfg.a_d**2, rel=0.03)
    assert active.mean() == pytest.approx(base_cfg.zeta, abs=0.005)


def test_sample_channel_single_draw(base_cfg):
    sample = sample_channel(base_cfg, make_rng(1, 0))
    assert sample.gamma_d.shape == (base_cfg.K,)
    assert sample.gamma_e.shape == (base_cfg.K,)
    assert sample.backhaul.shape == (base_cfg.K,)


def test_zeta_edge_sampling():
    cfg = SystemConfig(K=3, zeta=0.0, r_th=1.0, snr=10.0, M=2, N=2, a=0.5, b=0.5)
    _, _, active = sample_channel_block(cfg, make_rng(0, 0), 100)
    assert not active.any()
    cfg_on = SystemConfig(K=3, zeta=1.0, r_th=1.0, snr=10.0, M=2, N=2, a=0.5, b=0.5)
    _, _, active_on = sample_channel_block(cfg_on, make_rng(0, 0), 100)
    assert active_on.all()
