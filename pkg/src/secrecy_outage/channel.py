"""System model: received-SNR laws and backhaul gating.

Each of the K single-antenna transmitters reaches the destination over an
M-path Rayleigh faded link.  With single-carrier cyclic-prefix reception the
post-processing SNR is proportional to the total path energy, so it follows
a Gamma law with integer shape M and scale a * snr; the eavesdropper sees
the same structure with N paths and scale b * snr.  Backhaul links are
independent Bernoulli(zeta): an inactive link silences its transmitter,
which manifests as a point mass at zero SNR.  Distribution helpers here
accept scalars or numpy arrays in the evaluation point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import regularized_lower_gamma

__all__ = [
    "ChannelSample",
    "GammaSnr",
    "SystemConfig",
    "make_rng",
    "mixture_cdf",
    "sample_channel",
    "sample_channel_block",
    "snr_cdf",
    "snr_cdf_finite_sum",
    "snr_pdf",
]


@dataclass(frozen=True)
class SystemConfig:
    """Operating point of the network.

    ``snr`` is the linear transmit-power to noise-power ratio; decibel
    conversion belongs to front ends.  The secrecy threshold ``r_th`` is in
    bits per channel use.  ``rho``, ``a_d`` and ``a_e`` are recomputed on
    access so they can never go stale.
    """

    K: int
    zeta: float
    r_th: float
    snr: float
    M: int
    N: int
    a: float
    b: float

    def __post_init__(self):
        if not isinstance(self.K, int) or self.K < 1:
            raise ValueError(f"K must be a positive integer, got {self.K!r}")
        if not 0.0 <= self.zeta <= 1.0:
            raise ValueError(f"zeta must lie in [0, 1], got {self.zeta!r}")
        if self.r_th < 0.0:
            raise ValueError(f"r_th must be >= 0, got {self.r_th!r}")
        if not self.snr > 0.0:
            raise ValueError(f"snr must be > 0 on the linear scale, got {self.snr!r}")
        if not isinstance(self.M, int) or self.M < 1:
            raise ValueError(f"M must be a positive integer, got {self.M!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if not self.a > 0.0 or not self.b > 0.0:
            raise ValueError(f"path gain factors a, b must be > 0, got a={self.a!r} b={self.b!r}")

    @property
    def rho(self) -> float:
        """Outage ratio threshold 2**r_th."""
        return 2.0 ** self.r_th

    @property
    def a_d(self) -> float:
        """Destination-link SNR scale a * snr."""
        return self.a * self.snr

    @property
    def a_e(self) -> float:
        """Eavesdropper-link SNR scale b * snr."""
        return self.b * self.snr


@dataclass(frozen=True)
class GammaSnr:
    """Received-SNR law: Gamma with integer shape (path count) and linear scale."""

    shape: int
    scale: float

    def __post_init__(self):
        if not isinstance(self.shape, int) or self.shape < 1:
            raise ValueError(f"shape must be a positive integer, got {self.shape!r}")
        if not self.scale > 0.0:
            raise ValueError(f"scale must be > 0, got {self.scale!r}")

    @property
    def mean(self) -> float:
        return self.shape * self.scale


def snr_pdf(dist: GammaSnr, x):
    """Density of the Gamma SNR law; assembled in log space to avoid inf*0."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ValueError("snr_pdf requires x >= 0")
    k, theta = dist.shape, dist.scale
    with np.errstate(divide="ignore", invalid="ignore"):
        log_pdf = (k - 1) * np.log(x_arr) - x_arr / theta - math.lgamma(k) - k * math.log(theta)
        out = np.exp(log_pdf)
    at_zero = 1.0 / theta if k == 1 else 0.0
    out = np.where(x_arr == 0.0, at_zero, out)
    return float(out) if np.ndim(x) == 0 else out


def snr_cdf(dist: GammaSnr, x):
    """CDF of the Gamma SNR law via the regularized lower incomplete gamma."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ValueError("snr_cdf requires x >= 0")
    out = regularized_lower_gamma(dist.shape, x_arr / dist.scale)
    return float(out) if np.ndim(x) == 0 else out


def snr_cdf_finite_sum(dist: GammaSnr, x):
    """Same CDF through the finite sum 1 - e^-u sum_{m<shape} u^m / m!.

    Valid because the shape is a positive integer.  This is the algebraic
    form the closed-form outage expressions are built from; it must agree
    with ``snr_cdf`` to within 1e-12 absolute everywhere.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ValueError("snr_cdf_finite_sum requires x >= 0")
    u = x_arr / dist.scale
    with np.errstate(divide="ignore"):
        log_u = np.log(u)
    partial = np.exp(-u)
    for m in range(1, dist.shape):
        partial = partial + np.exp(-u + m * log_u - math.lgamma(m + 1))
    out = np.clip(1.0 - partial, 0.0, 1.0)
    return float(out) if np.ndim(x) == 0 else out


def mixture_cdf(dist: GammaSnr, zeta: float, x):
    """CDF of the backhaul-gated SNR: point mass 1 - zeta at zero, Gamma body.

    Equals (1 - zeta) + zeta * snr_cdf(dist, x) for x >= 0.
    """
    if not 0.0 <= zeta <= 1.0:
        raise ValueError(f"zeta must lie in [0, 1], got {zeta!r}")
    return (1.0 - zeta) + zeta * snr_cdf(dist, x)


@dataclass(frozen=True)
class ChannelSample:
    """One joint draw: per-transmitter SNRs and backhaul activity flags."""

    gamma_d: np.ndarray
    gamma_e: np.ndarray
    backhaul: np.ndarray

    def __post_init__(self):
        if not (len(self.gamma_d) == len(self.gamma_e) == len(self.backhaul)):
            raise ValueError("gamma_d, gamma_e and backhaul must have one entry per transmitter")


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Reproducible substream generator: (seed, stream) fully determines output."""
    return np.random.default_rng([int(seed), int(stream)])


def sample_channel_block(cfg: SystemConfig, rng: np.random.Generator, n: int):
    """Draw ``n`` independent channel states as (gamma_d, gamma_e, backhaul) arrays.

    The draw order is a contract (destination path energies, then
    eavesdropper path energies, then backhaul uniforms) so that a stream
    position identifies a sample.  Path energy sums of unit exponentials
    give the exact Gamma law for integer shapes.
    """
    gamma_d = cfg.a_d * rng.standard_exponential((n, cfg.K, cfg.M)).sum(axis=2)
    gamma_e = cfg.a_e * rng.standard_exponential((n, cfg.K, cfg.N)).sum(axis=2)
    backhaul = rng.random((n, cfg.K)) < cfg.zeta
    return gamma_d, gamma_e, backhaul


def sample_channel(cfg: SystemConfig, rng: np.random.Generator) -> ChannelSample:
    """Draw a single joint channel state."""
    gamma_d, gamma_e, backhaul = sample_channel_block(cfg, rng, 1)
    return ChannelSample(gamma_d=gamma_d[0], gamma_e=gamma_e[0], backhaul=backhaul[0])
