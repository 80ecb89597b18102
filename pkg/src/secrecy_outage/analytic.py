"""Closed-form and high-SNR secrecy outage probabilities.

Secrecy outage means the instantaneous ratio (1 + gamma_d) / (1 + gamma_e)
of the selected link falls below rho = 2**r_th.  Four cases are covered,
from the two selection rules (``ss`` picks the strongest destination SNR,
``os`` picks the best secrecy ratio) crossed with the two backhaul
knowledge scenarios (``ku`` selects blindly across all K transmitters,
``ka`` selects only within the active set).

The expressions expand a K-fold CDF product binomially, turn each CDF power
into a multinomial sum over weak compositions, and integrate term by term
against the eavesdropper density.  Every per-term product is assembled in
log space and exponentiated once; only the top-level alternating sum over
the binomial index runs in linear space, with Neumaier compensation and a
loss-of-significance guard.  Results outside [0, 1] by more than a 1e-9
round-off band raise ``NumericalIntegrityError`` rather than being clamped,
so formula bugs cannot hide behind clamping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import chain

import numpy as np
from scipy.special import gammaln

from .channel import SystemConfig
from .numerics import compensated_sum, enumerate_weak_compositions, significance_lost

__all__ = [
    "NumericalIntegrityError",
    "Scenario",
    "Scheme",
    "SopQuery",
    "SopValue",
    "analytic_sop",
    "asymptotic_os_expanded",
    "asymptotic_single",
    "asymptotic_sop",
    "sop_os_ka",
    "sop_os_ku",
    "sop_single",
    "sop_ss_ka",
    "sop_ss_ku",
]

# Round-off tolerance band for the integrity check; values further outside
# [0, 1] than this indicate a formula or assembly bug, not round-off.
INTEGRITY_BAND = 1e-9

METHOD_ANALYTIC = "analytic"
METHOD_ASYMPTOTIC = "asymptotic"


class Scheme(str, Enum):
    """Transmitter selection rule."""

    SS = "ss"  # strongest destination SNR
    OS = "os"  # best secrecy ratio


class Scenario(str, Enum):
    """Backhaul knowledge available to the selector."""

    KU = "ku"  # backhaul states unknown, selection over all K
    KA = "ka"  # selection restricted to the active set


class NumericalIntegrityError(ArithmeticError):
    """A probability came out of assembly too far outside [0, 1]."""


@dataclass(frozen=True)
class SopQuery:
    """One outage-probability question: operating point plus case selection."""

    cfg: SystemConfig
    scheme: Scheme
    scenario: Scenario


@dataclass(frozen=True)
class SopValue:
    """Evaluated outage probability.

    ``value`` is clamped to [0, 1]; ``raw_value`` keeps the pre-clamp number
    for diagnostics.  ``significance_flag`` is set when the alternating-sum
    cancellation guard fired, in which case ``value`` is bounded but not
    trustworthy to full precision.
    """

    value: float
    method: str
    significance_flag: bool
    raw_value: float


def _finalize(raw: float, flag: bool, method: str) -> SopValue:
    if not flag:
        # NaN fails this check too and is reported rather than clamped.
        if not (-INTEGRITY_BAND <= raw <= 1.0 + INTEGRITY_BAND):
            raise NumericalIntegrityError(
                f"{method} outage probability {raw!r} leaves [0, 1] by more than {INTEGRITY_BAND}"
            )
    return SopValue(
        value=min(max(raw, 0.0), 1.0),
        method=method,
        significance_flag=flag,
        raw_value=raw,
    )


@lru_cache(maxsize=None)
def _composition_arrays(k: int, num_parts: int):
    """Cached per-(k, M) composition data as flat arrays.

    Returns (log multinomial coefficients, log of prod (1/m!)^{parts_m},
    beta1 powers, parts matrix).
    """
    log_fact = [math.lgamma(m + 1) for m in range(num_parts)]
    log_coeff = []
    log_inv_fact = []
    beta1 = []
    parts_rows = []
    for comp in enumerate_weak_compositions(k, num_parts):
        log_coeff.append(math.log(comp.multinomial_coeff))
        log_inv_fact.append(-sum(p * log_fact[m] for m, p in enumerate(comp.parts) if p))
        beta1.append(comp.beta1)
        parts_rows.append(comp.parts)
    return (
        np.array(log_coeff),
        np.array(log_inv_fact),
        np.array(beta1, dtype=np.intp),
        np.array(parts_rows, dtype=np.intp),
    )


@lru_cache(maxsize=None)
def _log_binomial_table(n: int) -> np.ndarray:
    """ln C(B, q) for 0 <= B, q <= n; -inf where q > B.  Exact integer binomials."""
    table = np.full((n + 1, n + 1), -np.inf)
    for b_val in range(n + 1):
        for q in range(b_val + 1):
            table[b_val, q] = math.log(math.comb(b_val, q))
    return table


def _composition_q_sum(k, M, N, a_d, a_e, rho, log_pref):
    """Positive magnitude of one alternating term of the selection series.

    Sums, over the weak compositions of k into M parts and the inner
    boundary-expansion index q, the exponentials of fully assembled
    log-space terms.
    """
    log_coeff, log_inv_fact, beta1, _ = _composition_arrays(k, M)
    b_max = int(beta1.max())
    log_denom = math.log(k * rho / a_d + 1.0 / a_e)
    q = np.arange(b_max + 1)
    log_gamma_nq = gammaln(N + q)
    log_binom = _log_binomial_table(b_max)[beta1]
    base = (log_pref + log_coeff + log_inv_fact - beta1 * math.log(a_d))[:, None]
    if rho > 1.0:
        log_rm1 = math.log(rho - 1.0)
        log_terms = (
            base
            + log_binom
            + (beta1[:, None] - q[None, :]) * log_rm1
            + q * math.log(rho)
            + log_gamma_nq
            - (N + q) * log_denom
        )
    else:
        # rho == 1: the outage boundary is lambda = y, so only the q == beta1
        # power survives (0**0 = 1 convention at r_th = 0).
        diag = base + log_binom + q * math.log(rho) + log_gamma_nq - (N + q) * log_denom
        log_terms = np.where(q[None, :] == beta1[:, None], diag, -np.inf)
    return float(np.exp(log_terms).sum())


def _selection_series(K, M, N, a_d, a_e, rho, weight):
    """1 + sum_{k=1..K} C(K,k) (-weight)^k E[...]: the K-fold product expansion.

    ``weight`` is 1 for the blind-selection series and zeta when the
    backhaul mixture sits inside each factor.  Returns (raw, flag).
    """
    if weight == 0.0:
        return 1.0, False
    log_weight = math.log(weight)
    terms = [1.0]
    for k in range(1, K + 1):
        log_pref = (
            math.log(math.comb(K, k))
            + k * log_weight
            - k * (rho - 1.0) / a_d
            - math.lgamma(N)
            - N * math.log(a_e)
        )
        magnitude = _composition_q_sum(k, M, N, a_d, a_e, rho, log_pref)
        terms.append(-magnitude if k % 2 else magnitude)
    total, largest = compensated_sum(terms)
    return total, significance_lost(total, largest)


def _single_outage(M, N, a_d, a_e, rho):
    """Outage probability of one transmitter with active backhaul.

    Expectation of the destination CDF at the outage boundary, reduced to a
    double finite sum; returns (raw, flag).
    """
    log_denom = math.log(rho / a_d + 1.0 / a_e)
    log_pref = -(rho - 1.0) / a_d - math.lgamma(N) - N * math.log(a_e)
    neg_terms = []
    for m in range(M):
        base = log_pref - math.lgamma(m + 1) - m * math.log(a_d)
        for q in range(m + 1):
            if rho == 1.0 and q != m:
                continue  # boundary power (rho-1)^(m-q) vanishes
            log_term = base + math.log(math.comb(m, q))
            if q < m:
                log_term += (m - q) * math.log(rho - 1.0)
            log_term += q * math.log(rho) + math.lgamma(N + q) - (N + q) * log_denom
            neg_terms.append(-math.exp(log_term))
    total, largest = compensated_sum(chain([1.0], neg_terms))
    return total, significance_lost(total, largest)


def _single_floor(M, N, a, b, rho):
    """High-SNR limit of ``_single_outage``; depends only on a, b, rho, M, N."""
    log_rba = math.log(rho * b + a)
    log_pref = N * math.log(a) - math.lgamma(N)
    neg_terms = []
    for m in range(M):
        log_term = (
            log_pref
            - math.lgamma(m + 1)
            + m * math.log(rho * b)
            + math.lgamma(N + m)
            - (N + m) * log_rba
        )
        neg_terms.append(-math.exp(log_term))
    total, largest = compensated_sum(chain([1.0], neg_terms))
    return total, significance_lost(total, largest)


def _selection_floor_series(K, M, N, a, b, rho, weight):
    """High-SNR limit of ``_selection_series``; returns (raw, flag)."""
    if weight == 0.0:
        return 1.0, False
    log_weight = math.log(weight)
    log_rb = math.log(rho * b)
    terms = [1.0]
    for k in range(1, K + 1):
        log_coeff, log_inv_fact, beta1, _ = _composition_arrays(k, M)
        log_terms = (
            math.log(math.comb(K, k))
            + k * log_weight
            + N * math.log(a)
            - math.lgamma(N)
            + log_coeff
            + log_inv_fact
            + beta1 * log_rb
            + gammaln(N + beta1)
            - (N + beta1) * math.log(k * rho * b + a)
        )
        magnitude = float(np.exp(log_terms).sum())
        terms.append(-magnitude if k % 2 else magnitude)
    total, largest = compensated_sum(terms)
    return total, significance_lost(total, largest)


# ---------------------------------------------------------------------------
# public closed forms
# ---------------------------------------------------------------------------

def sop_single(cfg: SystemConfig) -> float:
    """Exact outage probability of a single backhaul-active transmitter."""
    raw, flag = _single_outage(cfg.M, cfg.N, cfg.a_d, cfg.a_e, cfg.rho)
    return _finalize(raw, flag, METHOD_ANALYTIC).value


def sop_ss_ku(cfg: SystemConfig) -> SopValue:
    """Strongest-destination selection, backhaul states unknown.

    The selected transmitter may turn out silenced, so the result is the
    mixture (1 - zeta) + zeta * (outage of the max-SNR link).
    """
    if cfg.zeta == 0.0:
        return _finalize(1.0, False, METHOD_ANALYTIC)
    raw_series, flag = _selection_series(
        cfg.K, cfg.M, cfg.N, cfg.a_d, cfg.a_e, cfg.rho, weight=1.0
    )
    raw = (1.0 - cfg.zeta) + cfg.zeta * raw_series
    return _finalize(raw, flag, METHOD_ANALYTIC)


def sop_ss_ka(cfg: SystemConfig) -> SopValue:
    """Strongest-destination selection within the active set.

    The backhaul mixture sits inside each factor of the K-fold CDF product,
    so the series carries weight zeta per factor and no outer floor term;
    an empty active set is covered by the point mass at zero.
    """
    raw, flag = _selection_series(
        cfg.K, cfg.M, cfg.N, cfg.a_d, cfg.a_e, cfg.rho, weight=cfg.zeta
    )
    return _finalize(raw, flag, METHOD_ANALYTIC)


def sop_os_ku(cfg: SystemConfig) -> SopValue:
    """Best-secrecy-ratio selection, backhaul states unknown.

    The per-transmitter secrecy outcomes are independent, so the blind pick
    fails only when all K fail: (1 - zeta) + zeta * sop_single**K.
    """
    if cfg.zeta == 0.0:
        return _finalize(1.0, False, METHOD_ANALYTIC)
    raw_single, flag = _single_outage(cfg.M, cfg.N, cfg.a_d, cfg.a_e, cfg.rho)
    single = _finalize(raw_single, flag, METHOD_ANALYTIC).value
    raw = (1.0 - cfg.zeta) + cfg.zeta * single ** cfg.K
    return _finalize(raw, flag, METHOD_ANALYTIC)


def sop_os_ka(cfg: SystemConfig) -> SopValue:
    """Best-secrecy-ratio selection within the active set.

    Each transmitter independently either is silenced or fails secrecy with
    probability sop_single, giving (1 - zeta * (1 - sop_single))**K; the
    all-silenced corner contributes the (1 - zeta)**K floor.
    """
    raw_single, flag = _single_outage(cfg.M, cfg.N, cfg.a_d, cfg.a_e, cfg.rho)
    single = _finalize(raw_single, flag, METHOD_ANALYTIC).value
    raw = (1.0 - cfg.zeta * (1.0 - single)) ** cfg.K
    return _finalize(raw, flag, METHOD_ANALYTIC)


_CASE_TABLE = {
    (Scheme.SS, Scenario.KU): sop_ss_ku,
    (Scheme.SS, Scenario.KA): sop_ss_ka,
    (Scheme.OS, Scenario.KU): sop_os_ku,
    (Scheme.OS, Scenario.KA): sop_os_ka,
}


def analytic_sop(query: SopQuery) -> SopValue:
    """Dispatch a query to the matching closed form."""
    return _CASE_TABLE[(Scheme(query.scheme), Scenario(query.scenario))](query.cfg)


# ---------------------------------------------------------------------------
# high-SNR floors
# ---------------------------------------------------------------------------

def asymptotic_single(cfg: SystemConfig) -> float:
    """High-SNR outage floor of a single backhaul-active transmitter.

    Independent of snr: both link scales grow together, leaving the ratio
    law a/b and the threshold rho in control.
    """
    raw, flag = _single_floor(cfg.M, cfg.N, cfg.a, cfg.b, cfg.rho)
    return _finalize(raw, flag, METHOD_ASYMPTOTIC).value


def asymptotic_sop(query: SopQuery) -> SopValue:
    """High-SNR outage floor for any of the four cases."""
    cfg = query.cfg
    scheme, scenario = Scheme(query.scheme), Scenario(query.scenario)
    if scheme is Scheme.SS:
        if scenario is Scenario.KU:
            if cfg.zeta == 0.0:
                return _finalize(1.0, False, METHOD_ASYMPTOTIC)
            raw_series, flag = _selection_floor_series(
                cfg.K, cfg.M, cfg.N, cfg.a, cfg.b, cfg.rho, weight=1.0
            )
            raw = (1.0 - cfg.zeta) + cfg.zeta * raw_series
        else:
            raw, flag = _selection_floor_series(
                cfg.K, cfg.M, cfg.N, cfg.a, cfg.b, cfg.rho, weight=cfg.zeta
            )
    else:
        raw_single, flag = _single_floor(cfg.M, cfg.N, cfg.a, cfg.b, cfg.rho)
        single = _finalize(raw_single, flag, METHOD_ASYMPTOTIC).value
        if scenario is Scenario.KU:
            raw = (1.0 - cfg.zeta) + cfg.zeta * single ** cfg.K
        else:
            raw = (1.0 - cfg.zeta * (1.0 - single)) ** cfg.K
    return _finalize(raw, flag, METHOD_ASYMPTOTIC)


def asymptotic_os_expanded(
    cfg: SystemConfig, scenario: Scenario, include_zero_term: bool = False
) -> float:
    """Multinomial-expansion route to the best-ratio selection floors.

    Cross-check only: expands (single-transmitter floor)**K through weak
    compositions instead of powering ``asymptotic_single``; the two must
    agree to round-off.  ``include_zero_term`` additionally counts the k = 0
    expansion term inside the correction sum even though the leading offset
    already accounts for it; the regression tests pin down that this double
    count shifts the result by exactly the mixture weight and is therefore
    not a valid reading of the expansion.
    """
    scenario = Scenario(scenario)
    rho, a, b, M, N, K = cfg.rho, cfg.a, cfg.b, cfg.M, cfg.N, cfg.K
    weight = 1.0 if scenario is Scenario.KU else cfg.zeta
    per_path = np.array(
        [gammaln(N + m) - (N + m) * math.log(rho * b + a) for m in range(M)]
    )
    log_single_pref = N * math.log(a) - math.lgamma(N)

    def expansion_term(k: int) -> float:
        log_coeff, log_inv_fact, beta1, parts = _composition_arrays(k, M)
        log_terms = (
            k * log_single_pref
            + log_coeff
            + log_inv_fact
            + beta1 * math.log(rho * b)
            + parts @ per_path
        )
        return float(np.exp(log_terms).sum())

    # full binomial sum, k = 0 term included: this IS the powered single floor
    power_sum = sum(
        math.comb(K, k) * (-weight) ** k * expansion_term(k) for k in range(K + 1)
    )
    if scenario is Scenario.KU:
        mixed = cfg.zeta * power_sum
        return 1.0 + mixed if include_zero_term else (1.0 - cfg.zeta) + mixed
    return 1.0 + power_sum if include_zero_term else power_sum
