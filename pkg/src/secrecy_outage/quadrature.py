"""Direct numerical evaluation of the defining outage integral.

Every outage probability in this package is, underneath, the expectation of
a destination CDF evaluated at the outage boundary lambda(y) = (1 + y) * rho
- 1 over the eavesdropper SNR density.  This module computes that integral
from the distribution functions themselves, with none of the series algebra
used by the closed forms, so the two routes can cross-validate each other.

The half line is mapped to (0, 1) through y = scale_e * t / (1 - t), which
puts the bulk of the eavesdropper mass at moderate t for any SNR.  The
integrator is adaptive interval halving with an embedded higher-order rule
(15-point Kronrod extension of 7-point Gauss): the worst panel by error
estimate is split until the global estimate meets tolerance.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import Scenario, Scheme, SopQuery
from .channel import GammaSnr, mixture_cdf, snr_cdf, snr_pdf

__all__ = [
    "Integrand",
    "QuadratureConvergenceError",
    "adaptive_integral",
    "build_integrand",
    "quadrature_sop",
]

# 15-point Kronrod nodes on [-1, 1] with Kronrod weights and the embedded
# 7-point Gauss weights (zero on Kronrod-only nodes).
_NODES_POS = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
)
_WEIGHTS_K_POS = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WEIGHTS_G_POS = (
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
)

_NODES = np.array([-x for x in _NODES_POS[:-1]] + list(_NODES_POS[::-1]))
_WEIGHTS_K = np.array(list(_WEIGHTS_K_POS[:-1]) + list(_WEIGHTS_K_POS[::-1]))
_WEIGHTS_G = np.array(list(_WEIGHTS_G_POS[:-1]) + list(_WEIGHTS_G_POS[::-1]))


class QuadratureConvergenceError(RuntimeError):
    """Panel budget exhausted before the error estimate met tolerance."""

    def __init__(self, value: float, achieved: float, tol: float):
        self.value = value
        self.achieved = achieved
        self.tol = tol
        super().__init__(
            f"quadrature failed to converge: achieved error estimate {achieved:.3e} "
            f"above tolerance {tol:.3e} (partial value {value!r})"
        )


def _panel(f: Callable, lo: float, hi: float) -> tuple[float, float]:
    """Integrate one panel; return (Kronrod value, error estimate)."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    fx = f(mid + half * _NODES)
    value_k = half * float(fx @ _WEIGHTS_K)
    value_g = half * float(fx @ _WEIGHTS_G)
    diff = abs(value_k - value_g)
    return value_k, (200.0 * diff) ** 1.5 if diff > 0.0 else 0.0


def adaptive_integral(
    f: Callable,
    lo: float = 0.0,
    hi: float = 1.0,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-10,
    initial_subdivisions: int = 8,
    max_panels: int = 4096,
) -> float:
    """Adaptive Gauss-Kronrod integral of a vectorized integrand over [lo, hi].

    The effective tolerance is the looser of ``abs_tol`` and
    ``rel_tol * |integral|``.  Raises ``QuadratureConvergenceError`` with the
    achieved error estimate if ``max_panels`` is reached first.
    """
    if initial_subdivisions < 1:
        raise ValueError("initial_subdivisions must be >= 1")
    width = (hi - lo) / initial_subdivisions
    heap = []
    counter = 0
    total = 0.0
    total_err = 0.0
    for i in range(initial_subdivisions):
        p_lo = lo + i * width
        p_hi = hi if i == initial_subdivisions - 1 else lo + (i + 1) * width
        value, err = _panel(f, p_lo, p_hi)
        heapq.heappush(heap, (-err, counter, p_lo, p_hi, value, err))
        counter += 1
        total += value
        total_err += err
    panels = initial_subdivisions
    while True:
        tol = max(abs_tol, rel_tol * abs(total))
        if total_err <= tol:
            return total
        if panels >= max_panels:
            raise QuadratureConvergenceError(total, total_err, tol)
        _, _, p_lo, p_hi, value, err = heapq.heappop(heap)
        total -= value
        total_err -= err
        mid = 0.5 * (p_lo + p_hi)
        for c_lo, c_hi in ((p_lo, mid), (mid, p_hi)):
            c_value, c_err = _panel(f, c_lo, c_hi)
            heapq.heappush(heap, (-c_err, counter, c_lo, c_hi, c_value, c_err))
            counter += 1
            total += c_value
            total_err += c_err
        panels += 1


@dataclass(frozen=True)
class Integrand:
    """The two distribution callables and threshold defining one outage integral."""

    destination_cdf: Callable
    eavesdropper_pdf: Callable
    rho: float


def build_integrand(query: SopQuery) -> Integrand:
    """Assemble the integrand for one case from raw distribution functions.

    Selection schemes differ only in where the K-fold power sits: the
    strongest-destination rule raises the destination CDF to K inside the
    integral, the best-ratio rule powers the whole integral afterwards.
    """
    cfg = query.cfg
    dest = GammaSnr(cfg.M, cfg.a_d)
    eave = GammaSnr(cfg.N, cfg.a_e)
    scheme, scenario = Scheme(query.scheme), Scenario(query.scenario)

    if scenario is Scenario.KU:
        single_cdf = lambda x: snr_cdf(dest, x)
    else:
        single_cdf = lambda x: mixture_cdf(dest, cfg.zeta, x)
    if scheme is Scheme.SS:
        destination_cdf = lambda x: single_cdf(x) ** cfg.K
    else:
        destination_cdf = single_cdf

    return Integrand(
        destination_cdf=destination_cdf,
        eavesdropper_pdf=lambda y: snr_pdf(eave, y),
        rho=cfg.rho,
    )


def _boundary_expectation(integrand: Integrand, scale_e: float, **quad_kwargs) -> float:
    """Integral of destination_cdf(lambda(y)) * eavesdropper_pdf(y) over y >= 0."""
    rho = integrand.rho

    def transformed(t):
        t = np.asarray(t, dtype=float)
        y = scale_e * t / (1.0 - t)
        boundary = (1.0 + y) * rho - 1.0
        jacobian = scale_e / (1.0 - t) ** 2
        return integrand.destination_cdf(boundary) * integrand.eavesdropper_pdf(y) * jacobian

    return adaptive_integral(transformed, 0.0, 1.0, **quad_kwargs)


def quadrature_sop(query: SopQuery, **quad_kwargs) -> float:
    """Outage probability by direct quadrature of the defining integral."""
    cfg = query.cfg
    scheme, scenario = Scheme(query.scheme), Scenario(query.scenario)
    if scenario is Scenario.KU and cfg.zeta == 0.0:
        return 1.0
    integral = _boundary_expectation(build_integrand(query), cfg.a_e, **quad_kwargs)
    if scheme is Scheme.SS:
        value = (1.0 - cfg.zeta) + cfg.zeta * integral if scenario is Scenario.KU else integral
    else:
        if scenario is Scenario.KU:
            value = (1.0 - cfg.zeta) + cfg.zeta * integral ** cfg.K
        else:
            value = integral ** cfg.K
    return min(max(value, 0.0), 1.0)
