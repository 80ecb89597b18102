"""Cross-validation harness.

Eight checks compare the independent evaluation routes (closed form,
asymptote, quadrature, simulation) and assert the structural properties the
model must satisfy: scheme and scenario orderings, outage floors, multipath
and gain monotonicity, algebraic identities, and bit-level simulation
determinism.  The CLI ``validate`` subcommand runs all of them.

Checks resolve the evaluation functions through this module's globals, so a
test can swap one out (to confirm the harness actually detects a corrupted
formula) without touching the underlying modules.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, replace

from .analytic import (
    Scenario,
    Scheme,
    SopQuery,
    analytic_sop,
    asymptotic_sop,
)
from .channel import GammaSnr, SystemConfig, snr_cdf, snr_cdf_finite_sum
from .montecarlo import McSettings, simulate_sop
from .numerics import enumerate_weak_compositions
from .quadrature import quadrature_sop
from .sweep import db_to_linear

__all__ = [
    "CHECKS",
    "CheckResult",
    "ValidationSettings",
    "run_validation",
]

_CASES = (
    (Scheme.SS, Scenario.KU),
    (Scheme.SS, Scenario.KA),
    (Scheme.OS, Scenario.KU),
    (Scheme.OS, Scenario.KA),
)


@dataclass(frozen=True)
class ValidationSettings:
    """Grid and tolerances for the validation checks."""

    ks: tuple[int, ...] = (1, 2, 5)
    zetas: tuple[float, ...] = (0.9, 0.99, 1.0)
    snr_dbs: tuple[float, ...] = (0.0, 10.0, 20.0, 30.0)
    m_paths: int = 6
    n_paths: int = 4
    gain_d: float = 0.5
    gain_e: float = 0.2
    rate_threshold: float = 1.0

    mc_samples: int = 1_000_000
    seed: int = 0
    confidence: float = 0.99

    analytic_quadrature_tol: float = 1e-8
    mc_tolerance_floor: float = 1e-3
    ordering_slack: float = 1e-12
    strict_margin: float = 1e-12
    floor_slack: float = 1e-12
    asymptotic_rel_tol: float = 1e-4
    asymptotic_snr_db: float = 200.0
    asymptotic_ks: tuple[int, ...] = (1, 2, 3, 5)
    asymptotic_zetas: tuple[float, ...] = (0.9, 0.99)
    identity_tol: float = 1e-12
    multinomial_rel_tol: float = 1e-10
    effect_snr_db: float = 20.0
    determinism_samples: int = 200_001
    determinism_workers: tuple[int, ...] = (1, 2, 4)

    @classmethod
    def smoke(cls) -> "ValidationSettings":
        """Reduced grid for fast test runs; same tolerances."""
        return cls(
            ks=(1, 2),
            zetas=(0.9, 1.0),
            snr_dbs=(0.0, 10.0),
            mc_samples=40_000,
            determinism_samples=70_000,
        )

    def config(self, K: int, zeta: float, snr_db: float) -> SystemConfig:
        return SystemConfig(
            K=K,
            zeta=zeta,
            r_th=self.rate_threshold,
            snr=db_to_linear(snr_db),
            M=self.m_paths,
            N=self.n_paths,
            a=self.gain_d,
            b=self.gain_e,
        )

    def grid_configs(self) -> list[SystemConfig]:
        return [
            self.config(K, zeta, snr_db)
            for K, zeta, snr_db in itertools.product(self.ks, self.zetas, self.snr_dbs)
        ]

    def mc_settings(self) -> McSettings:
        return McSettings(
            n_samples=self.mc_samples, seed=self.seed, confidence=self.confidence
        )


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    duration_s: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.detail} ({self.duration_s:.1f}s)"


def _analytic_grid(settings: ValidationSettings) -> dict[tuple, float]:
    """Closed-form values for every (config, scheme, scenario) grid cell."""
    values = {}
    for cfg in settings.grid_configs():
        for scheme, scenario in _CASES:
            query = SopQuery(cfg=cfg, scheme=scheme, scenario=scenario)
            values[(cfg, scheme, scenario)] = analytic_sop(query).value
    return values


def check_triple_agreement(settings: ValidationSettings) -> CheckResult:
    """Closed form vs quadrature vs simulation on the full grid."""
    mc = settings.mc_settings()
    worst_quad = 0.0
    worst_mc = 0.0
    failures = []
    cells = 0
    for cfg in settings.grid_configs():
        for scheme, scenario in _CASES:
            cells += 1
            query = SopQuery(cfg=cfg, scheme=scheme, scenario=scenario)
            closed = analytic_sop(query).value
            quad = quadrature_sop(query)
            quad_err = abs(closed - quad)
            worst_quad = max(worst_quad, quad_err)
            if quad_err > settings.analytic_quadrature_tol:
                failures.append(
                    f"quad gap {quad_err:.3e} at K={cfg.K} zeta={cfg.zeta} "
                    f"snr={cfg.snr:.4g} {scheme.value}/{scenario.value}"
                )
            estimate = simulate_sop(query, mc)
            allowed = max(3.0 * estimate.ci_half_width, settings.mc_tolerance_floor)
            mc_err = abs(closed - estimate.p_hat)
            worst_mc = max(worst_mc, mc_err / allowed)
            if mc_err > allowed:
                failures.append(
                    f"mc gap {mc_err:.3e} (allowed {allowed:.3e}) at K={cfg.K} "
                    f"zeta={cfg.zeta} snr={cfg.snr:.4g} {scheme.value}/{scenario.value}"
                )
    detail = (
        f"{cells} cells; max |closed-quad| {worst_quad:.2e}; "
        f"worst mc gap {worst_mc:.2f}x allowance"
    )
    if failures:
        detail += "; " + "; ".join(failures[:4])
    return CheckResult("triple_agreement", not failures, detail)


def check_asymptotic_floors(settings: ValidationSettings) -> CheckResult:
    """High-SNR closed form must land on the saturation floor."""
    snr = db_to_linear(settings.asymptotic_snr_db)
    worst = 0.0
    failures = []
    for K, zeta in itertools.product(settings.asymptotic_ks, settings.asymptotic_zetas):
        cfg = SystemConfig(
            K=K,
            zeta=zeta,
            r_th=settings.rate_threshold,
            snr=snr,
            M=settings.m_paths,
            N=settings.n_paths,
            a=settings.gain_d,
            b=settings.gain_e,
        )
        for scheme, scenario in _CASES:
            query = SopQuery(cfg=cfg, scheme=scheme, scenario=scenario)
            floor = asymptotic_sop(query).value
            closed = analytic_sop(query).value
            rel = abs(closed - floor) / floor
            worst = max(worst, rel)
            if rel > settings.asymptotic_rel_tol:
                failures.append(
                    f"rel gap {rel:.3e} at K={K} zeta={zeta} "
                    f"{scheme.value}/{scenario.value}"
                )
    detail = f"worst relative gap {worst:.2e} at {settings.asymptotic_snr_db:.0f} dB"
    if failures:
        detail += "; " + "; ".join(failures[:4])
    return CheckResult("asymptotic_floors", not failures, detail)


def check_orderings(settings: ValidationSettings) -> CheckResult:
    """Optimal <= sub-optimal and knowledge-available <= unavailable."""
    values = _analytic_grid(settings)
    slack = settings.ordering_slack
    margin = settings.strict_margin
    failures = []
    min_scheme_gap = math.inf
    min_scenario_gap = math.inf
    for cfg in settings.grid_configs():
        interior = cfg.zeta < 1.0 and cfg.K >= 2
        for scenario in (Scenario.KU, Scenario.KA):
            gap = values[(cfg, Scheme.SS, scenario)] - values[(cfg, Scheme.OS, scenario)]
            if interior:
                min_scheme_gap = min(min_scheme_gap, gap)
            if gap < -slack or (interior and gap < margin):
                failures.append(
                    f"scheme gap {gap:.3e} at K={cfg.K} zeta={cfg.zeta} "
                    f"snr={cfg.snr:.4g} {scenario.value}"
                )
        for scheme in (Scheme.SS, Scheme.OS):
            gap = values[(cfg, scheme, Scenario.KU)] - values[(cfg, scheme, Scenario.KA)]
            if interior:
                min_scenario_gap = min(min_scenario_gap, gap)
            if gap < -slack or (interior and gap < margin):
                failures.append(
                    f"scenario gap {gap:.3e} at K={cfg.K} zeta={cfg.zeta} "
                    f"snr={cfg.snr:.4g} {scheme.value}"
                )
    detail = (
        f"min interior scheme gap {min_scheme_gap:.2e}; "
        f"min interior scenario gap {min_scenario_gap:.2e}"
    )
    if failures:
        detail += "; " + "; ".join(failures[:4])
    return CheckResult("orderings", not failures, detail)


def check_floors(settings: ValidationSettings) -> CheckResult:
    """Backhaul-imposed lower bounds, plus the simulated inactive-set rate."""
    slack = settings.floor_slack
    failures = []
    for cfg in settings.grid_configs():
        for scheme in (Scheme.SS, Scheme.OS):
            ku = analytic_sop(SopQuery(cfg=cfg, scheme=scheme, scenario=Scenario.KU)).value
            if ku < (1.0 - cfg.zeta) - slack:
                failures.append(
                    f"ku floor breach at K={cfg.K} zeta={cfg.zeta} "
                    f"snr={cfg.snr:.4g} {scheme.value}"
                )
            ka = analytic_sop(SopQuery(cfg=cfg, scheme=scheme, scenario=Scenario.KA)).value
            if ka < (1.0 - cfg.zeta) ** cfg.K - slack:
                failures.append(
                    f"ka floor breach at K={cfg.K} zeta={cfg.zeta} "
                    f"snr={cfg.snr:.4g} {scheme.value}"
                )
    mc = settings.mc_settings()
    worst_sigma = 0.0
    for K, zeta in ((2, 0.9), (5, 0.9)):
        cfg = settings.config(K, zeta, 10.0)
        query = SopQuery(cfg=cfg, scheme=Scheme.SS, scenario=Scenario.KA)
        estimate = simulate_sop(query, mc)
        expected = (1.0 - zeta) ** K
        sigma = math.sqrt(expected * (1.0 - expected) / mc.n_samples)
        gap_sigmas = abs(estimate.empty_active_set_rate - expected) / sigma
        worst_sigma = max(worst_sigma, gap_sigmas)
        if gap_sigmas > 3.0:
            failures.append(
                f"inactive-set rate {estimate.empty_active_set_rate:.3e} vs "
                f"{expected:.3e} ({gap_sigmas:.1f} sigma) at K={K} zeta={zeta}"
            )
    detail = f"floors hold; inactive-set rate worst gap {worst_sigma:.2f} sigma"
    if failures:
        detail = "; ".join(failures[:4])
    return CheckResult("floors", not failures, detail)


def check_multipath_effect(settings: ValidationSettings) -> CheckResult:
    """More destination paths help; more eavesdropper paths hurt."""
    snr = db_to_linear(settings.effect_snr_db)
    base = SystemConfig(
        K=5, zeta=0.9, r_th=settings.rate_threshold, snr=snr,
        M=4, N=4, a=settings.gain_d, b=settings.gain_e,
    )
    failures = []
    for scheme, scenario in _CASES:
        dest = [
            analytic_sop(SopQuery(cfg=replace(base, M=m), scheme=scheme, scenario=scenario)).value
            for m in (2, 4, 6)
        ]
        if not (dest[0] > dest[1] > dest[2]):
            failures.append(f"destination-path order broken for {scheme.value}/{scenario.value}: {dest}")
        eave = [
            analytic_sop(SopQuery(cfg=replace(base, N=n), scheme=scheme, scenario=scenario)).value
            for n in (2, 4, 6)
        ]
        if not (eave[0] < eave[1] < eave[2]):
            failures.append(f"eavesdropper-path order broken for {scheme.value}/{scenario.value}: {eave}")
    detail = "outage falls with M (2,4,6) and rises with N (2,4,6) in all four cases"
    if failures:
        detail = "; ".join(failures[:4])
    return CheckResult("multipath_effect", not failures, detail)


def check_gain_ratio_effect(settings: ValidationSettings) -> CheckResult:
    """Raising the destination/eavesdropper gain ratio lowers outage."""
    snr = db_to_linear(settings.effect_snr_db)
    base = SystemConfig(
        K=5, zeta=0.9, r_th=settings.rate_threshold, snr=snr,
        M=6, N=4, a=0.2, b=0.2,
    )
    failures = []
    for scheme, scenario in _CASES:
        series = [
            analytic_sop(SopQuery(cfg=replace(base, a=a), scheme=scheme, scenario=scenario)).value
            for a in (0.2, 0.5, 1.0)
        ]
        if not (series[0] > series[1] > series[2]):
            failures.append(f"gain-ratio order broken for {scheme.value}/{scenario.value}: {series}")
    detail = "outage strictly falls as a/b goes 1, 2.5, 5"
    if failures:
        detail = "; ".join(failures[:4])
    return CheckResult("gain_ratio_effect", not failures, detail)


def _multinomial_identity_gap(k: int, num_parts: int, x: float) -> float:
    """Relative gap between the composition sum and its closed power form."""
    total = 0.0
    for comp in enumerate_weak_compositions(k, num_parts):
        total += comp.multinomial_coeff * comp.inv_factorial_product * x**comp.beta1
    direct = sum(x**m / math.factorial(m) for m in range(num_parts)) ** k
    return abs(total - direct) / max(abs(direct), 1.0)


def check_identities(settings: ValidationSettings) -> CheckResult:
    """Algebraic self-consistency of the building blocks."""
    tol = settings.identity_tol
    failures = []

    worst_cdf = 0.0
    scales = [settings.gain_d * db_to_linear(db) for db in settings.snr_dbs]
    xs = [0.0, 0.05, 0.5, 1.0, 5.0, 25.0, 200.0]
    for shape in (1, 2, 3, 4, 6, 8):
        for scale in scales:
            dist = GammaSnr(shape=shape, scale=scale)
            for x in xs:
                gap = abs(snr_cdf_finite_sum(dist, x) - snr_cdf(dist, x))
                worst_cdf = max(worst_cdf, gap)
    if worst_cdf > tol:
        failures.append(f"cdf forms disagree by {worst_cdf:.3e}")

    worst_multinomial = 0.0
    for k in range(6):
        for num_parts in (1, 2, 3, 6):
            for x in (0.3, 1.0, 2.7):
                gap = _multinomial_identity_gap(k, num_parts, x)
                worst_multinomial = max(worst_multinomial, gap)
    if worst_multinomial > settings.multinomial_rel_tol:
        failures.append(f"multinomial identity off by {worst_multinomial:.3e}")

    worst_known = 0.0
    for K in settings.ks:
        for snr_db in settings.snr_dbs:
            cfg = settings.config(K, 1.0, snr_db)
            for scheme in (Scheme.SS, Scheme.OS):
                ku = analytic_sop(SopQuery(cfg=cfg, scheme=scheme, scenario=Scenario.KU)).value
                ka = analytic_sop(SopQuery(cfg=cfg, scheme=scheme, scenario=Scenario.KA)).value
                worst_known = max(worst_known, abs(ku - ka))
    if worst_known > tol:
        failures.append(f"always-active scenarios disagree by {worst_known:.3e}")

    worst_single = 0.0
    for zeta in settings.zetas:
        for snr_db in settings.snr_dbs:
            cfg = settings.config(1, zeta, snr_db)
            cases = [
                analytic_sop(SopQuery(cfg=cfg, scheme=scheme, scenario=scenario)).value
                for scheme, scenario in _CASES
            ]
            spread = max(cases) - min(cases)
            worst_single = max(worst_single, spread)
    if worst_single > tol:
        failures.append(f"single-transmitter cases spread by {worst_single:.3e}")

    detail = (
        f"cdf gap {worst_cdf:.1e}; multinomial gap {worst_multinomial:.1e}; "
        f"always-active gap {worst_known:.1e}; single-transmitter spread {worst_single:.1e}"
    )
    if failures:
        detail = "; ".join(failures[:4])
    return CheckResult("identities", not failures, detail)


def check_determinism(settings: ValidationSettings) -> CheckResult:
    """Identical seed and sample count must be bit-stable across workers."""
    mc = McSettings(
        n_samples=settings.determinism_samples,
        seed=settings.seed,
        confidence=settings.confidence,
    )
    failures = []
    for scheme, scenario in ((Scheme.SS, Scenario.KU), (Scheme.OS, Scenario.KA)):
        cfg = settings.config(3, 0.95, 15.0)
        query = SopQuery(cfg=cfg, scheme=scheme, scenario=scenario)
        estimates = [
            simulate_sop(query, mc, workers=w) for w in settings.determinism_workers
        ]
        reprs = {repr(e.p_hat) for e in estimates}
        reprs |= {repr(simulate_sop(query, mc, workers=1).p_hat)}
        if len(reprs) != 1:
            failures.append(
                f"worker counts disagree for {scheme.value}/{scenario.value}: {sorted(reprs)}"
            )
    detail = f"estimates identical across workers {settings.determinism_workers}"
    if failures:
        detail = "; ".join(failures[:4])
    return CheckResult("determinism", not failures, detail)


CHECKS = {
    "triple_agreement": check_triple_agreement,
    "asymptotic_floors": check_asymptotic_floors,
    "orderings": check_orderings,
    "floors": check_floors,
    "multipath_effect": check_multipath_effect,
    "gain_ratio_effect": check_gain_ratio_effect,
    "identities": check_identities,
    "determinism": check_determinism,
}


def run_validation(
    settings: ValidationSettings | None = None,
    names: tuple[str, ...] | None = None,
    report=None,
) -> list[CheckResult]:
    """Run the named checks (all by default) and return their results."""
    settings = settings if settings is not None else ValidationSettings()
    selected = names if names is not None else tuple(CHECKS)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    results = []
    for name in selected:
        start = time.perf_counter()
        result = CHECKS[name](settings)
        result.duration_s = time.perf_counter() - start
        results.append(result)
        if report is not None:
            report(result.line())
    return results
