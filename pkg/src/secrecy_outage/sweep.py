"""SNR sweeps and their CSV serialization.

The CSV format is a contract: header ``snr_db,scheme,scenario,method,sop,
ci_half_width,flags``, UTF-8, LF line endings, no trailing delimiter, rows
sorted lexicographically by (snr_db, scheme, scenario, method), floats in
shortest round-trip form.  When simulation rows are present the seed and
sample count are recorded in a trailing comment line so any file can be
reproduced exactly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

from .analytic import SopQuery, Scenario, Scheme, analytic_sop, asymptotic_sop
from .channel import SystemConfig
from .montecarlo import McSettings, simulate_sop
from .quadrature import quadrature_sop

__all__ = [
    "CSV_HEADER",
    "EvalMethod",
    "SweepRow",
    "SweepResult",
    "SweepSpec",
    "db_to_linear",
    "evaluate_cell",
    "linear_to_db",
    "read_sweep_csv",
    "run_sweep",
    "snr_grid",
    "write_sweep_csv",
]

CSV_HEADER = ("snr_db", "scheme", "scenario", "method", "sop", "ci_half_width", "flags")

FLAG_SIGNIFICANCE = "significance_loss"
FLAG_LOW_CONFIDENCE = "low_confidence"


class EvalMethod(str, Enum):
    ANALYTIC = "analytic"
    ASYMPTOTIC = "asymptotic"
    MC = "mc"
    QUADRATURE = "quadrature"


def db_to_linear(snr_db: float) -> float:
    """Decibel to linear power ratio; the only place dB enters the library."""
    return 10.0 ** (snr_db / 10.0)


def linear_to_db(snr: float) -> float:
    import math

    return 10.0 * math.log10(snr)


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    scheme: Scheme
    scenario: Scenario
    method: EvalMethod
    sop: float
    ci_half_width: float | None
    flags: str


@dataclass(frozen=True)
class SweepSpec:
    """An SNR grid crossed with scheme/scenario/method sets.

    ``base.snr`` is a placeholder; each grid point overrides it with the
    linear equivalent of its dB value.
    """

    base: SystemConfig
    snr_db_start: float
    snr_db_stop: float
    snr_db_step: float
    schemes: tuple[Scheme, ...] = (Scheme.SS,)
    scenarios: tuple[Scenario, ...] = (Scenario.KU,)
    methods: tuple[EvalMethod, ...] = (EvalMethod.ANALYTIC,)
    mc: McSettings = field(default_factory=McSettings)

    def __post_init__(self):
        if self.snr_db_step <= 0.0:
            raise ValueError(f"snr_db_step must be > 0, got {self.snr_db_step!r}")
        if self.snr_db_stop < self.snr_db_start:
            raise ValueError("snr_db_stop must be >= snr_db_start")
        if not self.schemes or not self.scenarios or not self.methods:
            raise ValueError("schemes, scenarios and methods must each be non-empty")


def snr_grid(spec: SweepSpec) -> list[float]:
    """Inclusive dB grid; a small slack absorbs binary step representation."""
    count = int((spec.snr_db_stop - spec.snr_db_start) / spec.snr_db_step + 1e-9) + 1
    return [spec.snr_db_start + i * spec.snr_db_step for i in range(count)]


def evaluate_cell(
    cfg: SystemConfig,
    scheme: Scheme,
    scenario: Scenario,
    method: EvalMethod,
    mc: McSettings,
) -> tuple[float, float | None, str]:
    """Evaluate one (config, case, method) cell; returns (sop, ci, flags)."""
    query = SopQuery(cfg=cfg, scheme=scheme, scenario=scenario)
    method = EvalMethod(method)
    if method is EvalMethod.ANALYTIC:
        value = analytic_sop(query)
        return value.value, None, FLAG_SIGNIFICANCE if value.significance_flag else ""
    if method is EvalMethod.ASYMPTOTIC:
        value = asymptotic_sop(query)
        return value.value, None, FLAG_SIGNIFICANCE if value.significance_flag else ""
    if method is EvalMethod.QUADRATURE:
        return quadrature_sop(query), None, ""
    estimate = simulate_sop(query, mc)
    return (
        estimate.p_hat,
        estimate.ci_half_width,
        FLAG_LOW_CONFIDENCE if estimate.low_confidence else "",
    )


@dataclass
class SweepResult:
    rows: list[SweepRow]
    mc: McSettings | None = None


def run_sweep(spec: SweepSpec) -> SweepResult:
    rows = []
    for snr_db in snr_grid(spec):
        cfg = replace(spec.base, snr=db_to_linear(snr_db))
        for scheme in spec.schemes:
            for scenario in spec.scenarios:
                for method in spec.methods:
                    sop, ci, flags = evaluate_cell(cfg, scheme, scenario, method, spec.mc)
                    rows.append(
                        SweepRow(snr_db, Scheme(scheme), Scenario(scenario),
                                 EvalMethod(method), sop, ci, flags)
                    )
    rows.sort(key=lambda r: (r.snr_db, r.scheme.value, r.scenario.value, r.method.value))
    used_mc = any(r.method is EvalMethod.MC for r in rows)
    return SweepResult(rows=rows, mc=spec.mc if used_mc else None)


def _format_float(x: float) -> str:
    return repr(float(x))


def write_sweep_csv(result: SweepResult, target) -> None:
    """Write the sweep CSV contract to a path or text file object."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            write_sweep_csv(result, handle)
        return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        writer.writerow(
            [
                _format_float(row.snr_db),
                row.scheme.value,
                row.scenario.value,
                row.method.value,
                _format_float(row.sop),
                "" if row.ci_half_width is None else _format_float(row.ci_half_width),
                row.flags,
            ]
        )
    if result.mc is not None:
        target.write(
            f"# mc seed={result.mc.seed} samples={result.mc.n_samples} "
            f"confidence={_format_float(result.mc.confidence)}\n"
        )


def read_sweep_csv(source) -> list[dict]:
    """Parse a sweep CSV back into typed dicts, skipping comment lines."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    rows = []
    for record in reader:
        rows.append(
            {
                "snr_db": float(record["snr_db"]),
                "scheme": Scheme(record["scheme"]),
                "scenario": Scenario(record["scenario"]),
                "method": EvalMethod(record["method"]),
                "sop": float(record["sop"]),
                "ci_half_width": float(record["ci_half_width"]) if record["ci_half_width"] else None,
                "flags": record["flags"],
            }
        )
    return rows
