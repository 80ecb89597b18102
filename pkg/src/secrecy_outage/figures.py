"""Preset parameter studies and their plot descriptions.

Each preset fixes a base configuration and varies one quantity: transmitter
count and backhaul reliability, destination path count, eavesdropper path
count, or the destination power-gain coefficient.  Presets produce an
extended CSV (the sweep columns plus the varied parameters) and a
declarative plot description as JSON; rendering is left to the caller.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .analytic import Scenario, Scheme
from .channel import SystemConfig
from .montecarlo import McSettings
from .sweep import (
    EvalMethod,
    SweepResult,
    SweepRow,
    SweepSpec,
    _format_float,
    run_sweep,
)

__all__ = [
    "FIGURE_PRESETS",
    "FigurePreset",
    "FigureResult",
    "available_presets",
    "plot_description",
    "run_figure",
    "sweep_plot_description",
    "write_figure_csv",
    "write_plot_description",
]

FIGURE_CSV_HEADER = (
    "snr_db", "scheme", "scenario", "method", "sop", "ci_half_width", "flags",
    "K", "zeta", "rth", "M", "N", "a", "b",
)

_BASE = SystemConfig(K=2, zeta=0.99, r_th=1.0, snr=1.0, M=6, N=4, a=0.5, b=0.2)

_SNR_START, _SNR_STOP, _SNR_STEP = -10.0, 40.0, 2.0

_METHODS = (EvalMethod.ANALYTIC, EvalMethod.ASYMPTOTIC, EvalMethod.MC)


@dataclass(frozen=True)
class FigurePreset:
    """One study: a list of config variants swept over the common SNR grid."""

    name: str
    description: str
    variants: tuple[SystemConfig, ...]
    varied: tuple[str, ...]
    schemes: tuple[Scheme, ...] = (Scheme.SS, Scheme.OS)
    scenarios: tuple[Scenario, ...] = (Scenario.KU,)


def _fig2_variants() -> tuple[SystemConfig, ...]:
    return tuple(
        replace(_BASE, K=k, zeta=z) for k in (2, 5) for z in (0.99, 0.9)
    )


def _fig3_variants() -> tuple[SystemConfig, ...]:
    base = replace(_BASE, K=5, zeta=0.9)
    return tuple(replace(base, M=m) for m in (2, 4, 6))


def _fig4_variants() -> tuple[SystemConfig, ...]:
    base = replace(_BASE, K=5, zeta=0.9, M=4)
    return tuple(replace(base, N=n) for n in (2, 4, 6))


def _fig5_variants() -> tuple[SystemConfig, ...]:
    base = replace(_BASE, K=5, zeta=0.9)
    return tuple(replace(base, a=a) for a in (0.2, 0.5, 1.0))


FIGURE_PRESETS: dict[str, FigurePreset] = {
    "fig2": FigurePreset(
        name="fig2",
        description="Outage vs SNR for transmitter counts 2 and 5 at backhaul "
                    "reliability 0.99 and 0.9, both selection schemes",
        variants=_fig2_variants(),
        varied=("K", "zeta"),
    ),
    "fig3": FigurePreset(
        name="fig3",
        description="Outage vs SNR as the destination path count grows "
                    "(2, 4, 6) with 4 eavesdropper paths",
        variants=_fig3_variants(),
        varied=("M",),
    ),
    "fig4": FigurePreset(
        name="fig4",
        description="Outage vs SNR as the eavesdropper path count grows "
                    "(2, 4, 6) with 4 destination paths",
        variants=_fig4_variants(),
        varied=("N",),
    ),
    "fig5": FigurePreset(
        name="fig5",
        description="Outage vs SNR for destination gain coefficients 0.2, "
                    "0.5, 1.0 against a 0.2 eavesdropper coefficient",
        variants=_fig5_variants(),
        varied=("a",),
    ),
}


def available_presets() -> list[str]:
    return sorted(FIGURE_PRESETS)


@dataclass
class FigureResult:
    preset: FigurePreset
    per_variant: list[tuple[SystemConfig, SweepResult]]
    mc: McSettings


def run_figure(
    name: str,
    mc: McSettings | None = None,
    scenario: Scenario | None = None,
    methods: tuple[EvalMethod, ...] = _METHODS,
) -> FigureResult:
    try:
        preset = FIGURE_PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(available_presets())}"
        ) from None
    mc = mc if mc is not None else McSettings()
    scenarios = preset.scenarios if scenario is None else (scenario,)
    per_variant = []
    for cfg in preset.variants:
        spec = SweepSpec(
            base=cfg,
            snr_db_start=_SNR_START,
            snr_db_stop=_SNR_STOP,
            snr_db_step=_SNR_STEP,
            schemes=preset.schemes,
            scenarios=scenarios,
            methods=methods,
            mc=mc,
        )
        per_variant.append((cfg, run_sweep(spec)))
    return FigureResult(preset=preset, per_variant=per_variant, mc=mc)


def _config_columns(cfg: SystemConfig) -> list[str]:
    return [
        str(cfg.K),
        _format_float(cfg.zeta),
        _format_float(cfg.r_th),
        str(cfg.M),
        str(cfg.N),
        _format_float(cfg.a),
        _format_float(cfg.b),
    ]


def write_figure_csv(result: FigureResult, target) -> None:
    """Extended sweep CSV with the per-variant configuration columns."""
    import csv

    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            write_figure_csv(result, handle)
        return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(FIGURE_CSV_HEADER)
    used_mc = False
    for cfg, sweep_result in result.per_variant:
        for row in sweep_result.rows:
            used_mc = used_mc or row.method is EvalMethod.MC
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
                + _config_columns(cfg)
            )
    if used_mc:
        target.write(
            f"# mc seed={result.mc.seed} samples={result.mc.n_samples} "
            f"confidence={_format_float(result.mc.confidence)}\n"
        )


def _variant_label(cfg: SystemConfig, varied: tuple[str, ...]) -> str:
    parts = [f"{name}={getattr(cfg, name)}" for name in varied]
    return ", ".join(parts)


def _series_points(rows: list[SweepRow]) -> list[dict]:
    return [
        {"x": row.snr_db, "y": row.sop}
        | ({"ci": row.ci_half_width} if row.ci_half_width is not None else {})
        for row in rows
    ]


def _grouped_series(cfg: SystemConfig, rows: list[SweepRow], prefix: str) -> list[dict]:
    keyed: dict[tuple, list[SweepRow]] = {}
    for row in rows:
        keyed.setdefault((row.scheme, row.scenario, row.method), []).append(row)
    series = []
    for (scheme, scenario, method), group in sorted(
        keyed.items(), key=lambda kv: tuple(v.value for v in kv[0])
    ):
        group.sort(key=lambda r: r.snr_db)
        label = f"{scheme.value}/{scenario.value} [{method.value}]"
        series.append(
            {
                "label": f"{prefix} {label}".strip(),
                "scheme": scheme.value,
                "scenario": scenario.value,
                "method": method.value,
                "config": {
                    "K": cfg.K, "zeta": cfg.zeta, "rth": cfg.r_th,
                    "M": cfg.M, "N": cfg.N, "a": cfg.a, "b": cfg.b,
                },
                "points": _series_points(group),
            }
        )
    return series


def _plot_skeleton(title: str, series: list[dict]) -> dict:
    return {
        "kind": "line-plot",
        "title": title,
        "x_axis": {"label": "SNR (dB)", "scale": "linear"},
        "y_axis": {"label": "secrecy outage probability", "scale": "log"},
        "series": series,
    }


def plot_description(result: FigureResult) -> dict:
    """Declarative figure layout: axes, scales and one series per line.

    The output is renderer-agnostic; scripts/reproduce_figures.py shows a
    matplotlib interpretation.
    """
    series = []
    for cfg, sweep_result in result.per_variant:
        prefix = _variant_label(cfg, result.preset.varied)
        series.extend(_grouped_series(cfg, sweep_result.rows, prefix))
    return _plot_skeleton(result.preset.description, series)


def sweep_plot_description(base: SystemConfig, result: SweepResult,
                           title: str = "outage vs SNR") -> dict:
    """Plot description for a single-configuration sweep."""
    return _plot_skeleton(title, _grouped_series(base, result.rows, ""))


def write_plot_description(description: dict, target) -> None:
    """Serialize a plot description (see plot_description) as JSON."""
    if isinstance(target, (str, Path)):
        Path(target).write_text(
            json.dumps(description, indent=2) + "\n", encoding="utf-8"
        )
        return
    json.dump(description, target, indent=2)
    target.write("\n")
