"""Latency benchmark: per-phase means over n analyzed inputs.

Phases mirror the analysis pipeline (span prediction, attention map, role
visuals) so reports are comparable in shape across machines; absolute
values are hardware-dependent.
"""

from __future__ import annotations

import platform
from dataclasses import dataclass

from .attention_core import AttentionRecord, ExtractionConfig
from .pipeline import analyze

PHASES = ("span_prediction", "attention_map", "role_visuals")


@dataclass(frozen=True, slots=True)
class LatencyReport:
    """Mean seconds per phase over ``n_inputs`` analyses."""

    n_inputs: int
    span_prediction_s: float
    attention_map_s: float
    role_visuals_s: float
    total_s: float
    hardware_note: str

    @property
    def phase_means(self) -> dict[str, float]:
        return {
            "span_prediction": self.span_prediction_s,
            "attention_map": self.attention_map_s,
            "role_visuals": self.role_visuals_s,
        }


def hardware_note() -> str:
    return f"{platform.platform()} / {platform.processor() or platform.machine()}"


def run_benchmark(
    records: list[AttentionRecord],
    n: int,
    cfg: ExtractionConfig | None = None,
) -> LatencyReport:
    """Analyze ``n`` inputs (cycling through ``records``) and average each
    phase; total is measured independently around all three phases."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not records:
        raise ValueError("no records to benchmark")
    cfg = cfg or ExtractionConfig()

    sums = {"span_prediction": 0.0, "attention_map": 0.0, "role_visuals": 0.0, "total": 0.0}
    for i in range(n):
        a = analyze(records[i % len(records)], cfg)
        sums["span_prediction"] += a.span_prediction_s
        sums["attention_map"] += a.attention_map_s
        sums["role_visuals"] += a.role_visuals_s
        sums["total"] += a.total_s

    return LatencyReport(
        n_inputs=n,
        span_prediction_s=sums["span_prediction"] / n,
        attention_map_s=sums["attention_map"] / n,
        role_visuals_s=sums["role_visuals"] / n,
        total_s=sums["total"] / n,
        hardware_note=hardware_note(),
    )


def report_to_obj(report: LatencyReport) -> dict:
    return {
        "n_inputs": report.n_inputs,
        "phase_means_s": report.phase_means,
        "total_mean_s": report.total_s,
        "hardware": report.hardware_note,
    }


def report_table(report: LatencyReport) -> str:
    """Three-row phase breakdown plus total, aligned."""
    rows = [
        ("Span Prediction", report.span_prediction_s),
        ("Attention Map", report.attention_map_s),
        ("Role Visuals", report.role_visuals_s),
        ("Total", report.total_s),
    ]
    lines = [
        f"n = {report.n_inputs}   ({report.hardware_note})",
        f"{'phase':<18}{'mean (s)':>12}",
    ]
    for name, mean in rows:
        lines.append(f"{name:<18}{mean:>12.6f}")
    return "\n".join(lines)
