"""Derived numbers for the dashboard: windowed OLTP averages and cross-run
TPC-H comparison tables."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .errors import DuplicateRunName, EmptyWindow, ValidationError
from .sysbench import SysbenchRun
from .tpch import TpchRun


class OltpMetric(str, Enum):
    TPS = "tps"
    QPS = "qps"
    LATENCY = "latency"


@dataclass(frozen=True)
class WindowAverages:
    tps_avg: float
    qps_avg: float
    latency_avg: float
    sample_count: int
    window: tuple[float, float]

    def to_dict(self) -> dict[str, Any]:
        return {
            "tpsAvg": self.tps_avg,
            "qpsAvg": self.qps_avg,
            "latencyAvg": self.latency_avg,
            "sampleCount": self.sample_count,
            "window": [self.window[0], self.window[1]],
        }


@dataclass
class TpchComparison:
    runs: list[str]
    per_query: dict[int, list[tuple[str, float | None]]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "runs": list(self.runs),
            "perQuery": {
                str(q): [d for _, d in entries] for q, entries in sorted(self.per_query.items())
            },
        }


def window_average(run: SysbenchRun, t_from: float, t_to: float) -> WindowAverages:
    """Arithmetic means over samples with t_from <= t <= t_to (both inclusive)."""
    if t_from > t_to:
        raise ValidationError(f"window start {t_from} is after end {t_to}")
    ts = [s.t for s in run.samples]
    lo = bisect_left(ts, t_from)
    hi = bisect_right(ts, t_to)
    selected = run.samples[lo:hi]
    if not selected:
        raise EmptyWindow(f"no sample in window [{t_from}, {t_to}]")
    n = len(selected)
    return WindowAverages(
        tps_avg=sum(s.tps for s in selected) / n,
        qps_avg=sum(s.qps for s in selected) / n,
        latency_avg=sum(s.latency for s in selected) / n,
        sample_count=n,
        window=(t_from, t_to),
    )


def full_average(run: SysbenchRun) -> WindowAverages:
    """window_average over the run's full span."""
    if not run.samples:
        raise EmptyWindow("run has no samples")
    return window_average(run, run.samples[0].t, run.samples[-1].t)


def build_comparison(runs: list[tuple[str, TpchRun]]) -> TpchComparison:
    """Align per-query durations across runs; missing queries stay absent."""
    names = [name for name, _ in runs]
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise DuplicateRunName(f"run name {name!r} appears twice")
        seen.add(name)

    durations = [{r.query_no: r.duration_ms for r in run.results} for _, run in runs]
    union = sorted(set().union(*durations)) if durations else []
    per_query = {
        q: [(name, d.get(q)) for name, d in zip(names, durations)] for q in union
    }
    return TpchComparison(runs=names, per_query=per_query)
