"""Parser for sysbench OLTP output.

sysbench prints one intermediate report line per second plus a final report.
This module turns a raw stdout capture into a chronological sample series and
the summary numbers from the final report.  The accepted grammar is documented
in docs/file-formats.md.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Any

from .errors import MalformedInput, NumericOverflow

# [ 10s ] thds: 8 tps: 1532.97 qps: 30690.40 (r/w/o: 21480.28/6133.88/3076.24)
#         lat (ms,95%): 7.84 err/s: 0.00 reconn/s: 0.00
_INTERMEDIATE_RE = re.compile(
    r"^\[\s*(?P<t>\d+)s\s*\]"
    r"\s+thds:\s*(?P<thds>\S+)"
    r"\s+tps:\s*(?P<tps>\S+)"
    r"\s+qps:\s*(?P<qps>\S+)"
    r"\s+\(r/w/o:\s*(?P<r>[^/\s]+)/(?P<w>[^/\s]+)/(?P<o>[^)\s]+)\s*\)"
    r"\s+lat\s*\(ms,\s*(?P<pct>\d+)%\):\s*(?P<lat>\S+)"
    r"\s+err/s:\s*(?P<err>\S+)"
    r"\s+reconn/s:\s*(?P<reconn>\S+)\s*$"
)

# Decimal-point grammar only; comma decimals and exponents are rejected.
_NUMBER_RE = re.compile(r"^\d+(\.\d+)?$")

_SUM_TRANSACTIONS_RE = re.compile(r"^\s*transactions:\s+(\d+)\s+\((\S+) per sec\.\)")
_SUM_QUERIES_RE = re.compile(r"^\s*queries:\s+(\d+)\s+\((\S+) per sec\.\)")
_SUM_TOTAL_TIME_RE = re.compile(r"^\s*total time:\s+(\S+?)s\s*$")
_LATENCY_HEADER_RE = re.compile(r"^\s*Latency \(ms\):")
_SUM_AVG_RE = re.compile(r"^\s*avg:\s+(\S+)\s*$")
_BLOCK_HEADER_RE = re.compile(r"^\S.*:\s*$")


@dataclass(frozen=True)
class MetricSample:
    """One per-second snapshot; latency is the percentile the line reports."""

    t: int
    tps: float
    qps: float
    latency: float
    errors_per_s: float
    extras: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SysbenchSummary:
    total_transactions: int
    total_queries: int
    avg_tps: float
    avg_qps: float
    avg_latency: float
    total_time: float


@dataclass
class SysbenchRun:
    samples: list[MetricSample]
    summary: SysbenchSummary | None = None
    latency_percentile: str | None = None

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "samples": [
                {
                    "t": s.t,
                    "tps": s.tps,
                    "qps": s.qps,
                    "latency": s.latency,
                    "errorsPerS": s.errors_per_s,
                    "extras": dict(s.extras),
                }
                for s in self.samples
            ],
            "summary": None,
            "latencyPercentile": self.latency_percentile,
        }
        if self.summary is not None:
            doc["summary"] = {
                "totalTransactions": self.summary.total_transactions,
                "totalQueries": self.summary.total_queries,
                "avgTps": self.summary.avg_tps,
                "avgQps": self.summary.avg_qps,
                "avgLatency": self.summary.avg_latency,
                "totalTime": self.summary.total_time,
            }
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "SysbenchRun":
        samples = [
            MetricSample(
                t=int(s["t"]),
                tps=float(s["tps"]),
                qps=float(s["qps"]),
                latency=float(s["latency"]),
                errors_per_s=float(s["errorsPerS"]),
                extras={k: float(v) for k, v in s.get("extras", {}).items()},
            )
            for s in doc.get("samples", [])
        ]
        summary = None
        if doc.get("summary") is not None:
            sm = doc["summary"]
            summary = SysbenchSummary(
                total_transactions=int(sm["totalTransactions"]),
                total_queries=int(sm["totalQueries"]),
                avg_tps=float(sm["avgTps"]),
                avg_qps=float(sm["avgQps"]),
                avg_latency=float(sm["avgLatency"]),
                total_time=float(sm["totalTime"]),
            )
        return cls(samples=samples, summary=summary, latency_percentile=doc.get("latencyPercentile"))


def _metric(token: str, line_no: int, what: str) -> float:
    if not _NUMBER_RE.match(token):
        raise NumericOverflow(f"line {line_no}: {what} token {token!r} is not a non-negative decimal number")
    value = float(token)
    if not math.isfinite(value):
        raise NumericOverflow(f"line {line_no}: {what} token {token!r} overflows to non-finite")
    return value


def parse_sysbench(text: str) -> SysbenchRun:
    """Parse a full sysbench stdout capture.

    Unrecognized lines are skipped (sysbench versions vary); raises
    MalformedInput when neither intermediate lines nor a final report are
    found, or when timestamps fail to increase strictly.
    """
    samples: list[MetricSample] = []
    latency_percentile: str | None = None
    last_t = 0

    total_transactions: int | None = None
    total_queries: int | None = None
    avg_tps = 0.0
    avg_qps = 0.0
    avg_latency = 0.0
    total_time: float | None = None
    in_latency_block = False

    for line_no, line in enumerate(text.splitlines(), start=1):
        m = _INTERMEDIATE_RE.match(line)
        if m:
            t = int(m.group("t"))
            if t <= last_t:
                raise MalformedInput(
                    f"line {line_no}: timestamp {t}s does not increase (previous {last_t}s)"
                )
            last_t = t
            if latency_percentile is None:
                latency_percentile = m.group("pct")
            samples.append(
                MetricSample(
                    t=t,
                    tps=_metric(m.group("tps"), line_no, "tps"),
                    qps=_metric(m.group("qps"), line_no, "qps"),
                    latency=_metric(m.group("lat"), line_no, "latency"),
                    errors_per_s=_metric(m.group("err"), line_no, "err/s"),
                    extras={
                        "thds": _metric(m.group("thds"), line_no, "thds"),
                        "read_qps": _metric(m.group("r"), line_no, "read qps"),
                        "write_qps": _metric(m.group("w"), line_no, "write qps"),
                        "other_qps": _metric(m.group("o"), line_no, "other qps"),
                        "reconnects_per_s": _metric(m.group("reconn"), line_no, "reconn/s"),
                    },
                )
            )
            continue

        if _LATENCY_HEADER_RE.match(line):
            in_latency_block = True
            continue
        if in_latency_block and _BLOCK_HEADER_RE.match(line):
            in_latency_block = False

        m = _SUM_TRANSACTIONS_RE.match(line)
        if m:
            total_transactions = int(m.group(1))
            avg_tps = _metric(m.group(2), line_no, "avg tps")
            continue
        m = _SUM_QUERIES_RE.match(line)
        if m:
            total_queries = int(m.group(1))
            avg_qps = _metric(m.group(2), line_no, "avg qps")
            continue
        m = _SUM_TOTAL_TIME_RE.match(line)
        if m:
            total_time = _metric(m.group(1), line_no, "total time")
            continue
        if in_latency_block:
            m = _SUM_AVG_RE.match(line)
            if m:
                avg_latency = _metric(m.group(1), line_no, "avg latency")
            continue

    summary = None
    if total_transactions is not None and total_queries is not None and total_time is not None:
        summary = SysbenchSummary(
            total_transactions=total_transactions,
            total_queries=total_queries,
            avg_tps=avg_tps,
            avg_qps=avg_qps,
            avg_latency=avg_latency,
            total_time=total_time,
        )
        if samples and total_time <= 0:
            raise MalformedInput("final report claims zero total time but intermediate samples exist")

    if not samples and summary is None:
        raise MalformedInput("no sysbench intermediate lines and no final report found")

    return SysbenchRun(samples=samples, summary=summary, latency_percentile=latency_percentile)
