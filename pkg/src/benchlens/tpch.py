"""Parser for TPC-H execution result files.

A result file is a sequence of query blocks: a header naming the query, the
retrieved table (skipped), and a processing-time line.  Blocks may also embed
a raw EXPLAIN capture which is stored opaquely for the plan pipeline.
Accepted header and time-line forms are documented in docs/file-formats.md.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Any

from .errors import DuplicateQuery, MalformedInput, UnknownQuery

_HEADER_COMMENT_RE = re.compile(r"^\s*--\s*[Qq]uery\s+(\d+)\b")
_HEADER_MARKER_RE = re.compile(r"^\s*[Qq](\d+)\s*:?\s*$")
# psql \timing output, optionally with the mm:ss suffix newer psql adds
_TIME_MS_RE = re.compile(r"^\s*Time:\s*(\d+(?:\.\d+)?)\s*ms(?:\s*\(.*\))?\s*$")
# mysql client footer: "4 rows in set (3.20 sec)" / "Empty set (0.01 sec)"
_TIME_SEC_RE = re.compile(
    r"^\s*(?:\d+ rows? in set|Empty set).*\(\s*(\d+(?:\.\d+)?)\s+sec\s*\)\s*$"
)
_PLAN_START_RE = re.compile(r"^\s*(?:--\s*[Pp]lan\b|EXPLAIN\b)")

MIN_QUERY_NO = 1
MAX_QUERY_NO = 22


@dataclass(frozen=True)
class QueryResult:
    query_no: int
    duration_ms: float
    plan_source: str | None = None


@dataclass
class TpchRun:
    results: list[QueryResult]

    def query_numbers(self) -> list[int]:
        return [r.query_no for r in self.results]

    def find(self, query_no: int) -> QueryResult | None:
        for r in self.results:
            if r.query_no == query_no:
                return r
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "results": [
                {
                    "queryNo": r.query_no,
                    "durationMs": r.duration_ms,
                    "planSource": r.plan_source,
                }
                for r in self.results
            ]
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "TpchRun":
        return cls(
            results=[
                QueryResult(
                    query_no=int(r["queryNo"]),
                    duration_ms=float(r["durationMs"]),
                    plan_source=r.get("planSource"),
                )
                for r in doc.get("results", [])
            ]
        )


def _duration(token: str, line_no: int, scale: float) -> float:
    value = float(token) * scale
    if not math.isfinite(value):
        raise MalformedInput(f"line {line_no}: duration {token!r} overflows to non-finite")
    return value


def parse_tpch(text: str) -> TpchRun:
    """Parse per-query durations (and inline plan captures) from a result file.

    The first time line after a header fixes the block's duration; result
    tables and unknown lines are skipped.  Output is sorted by query number.
    """
    durations: dict[int, tuple[float, int]] = {}
    plans: dict[int, str] = {}
    current: int | None = None
    have_time = False
    plan_lines: list[str] | None = None

    def flush_plan() -> None:
        nonlocal plan_lines
        if plan_lines is not None and current is not None:
            plans[current] = "\n".join(plan_lines)
        plan_lines = None

    for line_no, line in enumerate(text.splitlines(), start=1):
        m = _HEADER_COMMENT_RE.match(line) or _HEADER_MARKER_RE.match(line)
        if m:
            flush_plan()
            qno = int(m.group(1))
            if not MIN_QUERY_NO <= qno <= MAX_QUERY_NO:
                raise MalformedInput(
                    f"line {line_no}: query number {qno} outside {MIN_QUERY_NO}..{MAX_QUERY_NO}"
                )
            current = qno
            have_time = False
            continue

        m = _TIME_MS_RE.match(line)
        scale = 1.0
        if not m:
            m = _TIME_SEC_RE.match(line)
            scale = 1000.0
        if m:
            flush_plan()
            if current is None or have_time:
                continue
            value = _duration(m.group(1), line_no, scale)
            if current in durations and durations[current][0] != value:
                raise DuplicateQuery(
                    f"line {line_no}: query {current} already timed at "
                    f"{durations[current][0]} ms (first seen line {durations[current][1]})"
                )
            durations[current] = (value, line_no)
            have_time = True
            continue

        if plan_lines is not None:
            plan_lines.append(line)
            continue
        if current is not None and _PLAN_START_RE.match(line):
            plan_lines = []
            if not line.lstrip().startswith("--"):
                plan_lines.append(line)
            continue

    flush_plan()

    if not durations:
        raise MalformedInput("no TPC-H query block recognized")

    results = [
        QueryResult(query_no=q, duration_ms=durations[q][0], plan_source=plans.get(q))
        for q in sorted(durations)
    ]
    return TpchRun(results=results)


def attach_plan(run: TpchRun, query_no: int, plan_text: str) -> TpchRun:
    """Return a copy of *run* with *plan_text* attached to *query_no*.

    Overwrites any previously attached plan; raises UnknownQuery when the
    query is not present in the run.
    """
    if run.find(query_no) is None:
        raise UnknownQuery(f"query {query_no} not present in run")
    results = [
        QueryResult(r.query_no, r.duration_ms, plan_text) if r.query_no == query_no else r
        for r in run.results
    ]
    return TpchRun(results=results)
