"""Server-side registry of uploaded runs.

Holds parsed runs in memory, keyed by opaque ids, with user-visible display
names unique per kind.  Mutations are serialized behind one lock; file bytes
are always parsed before the lock is taken so uploads never stall readers.
An optional JSON snapshot persists the registry across restarts.
"""
from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

from . import analytics, tpch
from .errors import (
    BenchlensError,
    MetricUnavailable,
    NameTaken,
    NoPlanAttached,
    ParserError,
    UnknownQuery,
    UnknownRun,
    ValidationError,
    WrongKind,
)
from .explain import parse_plan
from .normalize import (
    PlanMetric,
    Terminology,
    hierarchy_dict,
    metric_percentages,
    normalize,
    render_terminology,
)
from .sysbench import SysbenchRun, parse_sysbench
from .tpch import TpchRun, parse_tpch


class RunKind(str, Enum):
    SYSBENCH = "sysbench"
    TPCH = "tpch"


@dataclass
class RunRecord:
    id: str
    display_name: str
    kind: RunKind
    payload: SysbenchRun | TpchRun
    uploaded_at: float

    def summary(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "id": self.id,
            "name": self.display_name,
            "kind": self.kind.value,
            "uploadedAt": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(self.uploaded_at)),
        }
        if isinstance(self.payload, SysbenchRun):
            doc["sampleCount"] = len(self.payload.samples)
        else:
            doc["queryCount"] = len(self.payload.results)
            doc["queriesWithPlan"] = [r.query_no for r in self.payload.results if r.plan_source]
        return doc


def _parse_payload(kind: RunKind, file_bytes: bytes) -> SysbenchRun | TpchRun:
    try:
        text = file_bytes.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParserError(f"file is not UTF-8 text: {exc}") from None
    try:
        if kind is RunKind.SYSBENCH:
            return parse_sysbench(text)
        return parse_tpch(text)
    except BenchlensError as exc:
        raise ParserError(str(exc), cause=exc) from None


class Session:
    """Registry of uploaded runs plus the analytics surfaced over the API."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._runs: dict[str, RunRecord] = {}

    # -- registry -----------------------------------------------------------

    def upload_run(
        self,
        kind: RunKind,
        display_name: str,
        file_bytes: bytes,
        default_name: str = "",
    ) -> RunRecord:
        if not file_bytes:
            raise ValidationError("uploaded file is empty")
        name = (display_name or default_name).strip()
        if not name:
            raise ValidationError("run needs a display name (none given, no filename)")
        payload = _parse_payload(kind, file_bytes)  # outside the lock
        with self._lock:
            self._check_name_free(kind, name)
            run_id = secrets.token_hex(8)
            record = RunRecord(
                id=run_id,
                display_name=name,
                kind=kind,
                payload=payload,
                uploaded_at=time.time(),
            )
            self._runs[run_id] = record
            return record

    def rename_run(self, run_id: str, new_name: str) -> RunRecord:
        new_name = new_name.strip()
        if not new_name:
            raise ValidationError("new name must be non-empty")
        with self._lock:
            record = self._get(run_id)
            if new_name != record.display_name:
                self._check_name_free(record.kind, new_name)
                record.display_name = new_name
            return record

    def delete_run(self, run_id: str) -> None:
        with self._lock:
            self._get(run_id)
            del self._runs[run_id]

    def list_runs(self) -> list[dict[str, Any]]:
        with self._lock:
            return [record.summary() for record in self._runs.values()]

    def _get(self, run_id: str) -> RunRecord:
        record = self._runs.get(run_id)
        if record is None:
            raise UnknownRun(f"no run with id {run_id!r}")
        return record

    def _get_kind(self, run_id: str, kind: RunKind) -> RunRecord:
        record = self._get(run_id)
        if record.kind is not kind:
            raise WrongKind(f"run {record.display_name!r} is {record.kind.value}, expected {kind.value}")
        return record

    def _check_name_free(self, kind: RunKind, name: str) -> None:
        for record in self._runs.values():
            if record.kind is kind and record.display_name == name:
                raise NameTaken(f"a {kind.value} run named {name!r} already exists")

    # -- OLTP reads ----------------------------------------------------------

    def get_timeseries(self, run_id: str, metric: analytics.OltpMetric) -> list[tuple[int, float]]:
        with self._lock:
            record = self._get_kind(run_id, RunKind.SYSBENCH)
            run = record.payload
        assert isinstance(run, SysbenchRun)
        field = {
            analytics.OltpMetric.TPS: "tps",
            analytics.OltpMetric.QPS: "qps",
            analytics.OltpMetric.LATENCY: "latency",
        }[metric]
        return [(s.t, getattr(s, field)) for s in run.samples]

    def get_window_average(self, run_id: str, t_from: float, t_to: float) -> analytics.WindowAverages:
        with self._lock:
            record = self._get_kind(run_id, RunKind.SYSBENCH)
            run = record.payload
        assert isinstance(run, SysbenchRun)
        return analytics.window_average(run, t_from, t_to)

    def get_full_average(self, run_id: str) -> analytics.WindowAverages:
        with self._lock:
            record = self._get_kind(run_id, RunKind.SYSBENCH)
            run = record.payload
        assert isinstance(run, SysbenchRun)
        return analytics.full_average(run)

    # -- OLAP reads ----------------------------------------------------------

    def get_tpch_comparison(self, run_ids: list[str]) -> analytics.TpchComparison:
        if not run_ids:
            raise ValidationError("at least one run id is required")
        with self._lock:
            pairs = []
            for run_id in run_ids:
                record = self._get_kind(run_id, RunKind.TPCH)
                pairs.append((record.display_name, record.payload))
        return analytics.build_comparison(pairs)

    def attach_plan(self, run_id: str, query_no: int, plan_text: str) -> None:
        if not plan_text.strip():
            raise ValidationError("plan body is empty")
        with self._lock:
            record = self._get_kind(run_id, RunKind.TPCH)
            assert isinstance(record.payload, TpchRun)
            record.payload = tpch.attach_plan(record.payload, query_no, plan_text)

    def get_plan(
        self,
        run_id: str,
        query_no: int,
        terminology: Terminology = Terminology.CANONICAL,
        metric: PlanMetric = PlanMetric.COST,
    ) -> dict[str, Any]:
        with self._lock:
            record = self._get_kind(run_id, RunKind.TPCH)
            assert isinstance(record.payload, TpchRun)
            result = record.payload.find(query_no)
            if result is None:
                raise UnknownQuery(f"query {query_no} not present in run {record.display_name!r}")
            plan_source = result.plan_source
        if not plan_source:
            raise NoPlanAttached(f"query {query_no} has no EXPLAIN capture attached")

        try:
            raw, dialect = parse_plan(plan_source)
        except BenchlensError as exc:
            raise ParserError(str(exc), cause=exc) from None
        tree = render_terminology(normalize(raw, dialect), terminology)
        try:
            percentages = [
                {"label": label, "pct": pct} for label, pct in metric_percentages(tree, metric)
            ]
        except MetricUnavailable:
            percentages = None
        return {"tree": hierarchy_dict(tree), "percentages": percentages}

    # -- persistence ----------------------------------------------------------

    def save_snapshot(self, path: str | Path) -> None:
        with self._lock:
            doc = {
                "version": 1,
                "runs": [
                    {
                        "id": r.id,
                        "name": r.display_name,
                        "kind": r.kind.value,
                        "uploadedAt": r.uploaded_at,
                        "payload": r.payload.to_dict(),
                    }
                    for r in self._runs.values()
                ],
            }
        Path(path).write_text(json.dumps(doc, indent=2), encoding="utf-8")

    def load_snapshot(self, path: str | Path) -> int:
        """Restore runs from a snapshot file; missing file loads nothing."""
        path = Path(path)
        if not path.exists():
            return 0
        doc = json.loads(path.read_text(encoding="utf-8"))
        loaded = 0
        with self._lock:
            for entry in doc.get("runs", []):
                kind = RunKind(entry["kind"])
                payload: SysbenchRun | TpchRun
                if kind is RunKind.SYSBENCH:
                    payload = SysbenchRun.from_dict(entry["payload"])
                else:
                    payload = TpchRun.from_dict(entry["payload"])
                record = RunRecord(
                    id=entry["id"],
                    display_name=entry["name"],
                    kind=kind,
                    payload=payload,
                    uploaded_at=float(entry["uploadedAt"]),
                )
                self._runs[record.id] = record
                loaded += 1
        return loaded


__all__ = ["RunKind", "RunRecord", "Session"]
