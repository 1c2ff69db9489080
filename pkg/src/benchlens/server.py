"""HTTP/JSON API over the session registry, plus static dashboard serving.

Built on the stdlib threading server: handlers run per-request threads, the
session serializes writes internally, and parsers are pure, so concurrent
requests need no further coordination.
"""
from __future__ import annotations

import json
import mimetypes
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any
from urllib.parse import parse_qs, urlparse

from .analytics import OltpMetric
from .errors import BenchlensError, ParserError, ValidationError
from .normalize import PlanMetric, Terminology
from .session import RunKind, Session

_STATUS_BY_CODE = {
    "UnknownRun": 404,
    "UnknownQuery": 404,
    "NoPlanAttached": 404,
    "NameTaken": 409,
    "DuplicateRunName": 409,
}


def _status_for(exc: BenchlensError) -> int:
    return _STATUS_BY_CODE.get(exc.code, 400)


def _parse_multipart(body: bytes, content_type: str) -> dict[str, tuple[str, bytes]]:
    """Minimal multipart/form-data reader: field name -> (filename, bytes)."""
    m = re.search(r'boundary="?([^";]+)"?', content_type)
    if not m:
        raise ValidationError("multipart body without boundary")
    boundary = b"--" + m.group(1).encode("utf-8")
    fields: dict[str, tuple[str, bytes]] = {}
    for part in body.split(boundary):
        part = part.strip(b"\r\n")
        if not part or part == b"--":
            continue
        if b"\r\n\r\n" in part:
            raw_headers, content = part.split(b"\r\n\r\n", 1)
        else:
            raw_headers, content = part, b""
        disposition = ""
        for header in raw_headers.split(b"\r\n"):
            if header.lower().startswith(b"content-disposition:"):
                disposition = header.decode("utf-8", "replace")
        name_m = re.search(r'name="([^"]*)"', disposition)
        if not name_m:
            continue
        file_m = re.search(r'filename="([^"]*)"', disposition)
        fields[name_m.group(1)] = (file_m.group(1) if file_m else "", content)
    return fields


class BenchServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], session: Session, static_dir: str | None = None):
        super().__init__(address, ApiHandler)
        self.session = session
        self.static_dir = Path(static_dir).resolve() if static_dir else None


class ApiHandler(BaseHTTPRequestHandler):
    server_version = "benchlens"
    protocol_version = "HTTP/1.1"

    # -- plumbing -------------------------------------------------------------

    def log_message(self, fmt: str, *args: Any) -> None:
        pass  # keep test output and service logs quiet

    @property
    def session(self) -> Session:
        return self.server.session  # type: ignore[attr-defined]

    def _send_json(self, status: int, doc: Any) -> None:
        body = json.dumps(doc, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_empty(self, status: int) -> None:
        self.send_response(status)
        self.send_header("Content-Length", "0")
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()

    def _send_error(self, exc: BenchlensError) -> None:
        doc: dict[str, Any] = {"error": {"code": exc.code, "message": str(exc)}}
        if isinstance(exc, ParserError) and exc.cause_code:
            doc["error"]["cause"] = exc.cause_code
        self._send_json(_status_for(exc), doc)

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length", 0) or 0)
        return self.rfile.read(length) if length else b""

    def _query(self) -> dict[str, str]:
        qs = parse_qs(urlparse(self.path).query)
        return {k: v[-1] for k, v in qs.items()}

    # -- routing --------------------------------------------------------------

    def do_GET(self) -> None:
        self._route("GET")

    def do_POST(self) -> None:
        self._route("POST")

    def do_PATCH(self) -> None:
        self._route("PATCH")

    def do_DELETE(self) -> None:
        self._route("DELETE")

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, PATCH, DELETE")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    _ROUTES = [
        ("POST", re.compile(r"^/v1/runs$"), "_upload_run"),
        ("GET", re.compile(r"^/v1/runs$"), "_list_runs"),
        ("PATCH", re.compile(r"^/v1/runs/(?P<id>[^/]+)$"), "_rename_run"),
        ("DELETE", re.compile(r"^/v1/runs/(?P<id>[^/]+)$"), "_delete_run"),
        ("GET", re.compile(r"^/v1/runs/(?P<id>[^/]+)/timeseries$"), "_timeseries"),
        ("GET", re.compile(r"^/v1/runs/(?P<id>[^/]+)/average$"), "_average"),
        ("GET", re.compile(r"^/v1/tpch/comparison$"), "_comparison"),
        ("POST", re.compile(r"^/v1/runs/(?P<id>[^/]+)/queries/(?P<q>\d+)/plan$"), "_attach_plan"),
        ("GET", re.compile(r"^/v1/runs/(?P<id>[^/]+)/queries/(?P<q>\d+)/plan$"), "_get_plan"),
    ]

    def _route(self, method: str) -> None:
        path = urlparse(self.path).path
        try:
            for route_method, pattern, handler_name in self._ROUTES:
                if route_method != method:
                    continue
                m = pattern.match(path)
                if m:
                    getattr(self, handler_name)(**m.groupdict())
                    return
            if method == "GET" and self._serve_static(path):
                return
            self._send_json(404, {"error": {"code": "NotFound", "message": f"no route for {path}"}})
        except BenchlensError as exc:
            self._send_error(exc)
        except Exception as exc:  # pragma: no cover - defensive
            self._send_json(500, {"error": {"code": "Internal", "message": str(exc)}})

    # -- handlers -------------------------------------------------------------

    def _upload_run(self) -> None:
        params = self._query()
        kind_raw = params.get("kind", "")
        try:
            kind = RunKind(kind_raw)
        except ValueError:
            raise ValidationError(f"kind must be sysbench or tpch, got {kind_raw!r}") from None

        content_type = self.headers.get("Content-Type", "")
        body = self._read_body()
        name = params.get("name", "")
        filename = ""
        if content_type.startswith("multipart/form-data"):
            fields = _parse_multipart(body, content_type)
            if "file" not in fields:
                raise ValidationError('multipart upload needs a "file" field')
            filename, file_bytes = fields["file"]
            if "name" in fields and fields["name"][1]:
                name = fields["name"][1].decode("utf-8", "replace").strip()
        else:
            file_bytes = body  # raw-body convenience upload

        record = self.session.upload_run(kind, name, file_bytes, default_name=Path(filename).stem)
        self._send_json(201, record.summary())

    def _list_runs(self) -> None:
        self._send_json(200, {"runs": self.session.list_runs()})

    def _rename_run(self, id: str) -> None:
        try:
            doc = json.loads(self._read_body() or b"{}")
        except ValueError:
            raise ValidationError("body must be JSON") from None
        if not isinstance(doc, dict) or not isinstance(doc.get("name"), str):
            raise ValidationError('body must be {"name": string}')
        record = self.session.rename_run(id, doc["name"])
        self._send_json(200, record.summary())

    def _delete_run(self, id: str) -> None:
        self.session.delete_run(id)
        self._send_empty(204)

    def _timeseries(self, id: str) -> None:
        params = self._query()
        metric_raw = params.get("metric", "tps")
        try:
            metric = OltpMetric(metric_raw)
        except ValueError:
            raise ValidationError(f"metric must be tps|qps|latency, got {metric_raw!r}") from None
        points = self.session.get_timeseries(id, metric)
        self._send_json(200, {"metric": metric.value, "points": [[t, v] for t, v in points]})

    def _average(self, id: str) -> None:
        params = self._query()
        if "from" in params or "to" in params:
            try:
                t_from = float(params["from"])
                t_to = float(params["to"])
            except (KeyError, ValueError):
                raise ValidationError("from and to must both be numbers") from None
            averages = self.session.get_window_average(id, t_from, t_to)
        else:
            averages = self.session.get_full_average(id)
        self._send_json(200, averages.to_dict())

    def _comparison(self) -> None:
        ids_raw = self._query().get("ids", "")
        ids = [part for part in ids_raw.split(",") if part]
        comparison = self.session.get_tpch_comparison(ids)
        self._send_json(200, comparison.to_dict())

    def _attach_plan(self, id: str, q: str) -> None:
        body = self._read_body()
        self.session.attach_plan(id, int(q), body.decode("utf-8", "replace"))
        self._send_empty(204)

    def _get_plan(self, id: str, q: str) -> None:
        params = self._query()
        term_raw = params.get("terminology", "canonical")
        metric_raw = params.get("metric", "cost")
        try:
            terminology = Terminology(term_raw)
        except ValueError:
            raise ValidationError(
                f"terminology must be canonical|postgres|mysql|mariadb, got {term_raw!r}"
            ) from None
        try:
            metric = PlanMetric(metric_raw)
        except ValueError:
            raise ValidationError(f"metric must be cost|rows, got {metric_raw!r}") from None
        doc = self.session.get_plan(id, int(q), terminology, metric)
        self._send_json(200, doc)

    # -- static dashboard ------------------------------------------------------

    def _serve_static(self, path: str) -> bool:
        root = self.server.static_dir  # type: ignore[attr-defined]
        if root is None:
            return False
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if not str(target).startswith(str(root)) or not target.is_file():
            return False
        body = target.read_bytes()
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)
        return True


def make_server(
    port: int, session: Session | None = None, static_dir: str | None = None, host: str = "127.0.0.1"
) -> BenchServer:
    return BenchServer((host, port), session or Session(), static_dir)


def run_in_thread(server: BenchServer) -> threading.Thread:
    """Start serve_forever on a daemon thread (used by tests)."""
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return thread
