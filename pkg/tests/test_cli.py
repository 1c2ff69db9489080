import json

import pytest
import requests

from benchlens.cli import main

from helpers import sysbench_line, sysbench_log, tpch_block

PG_PLAN_TEXT = json.dumps(
    [
        {
            "Plan": {
                "Node Type": "Sort",
                "Total Cost": 12.0,
                "Plan Rows": 10,
                "Plans": [
                    {"Node Type": "Seq Scan", "Relation Name": "t", "Total Cost": 9.0, "Plan Rows": 10}
                ],
            }
        }
    ]
)


@pytest.fixture
def sysbench_file(tmp_path):
    path = tmp_path / "sys.log"
    path.write_text(sysbench_log([sysbench_line(t, 10.0 * t) for t in (1, 2, 3)]))
    return path


@pytest.fixture
def tpch_file(tmp_path):
    path = tmp_path / "tpch.txt"
    path.write_text(tpch_block(1, 10.0) + tpch_block(2, 20.0))
    return path


def test_parse_sysbench_to_stdout(sysbench_file, capsys):
    assert main(["parse", "--kind", "sysbench", str(sysbench_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [s["t"] for s in doc["samples"]] == [1, 2, 3]
    assert doc["summary"]["totalTransactions"] == 104057


def test_parse_tpch_to_file(tpch_file, tmp_path):
    out = tmp_path / "out.json"
    assert main(["parse", "--kind", "tpch", str(tpch_file), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [r["queryNo"] for r in doc["results"]] == [1, 2]


def test_parse_missing_file_exits_1(capsys):
    assert main(["parse", "--kind", "sysbench", "/nonexistent/input.log"]) == 1
    assert capsys.readouterr().err.startswith("error: IOError:")


def test_parse_garbage_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.log"
    bad.write_text("garbage")
    assert main(["parse", "--kind", "sysbench", str(bad)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error: MalformedInput:")
    assert err.count("\n") == 1


def test_unknown_kind_exits_2(sysbench_file, capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["parse", "--kind", "oracle", str(sysbench_file)])
    assert exc_info.value.code == 2


def test_plan_auto_detect(tmp_path, capsys):
    plan_file = tmp_path / "plan.json"
    plan_file.write_text(PG_PLAN_TEXT)
    assert main(["plan", str(plan_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["tree"]["name"] == "Sort"
    assert doc["tree"]["dialect"] == "postgres"
    assert sum(p["pct"] for p in doc["percentages"]) == pytest.approx(100.0)


def test_plan_terminology_and_metric_flags(tmp_path, capsys):
    plan_file = tmp_path / "plan.json"
    plan_file.write_text(PG_PLAN_TEXT)
    assert main(["plan", str(plan_file), "--terminology", "mysql", "--metric", "rows"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["tree"]["children"][0]["name"] == "ALL"


def test_plan_garbage_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a plan at all")
    assert main(["plan", str(bad)]) == 1
    assert capsys.readouterr().err.startswith("error: UnknownDialect:")


def test_plan_wrong_explicit_dialect_exits_1(tmp_path, capsys):
    plan_file = tmp_path / "plan.json"
    plan_file.write_text(PG_PLAN_TEXT)
    assert main(["plan", str(plan_file), "--dialect", "mysql"]) == 1
    assert capsys.readouterr().err.startswith("error: PlanStructureError:")


def test_compare_two_files(tpch_file, tmp_path, capsys):
    other = tmp_path / "other.txt"
    other.write_text(tpch_block(1, 40.0))
    assert main(["compare", "--kind", "tpch", str(tpch_file), str(other)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["runs"] == ["tpch", "other"]
    assert doc["perQuery"]["1"] == [10.0, 40.0]
    assert doc["perQuery"]["2"] == [20.0, None]


def test_compare_single_file(tpch_file, capsys):
    assert main(["compare", str(tpch_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["runs"] == ["tpch"]


def test_compare_sysbench_kind_exits_2(tpch_file):
    with pytest.raises(SystemExit) as exc_info:
        main(["compare", "--kind", "sysbench", str(tpch_file)])
    assert exc_info.value.code == 2


def test_cli_output_is_byte_identical_across_runs(tpch_file, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    main(["parse", "--kind", "tpch", str(tpch_file), "--out", str(out1)])
    main(["parse", "--kind", "tpch", str(tpch_file), "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_serve_on_occupied_port_exits_1(capsys):
    import socket

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    try:
        assert main(["serve", "--port", str(port)]) == 1
        assert capsys.readouterr().err.startswith("error: IOError:")
    finally:
        sock.close()


def test_serve_end_to_end(tmp_path, sysbench_file):
    """benchlens serve in a thread: upload over HTTP, snapshot on shutdown."""
    import threading
    import time

    from benchlens.server import make_server
    from benchlens.session import Session

    snapshot = tmp_path / "snap.json"
    session = Session()
    server = make_server(0, session)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        resp = requests.post(
            f"{base}/v1/runs",
            params={"kind": "sysbench", "name": "s"},
            files={"file": ("sys.log", sysbench_file.read_bytes())},
            timeout=10,
        )
        assert resp.status_code == 201
        assert requests.get(f"{base}/v1/runs", timeout=10).status_code == 200
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
    session.save_snapshot(snapshot)
    assert json.loads(snapshot.read_text())["runs"][0]["name"] == "s"
    time.sleep(0)  # keep flake-prone scheduling explicit
