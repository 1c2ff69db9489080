"""Shared test data builders: realistic sysbench logs, TPC-H result files,
and randomized EXPLAIN documents with known node counts."""
from __future__ import annotations

import json
import random

from benchlens.sysbench import MetricSample

# ---------------------------------------------------------------------------
# sysbench


def sysbench_line(
    t: int,
    tps: float,
    qps: float = 0.0,
    latency: float = 0.0,
    err: float = 0.0,
    thds: int = 8,
    rwo: tuple[float, float, float] = (0.0, 0.0, 0.0),
    reconn: float = 0.0,
) -> str:
    r, w, o = rwo
    return (
        f"[ {t}s ] thds: {thds} tps: {tps:.2f} qps: {qps:.2f} "
        f"(r/w/o: {r:.2f}/{w:.2f}/{o:.2f}) lat (ms,95%): {latency:.2f} "
        f"err/s: {err:.2f} reconn/s: {reconn:.2f}"
    )


def sysbench_sample(t: int, tps: float, qps: float = 0.0, latency: float = 0.0, err: float = 0.0) -> MetricSample:
    """The sample that sysbench_line(t, tps, ...) should parse to."""
    return MetricSample(
        t=t,
        tps=round(tps, 2),
        qps=round(qps, 2),
        latency=round(latency, 2),
        errors_per_s=round(err, 2),
        extras={
            "thds": 8.0,
            "read_qps": 0.0,
            "write_qps": 0.0,
            "other_qps": 0.0,
            "reconnects_per_s": 0.0,
        },
    )


SYSBENCH_PREAMBLE = """sysbench 1.0.20 (using system LuaJIT 2.1.0-beta3)

Running the test with following options:
Number of threads: 8
Report intermediate results every 1 second(s)
Initializing random number generator from current time

Initializing worker threads...

Threads started!
"""

SYSBENCH_FINAL_REPORT = """SQL statistics:
    queries performed:
        read:                            1456806
        write:                           416230
        other:                           208115
    transactions:                        104057 (1040.20 per sec.)
    queries:                             2081151 (20804.09 per sec.)
    ignored errors:                      1      (0.01 per sec.)
    reconnects:                          0      (0.00 per sec.)

General statistics:
    total time:                          100.0334s
    total number of events:              104057

Latency (ms):
         min:                                    2.17
         avg:                                    7.69
         max:                                  198.34
         95th percentile:                        9.39
         sum:                              800213.12

Threads fairness:
    events (avg/stddev):           13007.1250/103.29
    execution time (avg/stddev):   100.0266/0.02
"""


def sysbench_log(lines: list[str], with_summary: bool = True, preamble: bool = True) -> str:
    parts = []
    if preamble:
        parts.append(SYSBENCH_PREAMBLE)
    parts.extend(lines)
    if with_summary:
        parts.append("")
        parts.append(SYSBENCH_FINAL_REPORT)
    return "\n".join(parts) + "\n"


def random_sysbench_run(rng: random.Random, max_samples: int = 600) -> list[MetricSample]:
    """Random strictly-increasing sample series built from 2-decimal values."""
    n = rng.randint(1, max_samples)
    samples = []
    t = 0
    for _ in range(n):
        t += rng.randint(1, 3)
        samples.append(
            sysbench_sample(
                t,
                tps=rng.randrange(0, 500000) / 100,
                qps=rng.randrange(0, 5000000) / 100,
                latency=rng.randrange(0, 100000) / 100,
                err=rng.randrange(0, 500) / 100,
            )
        )
    return samples


def render_samples(samples: list[MetricSample]) -> list[str]:
    return [
        sysbench_line(s.t, s.tps, s.qps, s.latency, s.errors_per_s) for s in samples
    ]


# ---------------------------------------------------------------------------
# TPC-H


def tpch_block(query_no: int, duration_ms: float | None = None, seconds: float | None = None) -> str:
    lines = [f"-- Query {query_no}", " col_a | col_b ", "-------+-------", " x     | 1 "]
    if seconds is not None:
        lines.append(f"4 rows in set ({seconds:.2f} sec)")
    elif duration_ms is not None:
        lines.append(f"Time: {duration_ms:.3f} ms")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Randomized EXPLAIN documents (expected node counts tracked by construction)

_PG_SCANS = ["Seq Scan", "Index Scan", "Bitmap Heap Scan"]
_PG_INNER = ["Sort", "Aggregate", "Materialize", "Limit", "Gather"]
_PG_JOINS = ["Nested Loop", "Hash Join", "Merge Join"]


def random_pg_plan(rng: random.Random, depth: int = 0) -> tuple[dict, int]:
    """Random PostgreSQL JSON plan node; returns (node, node_count)."""
    roll = rng.random()
    if depth >= 4 or roll < 0.35:
        node = {
            "Node Type": rng.choice(_PG_SCANS),
            "Relation Name": f"t{rng.randint(1, 9)}",
            "Total Cost": rng.randrange(0, 100000) / 100,
            "Plan Rows": rng.randint(0, 100000),
        }
        return node, 1
    if roll < 0.7:
        child, n = random_pg_plan(rng, depth + 1)
        node = {
            "Node Type": rng.choice(_PG_INNER),
            "Total Cost": child.get("Total Cost", 0) + rng.randrange(0, 10000) / 100,
            "Plan Rows": rng.randint(0, 100000),
            "Plans": [child],
        }
        return node, n + 1
    left, nl = random_pg_plan(rng, depth + 1)
    right, nr = random_pg_plan(rng, depth + 1)
    node = {
        "Node Type": rng.choice(_PG_JOINS),
        "Join Type": "Inner",
        "Total Cost": left.get("Total Cost", 0) + right.get("Total Cost", 0) + rng.randrange(0, 10000) / 100,
        "Plan Rows": rng.randint(0, 100000),
        "Plans": [left, right],
    }
    return node, nl + nr + 1


def random_pg_capture(rng: random.Random) -> tuple[str, int]:
    plan, count = random_pg_plan(rng)
    return json.dumps([{"Plan": plan}]), count


_MYSQL_ACCESS = ["ALL", "range", "ref", "eq_ref", "index"]


def _random_mysql_table(rng: random.Random, idx: int) -> dict:
    return {
        "table_name": f"t{idx}",
        "access_type": rng.choice(_MYSQL_ACCESS),
        "rows_examined_per_scan": rng.randint(1, 100000),
        "cost_info": {
            "read_cost": f"{rng.randrange(1, 100000) / 100:.2f}",
            "eval_cost": f"{rng.randrange(1, 10000) / 100:.2f}",
        },
    }


def random_mysql_capture(rng: random.Random) -> tuple[str, int]:
    """Random MySQL query_block: wrappers over a k-table nested_loop.

    Expected node count: wrappers + k tables + (k - 1) joins.
    """
    k = rng.randint(1, 5)
    if k == 1:
        inner: dict = {"table": _random_mysql_table(rng, 1)}
    else:
        inner = {"nested_loop": [{"table": _random_mysql_table(rng, i + 1)} for i in range(k)]}
    count = k + (k - 1)
    for wrapper in rng.sample(
        ["ordering_operation", "grouping_operation", "duplicates_removal"], rng.randint(0, 3)
    ):
        inner = {wrapper: inner}
        count += 1
    block = {"cost_info": {"query_cost": f"{rng.randrange(1, 1000000) / 100:.2f}"}, **inner}
    return json.dumps({"query_block": block}), count


_MARIA_ACCESS = ["ALL", "range", "ref", "eq_ref", "index"]


def _maria_table_json(rng: random.Random, idx: int) -> str:
    return json.dumps(
        {
            "table_name": f"t{idx}",
            "access_type": rng.choice(_MARIA_ACCESS),
            "rows": rng.randint(1, 100000),
        }
    )


def random_mariadb_capture(rng: random.Random) -> tuple[str, int]:
    """Random MariaDB query_block with duplicate sibling "table" keys.

    Rendered by hand (json.dumps would collapse the duplicates).
    """
    k = rng.randint(1, 5)
    entries = [f'"table": {_maria_table_json(rng, i + 1)}' for i in range(k)]
    body = f'"select_id": 1, {", ".join(entries)}'
    count = k + (k - 1)
    for wrapper in rng.sample(["filesort", "temporary_table", "duplicates_removal"], rng.randint(0, 2)):
        body = f'"{wrapper}": {{ {body} }}'
        count += 1
    return f'{{ "query_block": {{ {body} }} }}', count


def random_capture(rng: random.Random) -> tuple[str, int, str]:
    """Random capture in a random dialect: (text, node_count, dialect name)."""
    which = rng.choice(["postgres", "mysql", "mariadb"])
    if which == "postgres":
        text, count = random_pg_capture(rng)
    elif which == "mysql":
        text, count = random_mysql_capture(rng)
    else:
        text, count = random_mariadb_capture(rng)
    return text, count, which
