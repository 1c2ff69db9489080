"""Parsers for raw EXPLAIN captures from PostgreSQL, MySQL and MariaDB.

Each DBMS prints its plan in a different shape: PostgreSQL as a JSON array
(or classic indented text), MySQL as a ``query_block`` JSON object with
``cost_info`` entries, MariaDB as a ``query_block`` object without costs and
with join order listed as a sequence of sibling table entries (its output is
not strictly valid JSON: keys repeat).  All three are turned into a single
dialect-tagged raw operator tree.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .errors import JsonError, PlanStructureError, UnknownDialect

Pairs = list[tuple[str, Any]]


class Dialect(str, Enum):
    POSTGRES = "postgres"
    MYSQL = "mysql"
    MARIADB = "mariadb"


@dataclass
class RawPlanNode:
    """Operator node as reported by the source DBMS, untranslated."""

    raw_op_name: str
    cost: float | None = None
    rows: float | None = None
    relation: str | None = None
    condition: str | None = None
    extras: dict[str, str] = field(default_factory=dict)
    children: list["RawPlanNode"] = field(default_factory=list)

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)


# ---------------------------------------------------------------------------
# Lenient JSON reading

# String-aware trailing-comma removal (lookahead ensures we are outside quotes).
_TRAILING_OBJ_COMMA_RE = re.compile(r'(,)\s*}(?=([^"\\]*(\\.|"([^"\\]*\\.)*[^"\\]*"))*[^"]*$)')
_TRAILING_ARR_COMMA_RE = re.compile(r'(,)\s*\](?=([^"\\]*(\\.|"([^"\\]*\\.)*[^"\\]*"))*[^"]*$)')


def _strip_trailing_commas(text: str) -> str:
    return _TRAILING_ARR_COMMA_RE.sub("]", _TRAILING_OBJ_COMMA_RE.sub("}", text))


def _lenient_value(text: str, pairs_hook: Any = None) -> Any:
    """Extract one JSON value, tolerating noise lines, trailing commas and
    duplicate keys.  Raises JsonError when nothing parses."""
    decoder = json.JSONDecoder(object_pairs_hook=pairs_hook)
    candidates = [text]
    stripped = _strip_trailing_commas(text)
    if stripped != text:
        candidates.append(stripped)

    for cand in candidates:
        try:
            return decoder.decode(cand)
        except ValueError:
            pass

    # Client banners and echoes surround the JSON; the value itself starts at
    # the beginning of some line.  Trailing noise after the value is dropped.
    for cand in candidates:
        offset = 0
        for line in cand.splitlines(keepends=True):
            lead = len(line) - len(line.lstrip())
            start = offset + lead
            offset += len(line)
            if start >= len(cand) or cand[start] not in "{[":
                continue
            try:
                value, _ = decoder.raw_decode(cand, start)
                return value
            except ValueError:
                continue
    raise JsonError("no JSON value could be extracted from the capture")


def read_lenient_json(text: str) -> Any:
    """Parse *text* as JSON; strict documents parse unchanged.

    Tolerates exactly three non-conformances seen in client captures:
    surrounding noise lines, trailing commas, and duplicate keys (last one
    wins).
    """
    return _lenient_value(text)


def _read_lenient_pairs(text: str) -> Any:
    """Like read_lenient_json but objects become ordered (key, value) lists,
    preserving duplicate keys (MariaDB lists join order that way)."""
    return _lenient_value(text, pairs_hook=lambda pairs: list(pairs))


def _obj_pairs(value: Any) -> Pairs | None:
    """The pairs list for a JSON object, or None when *value* is not one.

    With the pairs hook, objects arrive as lists of (str, value) tuples;
    plain JSON arrays stay lists of arbitrary values.
    """
    if isinstance(value, list) and all(
        isinstance(p, tuple) and len(p) == 2 and isinstance(p[0], str) for p in value
    ):
        return value
    return None


def _pget(pairs: Pairs, key: str, default: Any = None) -> Any:
    for k, v in pairs:
        if k == key:
            return v
    return default


def _phas(pairs: Pairs, key: str) -> bool:
    return any(k == key for k, _ in pairs)


# ---------------------------------------------------------------------------
# Dialect detection

_PG_TEXT_COST_RE = re.compile(r"\(cost=\d+(?:\.\d+)?\.\.\d+(?:\.\d+)?\s+rows=\d+\s+width=\d+\)")


def _contains_key(value: Any, key: str) -> bool:
    if isinstance(value, dict):
        if key in value:
            return True
        return any(_contains_key(v, key) for v in value.values())
    if isinstance(value, list):
        return any(_contains_key(v, key) for v in value)
    return False


def detect_dialect(text: str) -> Dialect:
    """Identify the source DBMS of an EXPLAIN capture.

    Signature priority: PostgreSQL, then MySQL, then MariaDB.
    """
    if not text.strip():
        raise UnknownDialect("empty capture")
    try:
        value = read_lenient_json(text)
    except JsonError:
        value = None

    if isinstance(value, list) and value and isinstance(value[0], dict) and "Plan" in value[0]:
        return Dialect.POSTGRES
    if isinstance(value, dict):
        if "Plan" in value:
            return Dialect.POSTGRES
        if "query_block" in value:
            if _contains_key(value, "cost_info"):
                return Dialect.MYSQL
            return Dialect.MARIADB

    if _PG_TEXT_COST_RE.search(text):
        return Dialect.POSTGRES
    raise UnknownDialect("capture matches no known EXPLAIN signature")


# ---------------------------------------------------------------------------
# Shared numeric validation


def _number(value: Any, what: str) -> float:
    try:
        num = float(value)
    except (TypeError, ValueError):
        raise PlanStructureError(f"{what} value {value!r} is not numeric") from None
    if not math.isfinite(num) or num < 0:
        raise PlanStructureError(f"{what} value {value!r} is not a finite non-negative number")
    return num


# ---------------------------------------------------------------------------
# PostgreSQL

_PG_CONDITION_KEYS = (
    "Index Cond",
    "Recheck Cond",
    "Hash Cond",
    "Merge Cond",
    "Join Filter",
    "Filter",
    "One-Time Filter",
    "TID Cond",
)
_PG_EXTRA_KEYS = (
    "Strategy",
    "Join Type",
    "Partial Mode",
    "Parent Relationship",
    "Alias",
    "Startup Cost",
    "Plan Width",
    "Sort Key",
    "Group Key",
    "Sort Method",
    "Scan Direction",
)

_PG_TEXT_NODE_RE = re.compile(
    r"^(?P<lead>\s*)(?:->\s+)?(?P<name>\S.*?)\s+"
    r"\(cost=(?P<c0>\d+(?:\.\d+)?)\.\.(?P<c1>\d+(?:\.\d+)?)"
    r"\s+rows=(?P<rows>\d+)\s+width=(?P<width>\d+)\)"
    r"(?:\s*\(actual.*\))?\s*$"
)
_PG_TEXT_ATTR_RE = re.compile(r"^(?P<lead>\s*)(?P<key>[A-Z][A-Za-z -]*):\s*(?P<val>.*\S)\s*$")
_PG_NAME_USING_ON_RE = re.compile(r"^(?P<op>.*?)\s+using\s+(?P<index>\S+)\s+on\s+(?P<rel>\S+)(?:\s+(?P<alias>\S+))?$")
_PG_NAME_ON_RE = re.compile(r"^(?P<op>.*?)\s+on\s+(?P<rel>\S+)(?:\s+(?P<alias>\S+))?$")


def _stringify(value: Any) -> str:
    if isinstance(value, list):
        return ", ".join(str(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _pg_json_node(obj: Any) -> RawPlanNode:
    if not isinstance(obj, dict):
        raise PlanStructureError("plan node is not an object")
    node_type = obj.get("Node Type")
    if not isinstance(node_type, str) or not node_type:
        raise PlanStructureError('plan node misses "Node Type"')
    qualifier = obj.get("Strategy") or obj.get("Join Type")
    name = f"{node_type} ({qualifier})" if qualifier else node_type

    cost = _number(obj["Total Cost"], "Total Cost") if "Total Cost" in obj else None
    rows = _number(obj["Plan Rows"], "Plan Rows") if "Plan Rows" in obj else None
    relation = obj.get("Relation Name") or obj.get("Index Name")

    condition = None
    extras: dict[str, str] = {}
    for key in _PG_CONDITION_KEYS:
        if key in obj:
            if condition is None:
                condition = _stringify(obj[key])
            else:
                extras[key] = _stringify(obj[key])
    for key in _PG_EXTRA_KEYS:
        if key in obj:
            extras[key] = _stringify(obj[key])
    if "Index Name" in obj and obj.get("Relation Name"):
        extras["Index Name"] = str(obj["Index Name"])

    children = []
    plans = obj.get("Plans", [])
    if not isinstance(plans, list):
        raise PlanStructureError('"Plans" must be an array')
    for child in plans:
        children.append(_pg_json_node(child))
    return RawPlanNode(
        raw_op_name=name,
        cost=cost,
        rows=rows,
        relation=relation,
        condition=condition,
        extras=extras,
        children=children,
    )


def _pg_split_name(name: str, extras: dict[str, str]) -> tuple[str, str | None]:
    m = _PG_NAME_USING_ON_RE.match(name)
    if m:
        extras["Index Name"] = m.group("index")
        if m.group("alias"):
            extras["Alias"] = m.group("alias")
        return m.group("op"), m.group("rel")
    m = _PG_NAME_ON_RE.match(name)
    if m:
        if m.group("alias"):
            extras["Alias"] = m.group("alias")
        return m.group("op"), m.group("rel")
    return name, None


def _pg_text_tree(text: str) -> RawPlanNode:
    root: RawPlanNode | None = None
    stack: list[tuple[int, RawPlanNode]] = []
    # first condition annotation wins, like the JSON path's priority order
    conditioned: set[int] = set()

    for line in text.splitlines():
        m = _PG_TEXT_NODE_RE.match(line)
        if m:
            is_child = "->" in line[: m.end("lead") + 3]
            extras = {"Startup Cost": m.group("c0"), "Plan Width": m.group("width")}
            op, rel = _pg_split_name(m.group("name"), extras)
            node = RawPlanNode(
                raw_op_name=op,
                cost=_number(m.group("c1"), "cost"),
                rows=_number(m.group("rows"), "rows"),
                relation=rel,
                extras=extras,
            )
            depth = len(m.group("lead"))
            if not is_child:
                if root is not None:
                    raise PlanStructureError("multiple root lines in text plan")
                root = node
                stack = [(depth - 1, node)]
            else:
                if root is None:
                    raise PlanStructureError("child marker before any root line")
                while stack and stack[-1][0] >= depth:
                    stack.pop()
                if not stack:
                    raise PlanStructureError(f"inconsistent indentation at {line.strip()!r}")
                stack[-1][1].children.append(node)
                stack.append((depth, node))
            continue

        if root is None:
            continue  # pre-plan noise (psql headers, SQL echo)
        m = _PG_TEXT_ATTR_RE.match(line)
        if m and stack and len(m.group("lead")) > stack[-1][0]:
            node = stack[-1][1]
            key, val = m.group("key"), m.group("val")
            if key in _PG_CONDITION_KEYS and id(node) not in conditioned:
                node.condition = val
                conditioned.add(id(node))
            else:
                node.extras[key] = val

    if root is None:
        raise PlanStructureError("no cost-annotated plan line found in text capture")
    return root


def parse_postgres_plan(text: str) -> RawPlanNode:
    """Parse EXPLAIN (FORMAT JSON) or classic indented text output."""
    try:
        value = read_lenient_json(text)
    except JsonError:
        return _pg_text_tree(text)

    if isinstance(value, list):
        if not value or not isinstance(value[0], dict) or "Plan" not in value[0]:
            raise PlanStructureError('expected a one-element array holding a "Plan" object')
        return _pg_json_node(value[0]["Plan"])
    if isinstance(value, dict) and "Plan" in value:
        return _pg_json_node(value["Plan"])
    raise PlanStructureError('JSON capture has no "Plan" object')


# ---------------------------------------------------------------------------
# MySQL

_MYSQL_WRAPPERS = ("ordering_operation", "grouping_operation", "duplicates_removal")
_MYSQL_FLAG_KEYS = ("using_filesort", "using_temporary_table")
_MYSQL_TABLE_EXTRA_KEYS = ("key", "used_key_parts", "using_index", "ref")


def _cost_from_info(info: Any, keys: tuple[str, ...]) -> float | None:
    if not isinstance(info, dict):
        return None
    values = [_number(info[k], k) for k in keys if k in info]
    if not values:
        return None
    return sum(values)


def _mysql_subquery_children(obj: dict) -> list[RawPlanNode]:
    children: list[RawPlanNode] = []
    mfs = obj.get("materialized_from_subquery")
    if isinstance(mfs, dict) and "query_block" in mfs:
        children.append(_mysql_block(mfs["query_block"]))
    for sub in obj.get("attached_subqueries", []):
        if isinstance(sub, dict) and "query_block" in sub:
            children.append(_mysql_block(sub["query_block"]))
    return children


def _mysql_table(table: Any) -> RawPlanNode:
    if not isinstance(table, dict):
        raise PlanStructureError('"table" entry is not an object')
    rows = table.get("rows_examined_per_scan", table.get("rows"))
    extras = {k: _stringify(table[k]) for k in _MYSQL_TABLE_EXTRA_KEYS if k in table}
    return RawPlanNode(
        raw_op_name=str(table.get("access_type", "table")),
        cost=_cost_from_info(table.get("cost_info"), ("read_cost", "eval_cost")),
        rows=_number(rows, "rows") if rows is not None else None,
        relation=table.get("table_name"),
        condition=table.get("attached_condition"),
        extras=extras,
        children=_mysql_subquery_children(table),
    )


def _mysql_chain(nodes: list[RawPlanNode]) -> RawPlanNode:
    acc = nodes[0]
    for nxt in nodes[1:]:
        acc = RawPlanNode(raw_op_name="nested_loop", children=[acc, nxt])
    return acc


def _mysql_block(block: Any) -> RawPlanNode:
    if not isinstance(block, dict):
        raise PlanStructureError("query block is not an object")

    for key in _MYSQL_WRAPPERS:
        if key in block:
            inner = block[key]
            if not isinstance(inner, dict):
                raise PlanStructureError(f'"{key}" is not an object')
            extras = {k: _stringify(inner[k]) for k in _MYSQL_FLAG_KEYS if k in inner}
            node = RawPlanNode(
                raw_op_name=key,
                cost=_cost_from_info(inner.get("cost_info"), ("read_cost", "eval_cost", "sort_cost")),
                extras=extras,
                children=[_mysql_block(inner)],
            )
            node.children.extend(_mysql_subquery_children(inner))
            return node

    if "nested_loop" in block:
        entries = block["nested_loop"]
        if not isinstance(entries, list) or not entries:
            raise PlanStructureError('"nested_loop" must be a non-empty array')
        nodes = []
        for entry in entries:
            if isinstance(entry, dict) and "table" in entry:
                nodes.append(_mysql_table(entry["table"]))
            else:
                nodes.append(_mysql_block(entry))
        node = _mysql_chain(nodes)
        node.children.extend(_mysql_subquery_children(block))
        return node

    if "table" in block:
        node = _mysql_table(block["table"])
        node.children.extend(_mysql_subquery_children(block))
        return node

    raise PlanStructureError("query block holds no operator-bearing construct")


def parse_mysql_plan(text: str) -> RawPlanNode:
    """Parse MySQL EXPLAIN FORMAT=JSON output."""
    value = read_lenient_json(text)
    if not isinstance(value, dict) or "query_block" not in value:
        raise PlanStructureError('capture has no "query_block" object')
    qb = value["query_block"]
    if not isinstance(qb, dict):
        raise PlanStructureError('"query_block" is not an object')
    root = _mysql_block(qb)
    if root.cost is None:
        info = qb.get("cost_info")
        if isinstance(info, dict) and "query_cost" in info:
            root.cost = _number(info["query_cost"], "query_cost")
    return root


# ---------------------------------------------------------------------------
# MariaDB

_MARIA_WRAPPERS = (
    "read_sorted_file",
    "filesort",
    "duplicates_removal",
    "temporary_table",
    "ordering_operation",
    "grouping_operation",
)
_MARIA_WRAPPER_ATTR_KEYS = ("sort_key",)
_MARIA_TABLE_EXTRA_KEYS = ("key", "used_key_parts", "using_index", "ref")
_MARIA_JOIN_ATTR_KEYS = ("join_type", "buffer_type", "buffer_size")


def _maria_subquery_children(pairs: Pairs) -> list[RawPlanNode]:
    children: list[RawPlanNode] = []
    for key, value in pairs:
        obj = _obj_pairs(value)
        if key in ("materialized", "materialized_from_subquery") and obj is not None:
            if _phas(obj, "query_block"):
                children.append(_maria_block(_pget(obj, "query_block")))
        elif key in ("subqueries", "attached_subqueries") and isinstance(value, list):
            for sub in value:
                sub_obj = _obj_pairs(sub)
                if sub_obj is not None and _phas(sub_obj, "query_block"):
                    children.append(_maria_block(_pget(sub_obj, "query_block")))
    return children


def _maria_table(value: Any) -> RawPlanNode:
    pairs = _obj_pairs(value)
    if pairs is None:
        raise PlanStructureError('"table" entry is not an object')
    rows = _pget(pairs, "rows", _pget(pairs, "rows_examined_per_scan"))
    extras = {k: _stringify(v) for k, v in pairs if k in _MARIA_TABLE_EXTRA_KEYS}
    cost_info = _obj_pairs(_pget(pairs, "cost_info"))
    return RawPlanNode(
        raw_op_name=str(_pget(pairs, "access_type", "table")),
        cost=_cost_from_info(dict(cost_info), ("read_cost", "eval_cost")) if cost_info else None,
        rows=_number(rows, "rows") if rows is not None else None,
        relation=_pget(pairs, "table_name"),
        condition=_pget(pairs, "attached_condition"),
        extras=extras,
        children=_maria_subquery_children(pairs),
    )


def _maria_block(value: Any) -> RawPlanNode:
    """Build the subtree for one MariaDB query block.

    Sibling table entries (plain or inside block-nl-join wrappers) are the
    join order; k of them synthesize k-1 left-deep join nodes.
    """
    pairs = _obj_pairs(value)
    if pairs is None:
        raise PlanStructureError("query block is not an object")

    items: list[tuple[RawPlanNode, dict[str, str] | None, str | None]] = []

    for key, val in pairs:
        if key == "table":
            items.append((_maria_table(val), None, None))
        elif key == "block-nl-join":
            obj = _obj_pairs(val)
            if obj is None or not _phas(obj, "table"):
                raise PlanStructureError('"block-nl-join" misses its "table"')
            join_extras = {k: _stringify(v) for k, v in obj if k in _MARIA_JOIN_ATTR_KEYS}
            items.append(
                (_maria_table(_pget(obj, "table")), join_extras, _pget(obj, "attached_condition"))
            )
        elif key == "nested_loop":
            if not isinstance(val, list) or not val:
                raise PlanStructureError('"nested_loop" must be a non-empty array')
            for entry in val:
                entry_obj = _obj_pairs(entry)
                if entry_obj is not None and _phas(entry_obj, "table"):
                    items.append((_maria_table(_pget(entry_obj, "table")), None, None))
                else:
                    items.append((_maria_block(entry), None, None))
        elif key in _MARIA_WRAPPERS:
            obj = _obj_pairs(val)
            if obj is None:
                raise PlanStructureError(f'"{key}" is not an object')
            extras = {k: _stringify(v) for k, v in obj if k in _MARIA_WRAPPER_ATTR_KEYS}
            items.append((RawPlanNode(raw_op_name=key, extras=extras, children=[_maria_block(obj)]), None, None))

    sub_children = _maria_subquery_children(pairs)

    if not items:
        raise PlanStructureError("query block holds no operator-bearing construct")

    acc = items[0][0]
    for node, join_extras, join_cond in items[1:]:
        acc = RawPlanNode(
            raw_op_name="nested_loop",
            condition=join_cond,
            extras=join_extras or {},
            children=[acc, node],
        )
    acc.children.extend(sub_children)
    return acc


def parse_mariadb_plan(text: str) -> RawPlanNode:
    """Parse MariaDB EXPLAIN/ANALYZE FORMAT=JSON output (duplicate keys kept)."""
    value = _read_lenient_pairs(text)
    pairs = _obj_pairs(value)
    if pairs is None or not _phas(pairs, "query_block"):
        raise PlanStructureError('capture has no "query_block" object')
    return _maria_block(_pget(pairs, "query_block"))


_PARSERS = {
    Dialect.POSTGRES: parse_postgres_plan,
    Dialect.MYSQL: parse_mysql_plan,
    Dialect.MARIADB: parse_mariadb_plan,
}


def parse_plan(text: str, dialect: Dialect | None = None) -> tuple[RawPlanNode, Dialect]:
    """Parse a capture with the named parser, auto-detecting when *dialect* is None."""
    if dialect is None:
        dialect = detect_dialect(text)
    return _PARSERS[dialect](text), dialect
