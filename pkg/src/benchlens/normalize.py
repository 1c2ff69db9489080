"""Canonical operator taxonomy over dialect-native plan trees.

Raw trees keep whatever the DBMS called its operators; here they are mapped
onto a closed 14-class taxonomy, re-rendered in a chosen terminology, summed
into per-operator metric percentages, and exported as the uniform hierarchy
JSON the tree views consume.  The name tables live in operator_names.json so
new operator spellings are data changes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Any

from .errors import JsonError, MetricUnavailable, PlanStructureError
from .explain import Dialect, RawPlanNode


class OperatorClass(str, Enum):
    FULL_SCAN = "FullScan"
    INDEX_SCAN = "IndexScan"
    INDEX_LOOKUP = "IndexLookup"
    SORT = "Sort"
    AGGREGATE = "Aggregate"
    NESTED_LOOP_JOIN = "NestedLoopJoin"
    HASH_JOIN = "HashJoin"
    MERGE_JOIN = "MergeJoin"
    MATERIALIZE = "Materialize"
    LIMIT = "Limit"
    DISTINCT = "Distinct"
    GATHER = "Gather"
    SUBQUERY_SCAN = "SubqueryScan"
    OTHER = "Other"


class Terminology(str, Enum):
    CANONICAL = "canonical"
    POSTGRES = "postgres"
    MYSQL = "mysql"
    MARIADB = "mariadb"


class PlanMetric(str, Enum):
    COST = "cost"
    ROWS = "rows"


def _load_name_tables() -> dict[str, Any]:
    with resources.files(__package__).joinpath("operator_names.json").open("r", encoding="utf-8") as f:
        return json.load(f)


_TABLES = _load_name_tables()
_CLASSIFY: dict[str, dict[str, str]] = _TABLES["classify"]
_DISPLAY: dict[str, dict[str, str]] = _TABLES["display"]


@dataclass
class PlanNode:
    """Dialect-independent plan node; structure mirrors the raw tree."""

    op_class: OperatorClass
    display_name: str
    raw_op_name: str
    dialect: Dialect
    cost: float | None = None
    self_cost: float | None = None
    rows: float | None = None
    relation: str | None = None
    condition: str | None = None
    extras: dict[str, str] = field(default_factory=dict)
    children: list["PlanNode"] = field(default_factory=list)

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


def classify(raw_op_name: str, dialect: Dialect) -> OperatorClass:
    """Map a dialect-native operator label onto the canonical taxonomy.

    Total function: qualified labels ("Aggregate (Sorted)") fall back to their
    base name; anything unmatched is OperatorClass.OTHER.
    """
    table = _CLASSIFY[dialect.value]
    name = table.get(raw_op_name)
    if name is None and " (" in raw_op_name:
        name = table.get(raw_op_name.split(" (", 1)[0])
    return OperatorClass(name) if name is not None else OperatorClass.OTHER


def _display_name(op_class: OperatorClass, term: Terminology, raw_op_name: str) -> str:
    if op_class is OperatorClass.OTHER:
        return raw_op_name
    style = _DISPLAY[term.value]
    return style.get(op_class.value) or _DISPLAY[Terminology.CANONICAL.value][op_class.value]


def normalize(raw: RawPlanNode, dialect: Dialect) -> PlanNode:
    """Lift a raw tree into the canonical model, computing exclusive costs.

    PostgreSQL costs are cumulative, so a node's own share is its cost minus
    its children's (clamped at zero); MySQL/MariaDB report per-operator costs
    which pass through unchanged.
    """
    children = [normalize(c, dialect) for c in raw.children]
    self_cost = raw.cost
    if dialect is Dialect.POSTGRES and raw.cost is not None:
        child_sum = sum(c.cost for c in raw.children if c.cost is not None)
        self_cost = max(0.0, raw.cost - child_sum)
    op_class = classify(raw.raw_op_name, dialect)
    return PlanNode(
        op_class=op_class,
        display_name=_display_name(op_class, Terminology.CANONICAL, raw.raw_op_name),
        raw_op_name=raw.raw_op_name,
        dialect=dialect,
        cost=raw.cost,
        self_cost=self_cost,
        rows=raw.rows,
        relation=raw.relation,
        condition=raw.condition,
        extras=dict(raw.extras),
        children=children,
    )


def render_terminology(tree: PlanNode, term: Terminology) -> PlanNode:
    """Rewrite every display name in the target style; classes and structure
    are untouched, OTHER nodes keep their raw label."""
    return PlanNode(
        op_class=tree.op_class,
        display_name=_display_name(tree.op_class, term, tree.raw_op_name),
        raw_op_name=tree.raw_op_name,
        dialect=tree.dialect,
        cost=tree.cost,
        self_cost=tree.self_cost,
        rows=tree.rows,
        relation=tree.relation,
        condition=tree.condition,
        extras=dict(tree.extras),
        children=[render_terminology(c, term) for c in tree.children],
    )


def metric_percentages(tree: PlanNode, metric: PlanMetric) -> list[tuple[str, float]]:
    """Per-operator shares of the chosen metric, grouped by display name.

    Shares are percentages of the tree total (exclusive cost for COST, row
    estimates for ROWS); nodes lacking the metric contribute zero.  Raises
    MetricUnavailable when the tree total is zero, which covers both trees
    without the metric and all-zero trees (no proportions exist either way).
    """
    groups: dict[str, float] = {}
    for node in tree.walk():
        value = node.self_cost if metric is PlanMetric.COST else node.rows
        groups.setdefault(node.display_name, 0.0)
        if value is not None:
            groups[node.display_name] += value
    total = sum(groups.values())
    if total <= 0:
        raise MetricUnavailable(f"no node carries a positive {metric.value} value")
    # ratio first: value/total stays in [0, 1], so shares never exceed 100
    shares = [(label, 100.0 * (value / total)) for label, value in groups.items()]
    shares.sort(key=lambda item: (-item[1], item[0]))
    return shares


# ---------------------------------------------------------------------------
# Uniform hierarchy document

_RAW_OP_KEY = "rawOp"


def hierarchy_dict(tree: PlanNode) -> dict[str, Any]:
    """The hierarchy document as a dict with deterministic key order."""
    return {
        "name": tree.display_name,
        "opClass": tree.op_class.value,
        "dialect": tree.dialect.value,
        "attrs": {
            "cost": tree.cost,
            "selfCost": tree.self_cost,
            "rows": tree.rows,
            "relation": tree.relation,
            "condition": tree.condition,
            "extra": {_RAW_OP_KEY: tree.raw_op_name, **tree.extras},
        },
        "children": [hierarchy_dict(c) for c in tree.children],
    }


def to_hierarchy_json(tree: PlanNode) -> str:
    """Serialize to the uniform hierarchy format (compact, deterministic)."""
    return json.dumps(hierarchy_dict(tree), ensure_ascii=False, separators=(",", ":"))


def _node_from_doc(doc: Any) -> PlanNode:
    if not isinstance(doc, dict):
        raise PlanStructureError("hierarchy node is not an object")
    try:
        attrs = doc["attrs"]
        extra = dict(attrs.get("extra", {}))
        raw_op = extra.pop(_RAW_OP_KEY, doc["name"])
        return PlanNode(
            op_class=OperatorClass(doc["opClass"]),
            display_name=doc["name"],
            raw_op_name=raw_op,
            dialect=Dialect(doc["dialect"]),
            cost=attrs.get("cost"),
            self_cost=attrs.get("selfCost"),
            rows=attrs.get("rows"),
            relation=attrs.get("relation"),
            condition=attrs.get("condition"),
            extras={k: str(v) for k, v in extra.items()},
            children=[_node_from_doc(c) for c in doc.get("children", [])],
        )
    except (KeyError, ValueError) as exc:
        raise PlanStructureError(f"invalid hierarchy document: {exc}") from None


def from_hierarchy_json(text: str) -> PlanNode:
    """Inverse of to_hierarchy_json (used for round-trip checks and tooling)."""
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise JsonError(f"hierarchy document is not valid JSON: {exc}") from None
    return _node_from_doc(doc)
