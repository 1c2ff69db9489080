"""benchlens: cross-DBMS benchmark analytics.

Parses sysbench OLTP output, TPC-H result files and EXPLAIN captures from
PostgreSQL, MySQL and MariaDB into unified models; computes comparison
analytics; serves everything to the exploration dashboard over HTTP.
"""
from . import errors
from .analytics import (
    OltpMetric,
    TpchComparison,
    WindowAverages,
    build_comparison,
    full_average,
    window_average,
)
from .explain import (
    Dialect,
    RawPlanNode,
    detect_dialect,
    parse_mariadb_plan,
    parse_mysql_plan,
    parse_plan,
    parse_postgres_plan,
    read_lenient_json,
)
from .normalize import (
    OperatorClass,
    PlanMetric,
    PlanNode,
    Terminology,
    classify,
    from_hierarchy_json,
    hierarchy_dict,
    metric_percentages,
    normalize,
    render_terminology,
    to_hierarchy_json,
)
from .session import RunKind, RunRecord, Session
from .sysbench import MetricSample, SysbenchRun, SysbenchSummary, parse_sysbench
from .tpch import QueryResult, TpchRun, attach_plan, parse_tpch

__version__ = "0.1.0"

__all__ = [
    "errors",
    "OltpMetric",
    "TpchComparison",
    "WindowAverages",
    "build_comparison",
    "full_average",
    "window_average",
    "Dialect",
    "RawPlanNode",
    "detect_dialect",
    "parse_mariadb_plan",
    "parse_mysql_plan",
    "parse_plan",
    "parse_postgres_plan",
    "read_lenient_json",
    "OperatorClass",
    "PlanMetric",
    "PlanNode",
    "Terminology",
    "classify",
    "from_hierarchy_json",
    "hierarchy_dict",
    "metric_percentages",
    "normalize",
    "render_terminology",
    "to_hierarchy_json",
    "RunKind",
    "RunRecord",
    "Session",
    "MetricSample",
    "SysbenchRun",
    "SysbenchSummary",
    "parse_sysbench",
    "QueryResult",
    "TpchRun",
    "attach_plan",
    "parse_tpch",
]
