"""Exception hierarchy shared by parsers, analytics, the session registry and the API.

Every error carries a stable machine-readable ``code`` so the HTTP layer and
the CLI can emit it without mapping tables.
"""
from __future__ import annotations


class BenchlensError(Exception):
    """Base class for all benchlens errors."""

    code = "Error"


class MalformedInput(BenchlensError):
    """Input file is not recognizable as the expected benchmark output."""

    code = "MalformedInput"


class NumericOverflow(BenchlensError):
    """A metric token is not a finite non-negative decimal number."""

    code = "NumericOverflow"


class DuplicateQuery(BenchlensError):
    """The same query number appears twice with conflicting durations."""

    code = "DuplicateQuery"


class UnknownQuery(BenchlensError):
    code = "UnknownQuery"


class UnknownDialect(BenchlensError):
    """No EXPLAIN dialect signature matched the capture."""

    code = "UnknownDialect"


class JsonError(BenchlensError):
    """No JSON value could be extracted, even with lenient repairs."""

    code = "JsonError"


class PlanStructureError(BenchlensError):
    """EXPLAIN capture parsed but its structure is not a valid plan tree."""

    code = "PlanStructureError"


class MetricUnavailable(BenchlensError):
    """No node in the plan carries the requested metric."""

    code = "MetricUnavailable"


class EmptyWindow(BenchlensError):
    """No sample falls inside the requested time window."""

    code = "EmptyWindow"


class DuplicateRunName(BenchlensError):
    code = "DuplicateRunName"


class UnknownRun(BenchlensError):
    code = "UnknownRun"


class WrongKind(BenchlensError):
    """Operation requires a run of a different kind (sysbench vs tpch)."""

    code = "WrongKind"


class NameTaken(BenchlensError):
    code = "NameTaken"


class NoPlanAttached(BenchlensError):
    code = "NoPlanAttached"


class ValidationError(BenchlensError):
    """A request parameter violates its contract (bad kind, inverted window...)."""

    code = "ValidationError"


class ParserError(BenchlensError):
    """Wraps a parser failure with upload context; keeps the original code."""

    code = "ParserError"

    def __init__(self, message: str, cause: BenchlensError | None = None):
        super().__init__(message)
        self.cause = cause

    @property
    def cause_code(self) -> str | None:
        return self.cause.code if self.cause is not None else None
