"""Errors shared by the query parser and evaluators."""

from __future__ import annotations


class QueryError(ValueError):
    pass


class QuerySyntaxError(QueryError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}" if line else message)
        self.line = line
        self.col = col


class UnsupportedFeatureError(QueryError):
    """A recognizable construct outside the supported subset (e.g. OPTIONAL)."""

    def __init__(self, construct: str, line: int = 0, col: int = 0):
        location = f" at line {line}, col {col}" if line else ""
        super().__init__(f"unsupported construct: {construct}{location}")
        self.construct = construct


class QuerySemanticsError(QueryError):
    """A query that parses but is not evaluable (e.g. projecting a non-key)."""
