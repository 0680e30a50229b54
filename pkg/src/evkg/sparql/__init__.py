"""SPARQL-subset query machinery: AST, parser, and two evaluators.

`engine` is the production evaluator (index-backed joins); `naive` is a
deliberately simple nested-loop reference used to cross-check it. Keep the
two implementations independent: they must only agree through the query
semantics, never by sharing evaluation code.
"""

from .algebra import (
    Aliased,
    Arith,
    Bgp,
    Compare,
    ConstExpr,
    Filter,
    Group,
    SelectQuery,
    Solution,
    SubSelect,
    SumAgg,
    TriplePattern,
    Union,
    Values,
    VarExpr,
    Variable,
)
from .errors import QueryError, QuerySemanticsError, QuerySyntaxError, UnsupportedFeatureError
from .parser import parse_query

__all__ = [
    "Aliased",
    "Arith",
    "Bgp",
    "Compare",
    "ConstExpr",
    "Filter",
    "Group",
    "QueryError",
    "QuerySemanticsError",
    "QuerySyntaxError",
    "SelectQuery",
    "Solution",
    "SubSelect",
    "SumAgg",
    "TriplePattern",
    "Union",
    "UnsupportedFeatureError",
    "Values",
    "VarExpr",
    "Variable",
    "parse_query",
]
