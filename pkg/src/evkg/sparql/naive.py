"""Nested-loop reference evaluator.

This is the oracle the indexed engine is checked against, and the producer
of the committed expected-result files. It shares the AST and term model
with the engine but none of the evaluation machinery: every pattern is
matched by scanning the full triple list, joins are plain nested loops over
binding compatibility, and expression semantics are re-implemented here
from scratch. Keep it simple and obviously correct; do not optimize it.
"""

from __future__ import annotations

from fractions import Fraction

from ..graph import Graph
from ..terms import (
    XSD_BOOLEAN,
    Literal,
    Term,
    Triple,
    numeric_literal,
    numeric_value,
)
from .algebra import (
    Aliased,
    Arith,
    Bgp,
    Compare,
    ConstExpr,
    Filter,
    Group,
    Pattern,
    SelectQuery,
    Solution,
    SubSelect,
    SumAgg,
    Union,
    Values,
    VarExpr,
    Variable,
    expression_has_aggregate,
    projection_names,
)
from .errors import QuerySemanticsError


class _Error(Exception):
    pass


def _unify(pattern_pos, value: Term, binding: dict) -> dict | None:
    if isinstance(pattern_pos, Variable):
        bound = binding.get(pattern_pos.name)
        if bound is None:
            extended = dict(binding)
            extended[pattern_pos.name] = value
            return extended
        return binding if bound == value else None
    return binding if pattern_pos == value else None


def _match_triple(tp, triple: Triple, binding: dict) -> dict | None:
    b = _unify(tp.s, triple.subject, binding)
    if b is None:
        return None
    b = _unify(tp.p, triple.predicate, b)
    if b is None:
        return None
    return _unify(tp.o, triple.object, b)


def _compatible(a: dict, b: dict) -> bool:
    for key in a:
        if key in b and a[key] != b[key]:
            return False
    return True


def _join(left: list[dict], right: list[dict]) -> list[dict]:
    out = []
    for l in left:  # noqa: E741
        for r in right:
            if _compatible(l, r):
                merged = dict(l)
                merged.update(r)
                out.append(merged)
    return out


def _rows(triples: list[Triple], graph: Graph, pattern: Pattern) -> list[dict]:
    if isinstance(pattern, Bgp):
        rows = [{}]
        for tp in pattern.patterns:  # written order, no reordering
            next_rows = []
            for binding in rows:
                for triple in triples:
                    extended = _match_triple(tp, triple, binding)
                    if extended is not None:
                        next_rows.append(extended)
            rows = next_rows
        return rows
    if isinstance(pattern, Group):
        rows = [{}]
        for element in pattern.elements:
            rows = _join(rows, _rows(triples, graph, element))
        return rows
    if isinstance(pattern, Union):
        return _rows(triples, graph, pattern.left) + _rows(triples, graph, pattern.right)
    if isinstance(pattern, Filter):
        kept = []
        for row in _rows(triples, graph, pattern.inner):
            try:
                value = _expr(pattern.expression, row)
            except _Error:
                continue
            if _truth(value):
                kept.append(row)
        return kept
    if isinstance(pattern, Values):
        return [dict(zip((v.name for v in pattern.variables), row)) for row in pattern.rows]
    if isinstance(pattern, SubSelect):
        return evaluate(graph, pattern.query).rows
    raise TypeError(f"not a pattern: {pattern!r}")


# --- expressions, re-implemented independently ------------------------------


def _num(term: Term):
    if isinstance(term, Literal):
        parsed = numeric_value(term)
        if parsed is not None:
            return parsed
    raise _Error("not numeric")


def _expr(expr, row: dict) -> Term:
    if isinstance(expr, VarExpr):
        if expr.var.name not in row:
            raise _Error("unbound")
        return row[expr.var.name]
    if isinstance(expr, ConstExpr):
        return expr.term
    if isinstance(expr, Compare):
        result = _cmp(expr.op, _expr(expr.left, row), _expr(expr.right, row))
        return Literal("true" if result else "false", XSD_BOOLEAN)
    if isinstance(expr, Arith):
        return _arith(expr.op, _expr(expr.left, row), _expr(expr.right, row))
    if isinstance(expr, SumAgg):
        raise _Error("aggregate outside grouping")
    raise TypeError(f"not an expression: {expr!r}")


def _arith(op: str, left: Term, right: Term) -> Literal:
    kind_l, a = _num(left)
    kind_r, b = _num(right)
    order = ["integer", "decimal", "double"]
    kind = order[max(order.index(kind_l), order.index(kind_r))]
    if op == "+":
        return numeric_literal(kind, a + b)
    if op == "-":
        return numeric_literal(kind, a - b)
    if op == "*":
        return numeric_literal(kind, a * b)
    if op == "/":
        if b == 0:
            raise _Error("division by zero")
        if kind == "double":
            return numeric_literal("double", a / b)
        return numeric_literal("decimal", Fraction(a) / Fraction(b))
    raise _Error("bad operator")


def _string_like(term: Term) -> bool:
    return isinstance(term, Literal) and term.datatype.value.endswith("#string")


def _cmp(op: str, left: Term, right: Term) -> bool:
    if isinstance(left, Literal) and isinstance(right, Literal):
        try:
            _, a = _num(left)
            _, b = _num(right)
            return _rel(op, a, b)
        except _Error:
            pass
        if _string_like(left) and _string_like(right):
            return _rel(op, left.lexical, right.lexical)
        if left == right:
            if op in ("=", "<=", ">="):
                return True
            if op == "!=":
                return False
            return False
        if left.datatype == right.datatype and op in ("=", "!="):
            return op == "!="
        raise _Error("incomparable literals")
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    raise _Error("ordering needs literals")


def _rel(op: str, a, b) -> bool:
    return {
        "=": a == b,
        "!=": a != b,
        "<": a < b,
        "<=": a <= b,
        ">": a > b,
        ">=": a >= b,
    }[op]


def _truth(term: Term) -> bool:
    if isinstance(term, Literal):
        if term.datatype == XSD_BOOLEAN:
            return term.lexical == "true"
        parsed = numeric_value(term)
        if parsed is not None:
            return parsed[1] == parsed[1] and parsed[1] != 0
        if _string_like(term):
            return term.lexical != ""
    return False


def _sum_over(expr, rows: list[dict]) -> Literal:
    order = ["integer", "decimal", "double"]
    kind = "integer"
    total = 0
    for row in rows:
        value = _expr(expr, row)  # _Error propagates: unbound SUM for the group
        knd, num = _num(value)
        kind = order[max(order.index(kind), order.index(knd))]
        total = total + num
    return numeric_literal(kind, total)


def _agg_expr(expr, key_binding: dict, rows: list[dict]) -> Term:
    if isinstance(expr, SumAgg):
        return _sum_over(expr.expr, rows)
    if isinstance(expr, Compare):
        result = _cmp(
            expr.op,
            _agg_expr(expr.left, key_binding, rows),
            _agg_expr(expr.right, key_binding, rows),
        )
        return Literal("true" if result else "false", XSD_BOOLEAN)
    if isinstance(expr, Arith):
        return _arith(
            expr.op,
            _agg_expr(expr.left, key_binding, rows),
            _agg_expr(expr.right, key_binding, rows),
        )
    return _expr(expr, key_binding)


def evaluate(graph: Graph, query: SelectQuery) -> Solution:
    triples = list(graph)
    rows = _rows(triples, graph, query.pattern)
    names = projection_names(query)
    grouped = bool(query.group_by) or any(
        isinstance(item, Aliased) and expression_has_aggregate(item.expr)
        for item in query.select
    )
    out: list[dict] = []
    if grouped:
        if query.star:
            raise QuerySemanticsError("SELECT * cannot be combined with grouping")
        key_names = [v.name for v in query.group_by]
        for item in query.select:
            if isinstance(item, Variable) and item.name not in key_names:
                raise QuerySemanticsError(
                    f"projected variable ?{item.name} is not a GROUP BY key"
                )
        if query.group_by:
            buckets: dict[tuple, list[dict]] = {}
            for row in rows:
                key = tuple(row.get(name) for name in key_names)
                buckets.setdefault(key, []).append(row)
        else:
            buckets = {(): rows}
        for key, members in buckets.items():
            key_binding = {n: v for n, v in zip(key_names, key) if v is not None}
            projected: dict = {}
            for item in query.select:
                if isinstance(item, Variable):
                    if item.name in key_binding:
                        projected[item.name] = key_binding[item.name]
                else:
                    try:
                        projected[item.var.name] = _agg_expr(item.expr, key_binding, members)
                    except _Error:
                        pass
            out.append(projected)
    else:
        for row in rows:
            projected = {}
            if query.star:
                for name in names:
                    if name in row:
                        projected[name] = row[name]
            else:
                for item in query.select:
                    if isinstance(item, Variable):
                        if item.name in row:
                            projected[item.name] = row[item.name]
                    else:
                        try:
                            projected[item.var.name] = _expr(item.expr, row)
                        except _Error:
                            pass
            out.append(projected)
    if query.distinct:
        seen = set()
        deduped = []
        for row in out:
            key = frozenset(row.items())
            if key not in seen:
                seen.add(key)
                deduped.append(row)
        out = deduped
    return Solution(names, out)
