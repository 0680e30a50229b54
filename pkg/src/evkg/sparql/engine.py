"""Index-backed query evaluator with standard multiset semantics.

Joins run most-selective-pattern-first inside a BGP, backed by the graph's
three indexes. Expression errors follow SPARQL conventions: a failing
FILTER expression drops the row, a failing projection expression leaves
that variable unbound but keeps the row, and a SUM over a group containing
a non-numeric value is unbound for that group.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional

from ..graph import Graph
from ..terms import (
    XSD_BOOLEAN,
    Iri,
    Literal,
    Term,
    numeric_literal,
    numeric_value,
)
from .algebra import (
    Aliased,
    Arith,
    Bgp,
    Compare,
    ConstExpr,
    Expression,
    Filter,
    Group,
    Pattern,
    SelectQuery,
    Solution,
    SubSelect,
    SumAgg,
    TriplePattern,
    Union,
    Values,
    VarExpr,
    Variable,
    expression_has_aggregate,
    pattern_vars,
    projection_names,
)
from .errors import QuerySemanticsError

Binding = dict[str, Term]

TRUE = Literal("true", XSD_BOOLEAN)
FALSE = Literal("false", XSD_BOOLEAN)


class EvalError(Exception):
    """Expression evaluation error (unbound variable, type mismatch, /0)."""


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


def eval_expression(expr: Expression, row: Binding) -> Term:
    if isinstance(expr, VarExpr):
        value = row.get(expr.var.name)
        if value is None:
            raise EvalError(f"unbound variable ?{expr.var.name}")
        return value
    if isinstance(expr, ConstExpr):
        return expr.term
    if isinstance(expr, Compare):
        left = eval_expression(expr.left, row)
        right = eval_expression(expr.right, row)
        return TRUE if compare_terms(expr.op, left, right) else FALSE
    if isinstance(expr, Arith):
        return apply_arith(
            expr.op, eval_expression(expr.left, row), eval_expression(expr.right, row)
        )
    if isinstance(expr, SumAgg):
        raise EvalError("aggregate outside a grouped projection")
    raise TypeError(f"not an expression: {expr!r}")


def _numeric(term: Term):
    if isinstance(term, Literal):
        parsed = numeric_value(term)
        if parsed is not None:
            return parsed
    raise EvalError(f"not a numeric value: {term!r}")


_KIND_ORDER = {"integer": 0, "decimal": 1, "double": 2}


def _promote(kind_a: str, kind_b: str) -> str:
    return kind_a if _KIND_ORDER[kind_a] >= _KIND_ORDER[kind_b] else kind_b


def apply_arith(op: str, left: Term, right: Term) -> Literal:
    kind_l, val_l = _numeric(left)
    kind_r, val_r = _numeric(right)
    kind = _promote(kind_l, kind_r)
    if op == "+":
        return numeric_literal(kind, val_l + val_r)
    if op == "-":
        return numeric_literal(kind, val_l - val_r)
    if op == "*":
        return numeric_literal(kind, val_l * val_r)
    if op == "/":
        if val_r == 0:
            raise EvalError("division by zero")
        if kind == "double":
            return numeric_literal("double", val_l / val_r)
        # Integer and decimal division both yield xsd:decimal.
        return numeric_literal("decimal", Fraction(val_l) / Fraction(val_r))
    raise EvalError(f"unknown operator {op!r}")


def _is_plain_string(term: Term) -> bool:
    return isinstance(term, Literal) and term.datatype.value.endswith("#string")


def compare_terms(op: str, left: Term, right: Term) -> bool:
    if isinstance(left, Literal) and isinstance(right, Literal):
        num_l = numeric_value(left)
        num_r = numeric_value(right)
        if num_l is not None and num_r is not None:
            return _ordered(op, num_l[1], num_r[1])
        if _is_plain_string(left) and _is_plain_string(right):
            return _ordered(op, left.lexical, right.lexical)
        if left == right:
            return _equality_only(op, True)
        if left.datatype == right.datatype and op in ("=", "!="):
            return op == "!="
        raise EvalError(f"incomparable literals: {left!r} vs {right!r}")
    if op not in ("=", "!="):
        raise EvalError(f"operator {op!r} needs literal operands")
    same = left == right
    return same if op == "=" else not same


def _equality_only(op: str, same: bool) -> bool:
    if op in ("=", "<=", ">="):
        return same
    if op == "!=":
        return not same
    return False  # '<' or '>' on an equal pair


def _ordered(op: str, a, b) -> bool:
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    return a >= b


def effective_boolean(expr: Expression, row: Binding) -> bool:
    try:
        term = eval_expression(expr, row)
    except EvalError:
        return False
    if isinstance(term, Literal):
        if term.datatype == XSD_BOOLEAN:
            return term.lexical == "true"
        parsed = numeric_value(term)
        if parsed is not None:
            value = parsed[1]
            return value == value and value != 0  # NaN is false
        if _is_plain_string(term):
            return len(term.lexical) > 0
    return False


# ---------------------------------------------------------------------------
# Pattern evaluation
# ---------------------------------------------------------------------------


def _resolve(pos, binding: Binding) -> Optional[Term]:
    if isinstance(pos, Variable):
        return binding.get(pos.name)
    return pos


def match_pattern(graph: Graph, tp: TriplePattern, binding: Binding) -> Iterator[Binding]:
    s = _resolve(tp.s, binding)
    p = _resolve(tp.p, binding)
    o = _resolve(tp.o, binding)
    if isinstance(s, Literal) or (p is not None and not isinstance(p, Iri)):
        return
    for t in graph.match(s, p, o):
        merged = dict(binding)
        ok = True
        for pos, value in zip(tp.positions(), t):
            if isinstance(pos, Variable):
                seen = merged.get(pos.name)
                if seen is None:
                    merged[pos.name] = value
                elif seen != value:
                    ok = False
                    break
        if ok:
            yield merged


def _order_patterns(graph: Graph, patterns: tuple[TriplePattern, ...]) -> list[TriplePattern]:
    """Greedy: prefer patterns with the most bound positions, then the
    smallest index estimate for their constant positions."""
    remaining = list(patterns)
    ordered: list[TriplePattern] = []
    bound: set[str] = set()
    while remaining:
        def key(tp: TriplePattern):
            selectivity = 0
            const = [None, None, None]
            for idx, pos in enumerate(tp.positions()):
                if isinstance(pos, Variable):
                    if pos.name in bound:
                        selectivity += 1
                else:
                    selectivity += 1
                    const[idx] = pos
            # count_estimate needs an IRI predicate and a non-literal subject
            s, p, o = const
            if p is not None and not isinstance(p, Iri):
                estimate = 0
            elif isinstance(s, Literal):
                estimate = 0
            else:
                estimate = graph.count_estimate(s, p, o)
            return (-selectivity, estimate)

        best = min(remaining, key=key)
        remaining.remove(best)
        ordered.append(best)
        bound.update(v.name for v in pattern_vars(best))
    return ordered


def eval_bgp(graph: Graph, bgp: Bgp) -> list[Binding]:
    rows: list[Binding] = [{}]
    for tp in _order_patterns(graph, bgp.patterns):
        rows = [merged for b in rows for merged in match_pattern(graph, tp, b)]
        if not rows:
            break
    return rows


def join_rows(left: list[Binding], right: list[Binding]) -> list[Binding]:
    if not left or not right:
        return []
    left_vars = set()
    for r in left:
        left_vars.update(r)
    right_vars = set()
    for r in right:
        right_vars.update(r)
    common = sorted(left_vars & right_vars)
    if common and all(all(v in r for v in common) for r in left) and all(
        all(v in r for v in common) for r in right
    ):
        index: dict[tuple, list[Binding]] = {}
        for r in right:
            index.setdefault(tuple(r[v] for v in common), []).append(r)
        out = []
        for l in left:
            for r in index.get(tuple(l[v] for v in common), ()):  # noqa: E741
                out.append(l | r)
        return out
    out = []
    for l in left:  # noqa: E741
        for r in right:
            if all(l[k] == r[k] for k in l.keys() & r.keys()):
                out.append(l | r)
    return out


def eval_pattern(graph: Graph, pattern: Pattern) -> list[Binding]:
    if isinstance(pattern, Bgp):
        return eval_bgp(graph, pattern)
    if isinstance(pattern, Group):
        rows: list[Binding] = [{}]
        for element in pattern.elements:
            rows = join_rows(rows, eval_pattern(graph, element))
            if not rows:
                break
        return rows
    if isinstance(pattern, Union):
        return eval_pattern(graph, pattern.left) + eval_pattern(graph, pattern.right)
    if isinstance(pattern, Filter):
        return [
            row
            for row in eval_pattern(graph, pattern.inner)
            if effective_boolean(pattern.expression, row)
        ]
    if isinstance(pattern, Values):
        return [
            {v.name: term for v, term in zip(pattern.variables, row)}
            for row in pattern.rows
        ]
    if isinstance(pattern, SubSelect):
        return evaluate(graph, pattern.query).rows
    raise TypeError(f"not a pattern: {pattern!r}")


# ---------------------------------------------------------------------------
# Projection, grouping, DISTINCT
# ---------------------------------------------------------------------------


def _eval_with_aggregates(expr: Expression, key_binding: Binding, members: list[Binding]) -> Term:
    if isinstance(expr, SumAgg):
        total = 0
        kind = "integer"
        for row in members:
            try:
                inner = eval_expression(expr.expr, row)
            except EvalError:
                raise EvalError("non-numeric value in SUM group") from None
            parsed = numeric_value(inner) if isinstance(inner, Literal) else None
            if parsed is None:
                raise EvalError("non-numeric value in SUM group")
            kind = _promote(kind, parsed[0])
            total = total + parsed[1]
        return numeric_literal(kind, total)
    if isinstance(expr, (VarExpr, ConstExpr)):
        return eval_expression(expr, key_binding)
    if isinstance(expr, Compare):
        left = _eval_with_aggregates(expr.left, key_binding, members)
        right = _eval_with_aggregates(expr.right, key_binding, members)
        return TRUE if compare_terms(expr.op, left, right) else FALSE
    if isinstance(expr, Arith):
        left = _eval_with_aggregates(expr.left, key_binding, members)
        right = _eval_with_aggregates(expr.right, key_binding, members)
        return apply_arith(expr.op, left, right)
    raise TypeError(f"not an expression: {expr!r}")


def _distinct(rows: list[Binding]) -> list[Binding]:
    seen: set[frozenset] = set()
    out = []
    for row in rows:
        key = frozenset(row.items())
        if key not in seen:
            seen.add(key)
            out.append(row)
    return out


def evaluate(graph: Graph, query: SelectQuery) -> Solution:
    """Evaluate a parsed query; row order is unspecified (callers sort)."""
    rows = eval_pattern(graph, query.pattern)
    names = projection_names(query)
    has_aggregate = any(
        isinstance(item, Aliased) and expression_has_aggregate(item.expr)
        for item in query.select
    )
    if query.group_by or has_aggregate:
        if query.star:
            raise QuerySemanticsError("SELECT * cannot be combined with grouping")
        key_names = [v.name for v in query.group_by]
        for item in query.select:
            if isinstance(item, Variable) and item.name not in key_names:
                raise QuerySemanticsError(
                    f"projected variable ?{item.name} is not a GROUP BY key"
                )
        if query.group_by:
            groups: dict[tuple, list[Binding]] = {}
            for row in rows:
                key = tuple(row.get(name) for name in key_names)
                groups.setdefault(key, []).append(row)
        else:
            groups = {(): rows}  # implicit single group, even over no rows
        out_rows: list[Binding] = []
        for key, members in groups.items():
            key_binding = {
                name: value for name, value in zip(key_names, key) if value is not None
            }
            out: Binding = {}
            for item in query.select:
                if isinstance(item, Variable):
                    if item.name in key_binding:
                        out[item.name] = key_binding[item.name]
                else:
                    try:
                        out[item.var.name] = _eval_with_aggregates(
                            item.expr, key_binding, members
                        )
                    except EvalError:
                        pass  # unbound projected value, row kept
            out_rows.append(out)
    else:
        out_rows = []
        for row in rows:
            out = {}
            if query.star:
                for name in names:
                    if name in row:
                        out[name] = row[name]
            else:
                for item in query.select:
                    if isinstance(item, Variable):
                        if item.name in row:
                            out[item.name] = row[item.name]
                    else:
                        try:
                            out[item.var.name] = eval_expression(item.expr, row)
                        except EvalError:
                            pass
            out_rows.append(out)
    if query.distinct:
        out_rows = _distinct(out_rows)
    return Solution(names, out_rows)
