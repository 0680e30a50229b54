"""Tokenizer and recursive-descent parser for the supported SPARQL subset.

Supported: PREFIX declarations, SELECT [DISTINCT] with variables / `*` /
`(expr AS ?var)` items, WHERE groups with `.`-separated triple patterns,
`a`, typed and plain string literals, CURIEs, nested groups, UNION, FILTER
with comparisons and arithmetic, both VALUES forms, sub-SELECTs, and GROUP
BY. Keywords are case-insensitive (except `a`). Anything else that is
recognizably SPARQL is rejected by name, never silently ignored.

A nested group consisting solely of FILTER constraints (e.g. `{FILTER(?r <
0.1)}`) contributes its constraints to the enclosing group: filters apply
to the group they appear in after all its other elements are joined.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..terms import (
    RDF_TYPE,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    Iri,
    Literal,
    PrefixTable,
    Term,
    TermError,
    UnknownPrefixError,
    default_prefixes,
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
    SelectItem,
    SelectQuery,
    SubSelect,
    SumAgg,
    TriplePattern,
    Union,
    Values,
    VarExpr,
    Variable,
)
from .errors import QuerySyntaxError, UnsupportedFeatureError

_UNSUPPORTED = {
    "OPTIONAL",
    "MINUS",
    "GRAPH",
    "SERVICE",
    "BIND",
    "ORDER",
    "LIMIT",
    "OFFSET",
    "HAVING",
    "ASK",
    "CONSTRUCT",
    "DESCRIBE",
    "INSERT",
    "DELETE",
    "REDUCED",
    "FROM",
    "EXISTS",
    "NOT",
    "UNDEF",
    "BASE",
    "COUNT",
    "AVG",
    "MIN",
    "MAX",
    "SAMPLE",
    "GROUP_CONCAT",
}

_IRI_RE = re.compile(r'<([^<>"{}|^`\\\x00-\x20]*)>')
_VAR_RE = re.compile(r"[?$]([A-Za-z0-9_]+)")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")
_LOCAL_RE = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?")
_NUMBER_RE = re.compile(r"(\d+\.\d+|\.\d+|\d+)([eE][+-]?\d+)?")


@dataclass(frozen=True)
class Token:
    kind: str  # var iri pname word string integer decimal double + punctuation
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)

    def err(message: str) -> QuerySyntaxError:
        return QuerySyntaxError(message, line, col)

    def advance(k: int):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                advance(1)
            continue
        start_line, start_col = line, col
        if ch in "?$":
            m = _VAR_RE.match(text, i)
            if not m:
                raise err("expected a variable name after '?'")
            tokens.append(Token("var", m.group(1), start_line, start_col))
            advance(m.end() - i)
            continue
        if ch == "<":
            m = _IRI_RE.match(text, i)
            if m:
                tokens.append(Token("iri", m.group(1), start_line, start_col))
                advance(m.end() - i)
                continue
            if text[i:i + 2] == "<=":
                tokens.append(Token("<=", "<=", start_line, start_col))
                advance(2)
            else:
                tokens.append(Token("<", "<", start_line, start_col))
                advance(1)
            continue
        if ch == '"':
            out = []
            j = i + 1
            while True:
                if j >= n:
                    raise err("unterminated string literal")
                c = text[j]
                if c == '"':
                    break
                if c == "\\":
                    if j + 1 >= n:
                        raise err("dangling escape in string")
                    esc = text[j + 1]
                    mapping = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "\\": "\\"}
                    if esc not in mapping:
                        raise err(f"unknown escape \\{esc}")
                    out.append(mapping[esc])
                    j += 2
                else:
                    out.append(c)
                    j += 1
            tokens.append(Token("string", "".join(out), start_line, start_col))
            advance(j + 1 - i)
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            m = _NUMBER_RE.match(text, i)
            assert m
            body, exponent = m.group(1), m.group(2)
            if exponent:
                kind = "double"
            elif "." in body:
                kind = "decimal"
            else:
                kind = "integer"
            tokens.append(Token(kind, m.group(0), start_line, start_col))
            advance(m.end() - i)
            continue
        if ch.isalpha():
            m = _WORD_RE.match(text, i)
            assert m
            end = m.end()
            if end < n and text[end] == ":":
                local_match = _LOCAL_RE.match(text, end + 1)
                local_end = local_match.end() if local_match else end + 1
                tokens.append(Token("pname", text[i:local_end], start_line, start_col))
                advance(local_end - i)
            else:
                tokens.append(Token("word", m.group(0), start_line, start_col))
                advance(end - i)
            continue
        if ch == ":":
            local_match = _LOCAL_RE.match(text, i + 1)
            local_end = local_match.end() if local_match else i + 1
            tokens.append(Token("pname", text[i:local_end], start_line, start_col))
            advance(local_end - i)
            continue
        two = text[i:i + 2]
        if two == "^^":
            tokens.append(Token("^^", "^^", start_line, start_col))
            advance(2)
            continue
        if two in (">=", "!="):
            tokens.append(Token(two, two, start_line, start_col))
            advance(2)
            continue
        if two in ("&&", "||"):
            raise UnsupportedFeatureError(f"logical operator {two}", start_line, start_col)
        if ch in "{}().*/+-=>;,":
            tokens.append(Token(ch, ch, start_line, start_col))
            advance(1)
            continue
        if ch == "`":
            raise QuerySyntaxError(
                "unexpanded query reference (backquoted placeholder)", start_line, start_col
            )
        raise err(f"unexpected character {ch!r}")
    tokens.append(Token("eof", "", line, col))
    return tokens


class Parser:
    def __init__(self, tokens: list[Token], prefixes: PrefixTable):
        self.tokens = tokens
        self.pos = 0
        self.prefixes = prefixes

    # -- token helpers ---------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[Token] = None) -> QuerySyntaxError:
        tok = tok or self.peek()
        return QuerySyntaxError(message, tok.line, tok.col)

    def at_word(self, *names: str) -> bool:
        tok = self.peek()
        return tok.kind == "word" and tok.value.upper() in names

    def expect_word(self, name: str) -> Token:
        tok = self.next()
        if tok.kind != "word" or tok.value.upper() != name:
            raise self.error(f"expected {name}", tok)
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise self.error(f"expected {kind!r}, found {tok.value!r}", tok)
        return tok

    def check_unsupported(self, tok: Token) -> None:
        if tok.kind == "word" and tok.value.upper() in _UNSUPPORTED:
            raise UnsupportedFeatureError(tok.value.upper(), tok.line, tok.col)

    # -- grammar -----------------------------------------------------------

    def parse(self) -> SelectQuery:
        while self.at_word("PREFIX"):
            self.next()
            name_tok = self.expect("pname")
            if not name_tok.value.endswith(":"):
                raise self.error("PREFIX name must end with ':'", name_tok)
            iri_tok = self.expect("iri")
            self.prefixes.register(name_tok.value[:-1], iri_tok.value)
        self.check_unsupported(self.peek())
        query = self.parse_select()
        tok = self.peek()
        if tok.kind != "eof":
            self.check_unsupported(tok)
            raise self.error(f"unexpected trailing content: {tok.value!r}", tok)
        query.prefixes.update(self.prefixes.entries)
        return query

    def parse_select(self) -> SelectQuery:
        self.expect_word("SELECT")
        distinct = False
        if self.at_word("DISTINCT"):
            self.next()
            distinct = True
        star = False
        items: list[SelectItem] = []
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.next()
                star = True
            elif tok.kind == "var":
                self.next()
                items.append(Variable(tok.value))
            elif tok.kind == "(":
                self.next()
                expr = self.parse_expression()
                self.expect_word("AS")
                var_tok = self.expect("var")
                self.expect(")")
                items.append(Aliased(expr, Variable(var_tok.value)))
            else:
                break
        if not star and not items:
            raise self.error("SELECT needs at least one projection item")
        if self.at_word("WHERE"):
            self.next()
        pattern = self.parse_group()
        if isinstance(pattern, SubSelect):
            pattern = Group((pattern,))
        group_by: list[Variable] = []
        if self.at_word("GROUP"):
            self.next()
            self.expect_word("BY")
            while self.peek().kind == "var":
                group_by.append(Variable(self.next().value))
            if not group_by:
                raise self.error("GROUP BY needs at least one variable")
        tok = self.peek()
        if tok.kind == "word" and tok.value.upper() in ("ORDER", "LIMIT", "OFFSET", "HAVING"):
            raise UnsupportedFeatureError(tok.value.upper(), tok.line, tok.col)
        return SelectQuery(
            select=tuple(items),
            distinct=distinct,
            star=star,
            pattern=pattern,
            group_by=tuple(group_by),
        )

    def parse_group(self) -> Pattern:
        self.expect("{")
        if self.at_word("SELECT"):
            sub = self.parse_select()
            self.expect("}")
            return SubSelect(sub)
        elements: list[Pattern] = []
        filters: list[Expression] = []
        bgp: list[TriplePattern] = []

        def flush_bgp():
            if bgp:
                elements.append(Bgp(tuple(bgp)))
                bgp.clear()

        while True:
            tok = self.peek()
            if tok.kind == "}":
                self.next()
                break
            if tok.kind == "eof":
                raise self.error("unexpected end of query inside group")
            if tok.kind == "{":
                flush_bgp()
                child = self.parse_group()
                while self.at_word("UNION"):
                    self.next()
                    child = Union(child, self.parse_group())
                hoisted = _pure_filter_constraints(child)
                if hoisted is not None:
                    filters.extend(hoisted)
                else:
                    elements.append(child)
                continue
            if self.at_word("FILTER"):
                self.next()
                self.expect("(")
                filters.append(self.parse_expression())
                self.expect(")")
                continue
            if self.at_word("VALUES"):
                self.next()
                flush_bgp()
                elements.append(self.parse_values())
                continue
            if tok.kind in (";", ","):
                raise UnsupportedFeatureError(
                    "predicate-object lists (';' / ',')", tok.line, tok.col
                )
            self.check_unsupported(tok)
            bgp.append(self.parse_triple_pattern())
            if self.peek().kind == ".":
                self.next()
        flush_bgp()
        result: Pattern = Group(tuple(elements))
        for expr in filters:
            result = Filter(expr, result)
        return result

    def parse_values(self) -> Values:
        tok = self.peek()
        if tok.kind == "var":
            variables = (Variable(self.next().value),)
            self.expect("{")
            rows = []
            while self.peek().kind != "}":
                rows.append((self.parse_data_value(),))
            self.expect("}")
            return Values(variables, tuple(rows))
        self.expect("(")
        variables = []
        while self.peek().kind == "var":
            variables.append(Variable(self.next().value))
        self.expect(")")
        if not variables:
            raise self.error("VALUES needs at least one variable")
        self.expect("{")
        rows = []
        while self.peek().kind != "}":
            self.expect("(")
            row = []
            while self.peek().kind != ")":
                row.append(self.parse_data_value())
            self.expect(")")
            if len(row) != len(variables):
                raise self.error(f"VALUES row has {len(row)} terms for {len(variables)} variables")
            rows.append(tuple(row))
        self.expect("}")
        return Values(tuple(variables), tuple(rows))

    def parse_data_value(self) -> Term:
        term = self.parse_term(position="object", allow_var=False)
        assert not isinstance(term, Variable)
        return term

    def parse_triple_pattern(self) -> TriplePattern:
        s = self.parse_term("subject")
        p = self.parse_term("predicate")
        o = self.parse_term("object")
        return TriplePattern(s, p, o)

    def parse_term(self, position: str, allow_var: bool = True):
        tok = self.next()
        if tok.kind == "var":
            if not allow_var:
                raise self.error("variable not allowed here", tok)
            return Variable(tok.value)
        if tok.kind == "iri":
            try:
                return Iri(tok.value)
            except TermError as exc:
                raise self.error(str(exc), tok) from None
        if tok.kind == "pname":
            return self.expand(tok)
        if tok.kind == "word":
            if tok.value == "a":
                if position != "predicate":
                    raise self.error("'a' is only valid as a predicate", tok)
                return RDF_TYPE
            self.check_unsupported(tok)
            raise self.error(f"unexpected word {tok.value!r} in {position} position", tok)
        if tok.kind == "string":
            return self.finish_literal(tok)
        if tok.kind in ("integer", "decimal", "double"):
            datatype = {
                "integer": XSD_INTEGER,
                "decimal": XSD_DECIMAL,
                "double": XSD_DOUBLE,
            }[tok.kind]
            return Literal(tok.value, datatype)
        raise self.error(f"expected a term, found {tok.value!r}", tok)

    def finish_literal(self, tok: Token) -> Literal:
        if self.peek().kind == "^^":
            self.next()
            dt_tok = self.next()
            if dt_tok.kind == "iri":
                datatype = Iri(dt_tok.value)
            elif dt_tok.kind == "pname":
                datatype = self.expand(dt_tok)
            else:
                raise self.error("expected a datatype IRI after '^^'", dt_tok)
            try:
                return Literal(tok.value, datatype)
            except TermError as exc:
                raise self.error(str(exc), tok) from None
        return Literal(tok.value)

    def expand(self, tok: Token) -> Iri:
        try:
            return self.prefixes.expand(tok.value)
        except UnknownPrefixError as exc:
            raise QuerySyntaxError(str(exc), tok.line, tok.col) from None
        except TermError as exc:
            raise self.error(str(exc), tok) from None

    # -- expressions ------------------------------------------------------

    def parse_expression(self) -> Expression:
        left = self.parse_additive()
        tok = self.peek()
        if tok.kind in ("<", ">", "<=", ">=", "=", "!="):
            self.next()
            right = self.parse_additive()
            return Compare(tok.kind, left, right)
        return left

    def parse_additive(self) -> Expression:
        expr = self.parse_multiplicative()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            expr = Arith(op, expr, self.parse_multiplicative())
        return expr

    def parse_multiplicative(self) -> Expression:
        expr = self.parse_unary()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            expr = Arith(op, expr, self.parse_unary())
        return expr

    def parse_unary(self) -> Expression:
        if self.peek().kind == "-":
            self.next()
            operand = self.parse_primary()
            return Arith("-", ConstExpr(Literal("0", XSD_INTEGER)), operand)
        return self.parse_primary()

    def parse_primary(self) -> Expression:
        tok = self.peek()
        if tok.kind == "(":
            self.next()
            expr = self.parse_expression()
            self.expect(")")
            return expr
        if tok.kind == "var":
            self.next()
            return VarExpr(Variable(tok.value))
        if self.at_word("SUM"):
            self.next()
            self.expect("(")
            inner = self.parse_expression()
            self.expect(")")
            return SumAgg(inner)
        if tok.kind == "word":
            self.check_unsupported(tok)
            raise self.error(f"unexpected word {tok.value!r} in expression", tok)
        term = self.parse_term("object", allow_var=False)
        return ConstExpr(term)


def _pure_filter_constraints(pattern: Pattern) -> Optional[list[Expression]]:
    """If a group contains only FILTERs, return them for hoisting."""
    constraints: list[Expression] = []
    node = pattern
    while isinstance(node, Filter):
        constraints.append(node.expression)
        node = node.inner
    if constraints and isinstance(node, Group) and not node.elements:
        constraints.reverse()  # back to textual order
        return constraints
    return None


def parse_query(text: str, prefixes: Optional[PrefixTable] = None) -> SelectQuery:
    """Parse a query against the toolkit's default prefixes (plus any given)."""
    table = default_prefixes()
    if prefixes is not None:
        for prefix, ns in prefixes.entries.items():
            table.register(prefix, ns)
    return Parser(tokenize(text), table).parse()
