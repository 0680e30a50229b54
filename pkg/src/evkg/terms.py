"""RDF term model: IRIs, literals, blank nodes, triples, and prefix handling.

Terms are immutable value objects; equality is exact (lexical, datatype,
language) so that graph membership follows RDF term semantics. Value-based
comparison (e.g. numeric equality of "01" and "1") belongs to the query
layer, not here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union


class TermError(ValueError):
    """Raised for structurally invalid terms or triples."""


# ---------------------------------------------------------------------------
# Namespaces
# ---------------------------------------------------------------------------


class Namespace:
    """IRI namespace with attribute/index access to mint terms.

    ``GEO.Feature`` and ``EVR["connectortype.CHAdeMO"]`` both return Iri.
    """

    def __init__(self, base: str):
        self.base = base

    def __getattr__(self, local: str) -> "Iri":
        if local.startswith("_"):
            raise AttributeError(local)
        return Iri(self.base + local)

    def __getitem__(self, local: str) -> "Iri":
        return Iri(self.base + local)

    def __repr__(self) -> str:
        return f"Namespace({self.base!r})"


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
OWL = Namespace("http://www.w3.org/2002/07/owl#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
GEO = Namespace("http://www.opengis.net/ont/geosparql#")
SF = Namespace("http://www.opengis.net/ont/sf#")
KWG_ONT = Namespace("http://stko-kwg.geog.ucsb.edu/lod/ontology/")
EV_ONT = Namespace("http://evkg.org/ontology/")
EVR = Namespace("http://evkg.org/resource/")

_IRI_FORBIDDEN = re.compile(r"[\s<>\"{}|^`\\]")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI. Equality is exact string equality."""

    value: str

    def __post_init__(self):
        if not self.value:
            raise TermError("IRI must be non-empty")
        if _IRI_FORBIDDEN.search(self.value):
            raise TermError(f"IRI contains forbidden character: {self.value!r}")

    def __repr__(self) -> str:
        return f"<{self.value}>"


XSD_STRING = XSD.string
XSD_INTEGER = XSD.integer
XSD_DECIMAL = XSD.decimal
XSD_DOUBLE = XSD.double
XSD_GYEAR = XSD.gYear
XSD_BOOLEAN = XSD.boolean
RDF_LANGSTRING = RDF.langString
RDF_TYPE = RDF.type
WKT_LITERAL = GEO.wktLiteral

_INTEGER_RE = re.compile(r"^[+-]?\d+$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)$")
_GYEAR_RE = re.compile(r"^\d{4}$")


@dataclass(frozen=True, slots=True)
class Literal:
    """A typed literal. Plain literals default to xsd:string.

    A language tag is only admitted together with rdf:langString, never with
    another datatype.
    """

    lexical: str
    datatype: Iri = XSD_STRING
    language: Optional[str] = None

    def __post_init__(self):
        if self.language is not None and self.datatype != RDF_LANGSTRING:
            raise TermError("language tag requires rdf:langString datatype")
        if self.datatype == RDF_LANGSTRING and not self.language:
            raise TermError("rdf:langString literal requires a language tag")
        if self.datatype == XSD_GYEAR and not _GYEAR_RE.match(self.lexical):
            raise TermError(f"xsd:gYear needs a 4-digit lexical form: {self.lexical!r}")
        if self.datatype == XSD_INTEGER and not _INTEGER_RE.match(self.lexical):
            raise TermError(f"not a valid xsd:integer lexical form: {self.lexical!r}")
        if self.datatype == XSD_DECIMAL and not _DECIMAL_RE.match(self.lexical):
            raise TermError(f"not a valid xsd:decimal lexical form: {self.lexical!r}")
        if self.datatype == XSD_DOUBLE:
            try:
                float(self.lexical)
            except ValueError:
                raise TermError(
                    f"not a valid xsd:double lexical form: {self.lexical!r}"
                ) from None

    def __repr__(self) -> str:
        if self.language:
            return f'"{self.lexical}"@{self.language}'
        if self.datatype == XSD_STRING:
            return f'"{self.lexical}"'
        return f'"{self.lexical}"^^<{self.datatype.value}>'


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A blank node. Labels are expected to be unique within one graph load."""

    label: str

    def __repr__(self) -> str:
        return f"_:{self.label}"


Term = Union[Iri, Literal, BlankNode]


@dataclass(frozen=True, slots=True)
class Triple:
    """One RDF statement. Literals may only appear in object position."""

    subject: Union[Iri, BlankNode]
    predicate: Iri
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise TermError("literal in subject position")
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TermError(f"bad subject: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TermError(f"predicate must be an IRI: {self.predicate!r}")
        if not isinstance(self.object, (Iri, Literal, BlankNode)):
            raise TermError(f"bad object: {self.object!r}")

    def __iter__(self) -> Iterator[Term]:
        return iter((self.subject, self.predicate, self.object))


# ---------------------------------------------------------------------------
# CURIEs
# ---------------------------------------------------------------------------


class UnknownPrefixError(KeyError):
    def __init__(self, prefix: str):
        super().__init__(prefix)
        self.prefix = prefix

    def __str__(self) -> str:
        return f"unknown prefix: {self.prefix!r}"


# Local name of a CURIE: may contain dots but must not end with one.
_LOCAL_RE = re.compile(r"^[A-Za-z0-9_\-](?:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-])?$")


@dataclass
class PrefixTable:
    """prefix -> namespace map with CURIE expansion and IRI compaction."""

    entries: dict[str, str] = field(default_factory=dict)

    def register(self, prefix: str, namespace: str) -> None:
        self.entries[prefix] = namespace

    def copy(self) -> "PrefixTable":
        return PrefixTable(dict(self.entries))

    def expand(self, curie: str) -> Iri:
        prefix, sep, local = curie.partition(":")
        if not sep:
            raise TermError(f"not a CURIE (missing colon): {curie!r}")
        if prefix not in self.entries:
            raise UnknownPrefixError(prefix)
        return Iri(self.entries[prefix] + local)

    def compact(self, iri: Iri) -> Optional[str]:
        """Return pfx:local for the longest matching namespace, or None.

        Refuses locals that would not survive a round trip (empty, or
        containing characters outside the CURIE local-name subset).
        """
        best: Optional[tuple[str, str]] = None
        for prefix, ns in self.entries.items():
            if iri.value.startswith(ns) and (best is None or len(ns) > len(best[1])):
                best = (prefix, ns)
        if best is None:
            return None
        local = iri.value[len(best[1]):]
        if not _LOCAL_RE.match(local):
            return None
        return f"{best[0]}:{local}"

    def items(self) -> Iterator[tuple[str, str]]:
        return iter(sorted(self.entries.items()))


def default_prefixes() -> PrefixTable:
    """The prefixes every graph and query in this toolkit understands."""
    return PrefixTable(
        {
            "rdf": RDF.base,
            "rdfs": RDFS.base,
            "owl": OWL.base,
            "xsd": XSD.base,
            "geo": GEO.base,
            "sf": SF.base,
            "kwg-ont": KWG_ONT.base,
            "ev-ont": EV_ONT.base,
            "evr": EVR.base,
        }
    )


# ---------------------------------------------------------------------------
# Numeric value handling shared by serialization and the query layer
# ---------------------------------------------------------------------------

NUMERIC_DATATYPES = (XSD_INTEGER, XSD_DECIMAL, XSD_DOUBLE, XSD_GYEAR)

# Non-terminating decimal divisions are rounded to this many fractional
# digits (half-even) when rendered back to a lexical form.
DECIMAL_SCALE = 12


def numeric_value(lit: Literal):
    """Parse a numeric literal to (kind, value); None if not numeric.

    Kinds: 'integer' -> int, 'decimal' -> Fraction, 'double' -> float.
    xsd:gYear coerces to the integer kind so year comparisons work.
    """
    if lit.language is not None:
        return None
    dt = lit.datatype
    try:
        if dt == XSD_INTEGER:
            return ("integer", int(lit.lexical))
        if dt == XSD_GYEAR:
            return ("integer", int(lit.lexical))
        if dt == XSD_DECIMAL:
            return ("decimal", Fraction(lit.lexical))
        if dt == XSD_DOUBLE:
            return ("double", float(lit.lexical))
    except (ValueError, ZeroDivisionError):
        return None
    return None


def format_decimal(value: Fraction) -> str:
    """Canonical xsd:decimal lexical form.

    Exact when the value terminates in base 10; otherwise rounded half-even
    to DECIMAL_SCALE fractional digits. Always carries a decimal point.
    """
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), abs(value.denominator)
    scale = 0
    d = den
    while d % 2 == 0:
        d //= 2
        scale += 1
    fives = 0
    while d % 5 == 0:
        d //= 5
        fives += 1
    scale = max(scale, fives)
    if d != 1:
        # Non-terminating: round half-even at DECIMAL_SCALE digits.
        shifted = Fraction(num, den) * 10**DECIMAL_SCALE
        q, r = divmod(shifted.numerator, shifted.denominator)
        double_r = 2 * r
        if double_r > shifted.denominator or (double_r == shifted.denominator and q % 2):
            q += 1
        digits, scale = q, DECIMAL_SCALE
    else:
        digits = num * 10**scale // den
    text = str(digits).rjust(scale + 1, "0")
    if scale == 0:
        return f"{sign}{text}.0"
    whole, frac = text[:-scale], text[-scale:]
    frac = frac.rstrip("0") or "0"
    return f"{sign}{whole}.{frac}"


def numeric_literal(kind: str, value) -> Literal:
    """Render a computed numeric value back into a canonical literal."""
    if kind == "integer":
        return Literal(str(int(value)), XSD_INTEGER)
    if kind == "decimal":
        return Literal(format_decimal(Fraction(value)), XSD_DECIMAL)
    if kind == "double":
        return Literal(repr(float(value)), XSD_DOUBLE)
    raise ValueError(f"unknown numeric kind: {kind}")
