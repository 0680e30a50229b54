"""Triplification pipelines: CSV records in, ontology-conformant subgraphs out.

Input formats (RFC-4180 CSV, UTF-8, header row required):

* registrations.csv: vin8,zip,model_year,registration_year,make,model,
  technology,manufacturer,use_case,weight_level,charger_types,connector_types
  (the last two are |-separated token lists, e.g. "LEVEL2|DCFC")
* stations.csv: station_id,name,lon,lat,zip,access,network,operating_hours,
  open_date,pricing,parking_restriction,charger_groups
  (charger_groups: |-separated charger:connector:count triplets)
* transmission.csv: asset_id,kind,wkt,voltage_class,min_voltage,max_voltage,
  summer_capacity,winter_capacity,operating_capacity,status,owner
* zip_areas.csv: zip,wkt,state,county,kwg_sameas

IRIs are minted deterministically from natural keys, so re-ingesting the
same inputs yields a byte-identical graph. Rows that violate record
invariants are skipped and reported with their row number; they never abort
a load. Source strings are preserved byte-exactly (including whitespace),
because literal matching in queries is exact.
"""

from __future__ import annotations

import csv
import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import geometry
from .graph import Graph
from .terms import (
    EV_ONT,
    EVR,
    GEO,
    KWG_ONT,
    OWL,
    RDF,
    RDFS,
    SF,
    WKT_LITERAL,
    XSD_DOUBLE,
    XSD_GYEAR,
    XSD_INTEGER,
    Iri,
    Literal,
    TermError,
    Triple,
)
from .vocabulary import individuals_graph


class IngestError(ValueError):
    pass


class UnknownVocabularyToken(IngestError):
    def __init__(self, token: str, kind: str):
        super().__init__(f"unknown {kind} token: {token!r}")
        self.token = token


class DanglingProductKey(IngestError):
    def __init__(self, keys: Sequence["ProductKey"]):
        labels = ", ".join(f"{k.make} {k.model} {k.model_year}" for k in keys)
        super().__init__(f"registration collections reference unknown products: {labels}")
        self.keys = tuple(keys)


class DuplicateZip(IngestError):
    def __init__(self, zip_code: str):
        super().__init__(f"duplicate zip code area: {zip_code}")


CHARGER_TOKENS = {
    "LEVEL1": EVR["chargertype.Level1Charger"],
    "LEVEL2": EVR["chargertype.Level2Charger"],
    "DCFC": EVR["chargertype.DCFastCharger"],
}

CONNECTOR_TOKENS = {
    "J1772": EVR["connectortype.J1772"],
    "J1772COMBO": EVR["connectortype.J1772COMBO"],
    "CHADEMO": EVR["connectortype.CHAdeMO"],
    "TESLA": EVR["connectortype.TESLA"],
    "NEMA": EVR["connectortype.NEMA"],
}

_YEAR_RE = re.compile(r"^\d{4}$")
_ZIP_RE = re.compile(r"^\d{5}$")
_SANITIZE_RE = re.compile(r"[^A-Za-z0-9_\-]+")


def _sanitize(value: str) -> str:
    cleaned = _SANITIZE_RE.sub("", value)
    if not cleaned:
        raise IngestError(f"cannot build an IRI fragment from {value!r}")
    return cleaned


def _key_hash(*parts: str) -> str:
    return hashlib.sha1("\x1f".join(parts).encode("utf-8")).hexdigest()[:8]


# ---------------------------------------------------------------------------
# Record types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegistrationRecord:
    vin8: str
    zip: str
    model_year: int
    registration_year: int
    make: str
    model: str
    technology: str  # BEV | PHEV
    manufacturer: str
    use_case: str
    weight_level: str
    charger_types: frozenset[str]
    connector_types: frozenset[str]

    def __post_init__(self):
        if len(self.vin8) != 8:
            raise IngestError(f"vin8 must be exactly 8 characters: {self.vin8!r}")
        if not _ZIP_RE.match(self.zip):
            raise IngestError(f"zip must be 5 digits: {self.zip!r}")
        for year in (self.model_year, self.registration_year):
            if not 1000 <= year <= 9999:
                raise IngestError(f"year must be 4 digits: {year}")
        if self.technology not in ("BEV", "PHEV"):
            raise IngestError(f"technology must be BEV or PHEV: {self.technology!r}")


@dataclass(frozen=True)
class ChargerGroup:
    charger_type: str
    connector_type: str
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise IngestError(f"charger group count must be >= 1: {self.count}")


@dataclass(frozen=True)
class StationRecord:
    station_id: str
    name: str
    lon: float
    lat: float
    zip: str
    access: str  # public | private
    network: Optional[str]
    operating_hours: str
    open_date: Optional[str]
    open_year: int
    pricing: Optional[str]
    parking_restriction: Optional[str]
    charger_groups: tuple[ChargerGroup, ...]

    def __post_init__(self):
        if self.access not in ("public", "private"):
            raise IngestError(f"access must be public or private: {self.access!r}")
        if not 1000 <= self.open_year <= 9999:
            raise IngestError(f"open_year must be 4 digits: {self.open_year}")


@dataclass(frozen=True)
class TransmissionAssetRecord:
    asset_id: str
    kind: str  # line | substation | plant
    geometry_wkt: str
    voltage_class: Optional[str] = None
    min_voltage: Optional[str] = None
    max_voltage: Optional[str] = None
    summer_capacity: Optional[str] = None
    winter_capacity: Optional[str] = None
    operating_capacity: Optional[str] = None
    status: Optional[str] = None
    owner: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("line", "substation", "plant"):
            raise IngestError(f"kind must be line|substation|plant: {self.kind!r}")
        geom = geometry.parse_wkt(self.geometry_wkt)
        if self.kind == "line":
            if not isinstance(geom, (geometry.LineString, geometry.MultiLineString)):
                raise IngestError(f"asset {self.asset_id}: lines need LineString geometry")
        elif not isinstance(geom, geometry.Point):
            raise IngestError(f"asset {self.asset_id}: {self.kind}s need Point geometry")


@dataclass(frozen=True)
class ZipAreaRecord:
    zip: str
    polygon_wkt: str
    state_label: str
    county_label: str
    kwg_sameas: Optional[str] = None

    def __post_init__(self):
        if not _ZIP_RE.match(self.zip):
            raise IngestError(f"zip must be 5 digits: {self.zip!r}")
        geom = geometry.parse_wkt(self.polygon_wkt)
        if not isinstance(geom, (geometry.Polygon, geometry.MultiPolygon)):
            raise IngestError(f"zip {self.zip}: area geometry must be a polygon")


@dataclass(frozen=True)
class ProductKey:
    """Full product identity; one product individual per distinct key."""

    make: str
    model: str
    model_year: int
    technology: str
    manufacturer: str
    use_case: str
    weight_level: str
    charger_types: frozenset[str]
    connector_types: frozenset[str]


def product_key(rec: RegistrationRecord) -> ProductKey:
    return ProductKey(
        rec.make,
        rec.model,
        rec.model_year,
        rec.technology,
        rec.manufacturer,
        rec.use_case,
        rec.weight_level,
        rec.charger_types,
        rec.connector_types,
    )


@dataclass(frozen=True)
class RegistrationCollection:
    zip: str
    year: int
    product: ProductKey
    amount: int


@dataclass
class RowIssue:
    row: int
    message: str


@dataclass
class LoadReport:
    counts: dict[str, int] = field(default_factory=dict)
    skipped: list[RowIssue] = field(default_factory=list)

    def bump(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n


# ---------------------------------------------------------------------------
# CSV readers
# ---------------------------------------------------------------------------


def _read_rows(path: Path, required: Sequence[str]) -> Iterable[tuple[int, dict[str, str]]]:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [col for col in required if col not in header]
        if missing:
            raise IngestError(f"{path}: missing columns {missing}")
        for row_no, row in enumerate(reader, start=2):  # row 1 is the header
            yield row_no, row


def _tokens(cell: str) -> frozenset[str]:
    return frozenset(tok for tok in (t.strip() for t in cell.split("|")) if tok)


def read_registrations(path: Path) -> tuple[list[RegistrationRecord], list[RowIssue]]:
    cols = [
        "vin8",
        "zip",
        "model_year",
        "registration_year",
        "make",
        "model",
        "technology",
        "manufacturer",
        "use_case",
        "weight_level",
        "charger_types",
        "connector_types",
    ]
    records, issues = [], []
    for row_no, row in _read_rows(path, cols):
        try:
            records.append(
                RegistrationRecord(
                    vin8=row["vin8"],
                    zip=row["zip"],
                    model_year=int(row["model_year"]),
                    registration_year=int(row["registration_year"]),
                    make=row["make"],
                    model=row["model"],
                    technology=row["technology"],
                    manufacturer=row["manufacturer"],
                    use_case=row["use_case"],
                    weight_level=row["weight_level"],
                    charger_types=_tokens(row["charger_types"]),
                    connector_types=_tokens(row["connector_types"]),
                )
            )
        except (IngestError, ValueError) as exc:
            issues.append(RowIssue(row_no, str(exc)))
    return records, issues


def _parse_groups(cell: str) -> tuple[ChargerGroup, ...]:
    groups = []
    for part in (p.strip() for p in cell.split("|")):
        if not part:
            continue
        pieces = part.split(":")
        if len(pieces) != 3:
            raise IngestError(f"bad charger group {part!r} (want charger:connector:count)")
        groups.append(ChargerGroup(pieces[0], pieces[1], int(pieces[2])))
    return tuple(groups)


def read_stations(path: Path) -> tuple[list[StationRecord], list[RowIssue]]:
    cols = [
        "station_id",
        "name",
        "lon",
        "lat",
        "zip",
        "access",
        "network",
        "operating_hours",
        "open_date",
        "pricing",
        "parking_restriction",
        "charger_groups",
    ]
    records, issues = [], []
    for row_no, row in _read_rows(path, cols):
        try:
            open_date = row["open_date"].strip() or None
            if open_date is None:
                raise IngestError("open_date is required")
            records.append(
                StationRecord(
                    station_id=row["station_id"],
                    name=row["name"],
                    lon=float(row["lon"]),
                    lat=float(row["lat"]),
                    zip=row["zip"],
                    access=row["access"],
                    network=row["network"] or None,
                    operating_hours=row["operating_hours"],
                    open_date=open_date,
                    open_year=int(open_date[:4]),
                    pricing=row["pricing"] or None,
                    parking_restriction=row["parking_restriction"] or None,
                    charger_groups=_parse_groups(row["charger_groups"]),
                )
            )
        except (IngestError, ValueError) as exc:
            issues.append(RowIssue(row_no, str(exc)))
    return records, issues


def read_transmission(path: Path) -> tuple[list[TransmissionAssetRecord], list[RowIssue]]:
    cols = [
        "asset_id",
        "kind",
        "wkt",
        "voltage_class",
        "min_voltage",
        "max_voltage",
        "summer_capacity",
        "winter_capacity",
        "operating_capacity",
        "status",
        "owner",
    ]
    records, issues = [], []
    for row_no, row in _read_rows(path, cols):
        try:
            records.append(
                TransmissionAssetRecord(
                    asset_id=row["asset_id"],
                    kind=row["kind"],
                    geometry_wkt=row["wkt"],
                    voltage_class=row["voltage_class"] or None,
                    min_voltage=row["min_voltage"] or None,
                    max_voltage=row["max_voltage"] or None,
                    summer_capacity=row["summer_capacity"] or None,
                    winter_capacity=row["winter_capacity"] or None,
                    operating_capacity=row["operating_capacity"] or None,
                    status=row["status"] or None,
                    owner=row["owner"] or None,
                )
            )
        except (IngestError, ValueError, geometry.WktParseError) as exc:
            issues.append(RowIssue(row_no, str(exc)))
    return records, issues


def read_zip_areas(path: Path) -> tuple[list[ZipAreaRecord], list[RowIssue]]:
    cols = ["zip", "wkt", "state", "county", "kwg_sameas"]
    records, issues = [], []
    seen: set[str] = set()
    for row_no, row in _read_rows(path, cols):
        try:
            if row["zip"] in seen:
                raise DuplicateZip(row["zip"])
            rec = ZipAreaRecord(
                zip=row["zip"],
                polygon_wkt=row["wkt"],
                state_label=row["state"],
                county_label=row["county"],
                kwg_sameas=row["kwg_sameas"] or None,
            )
            seen.add(rec.zip)
            records.append(rec)
        except DuplicateZip:
            raise
        except (IngestError, ValueError, geometry.WktParseError) as exc:
            issues.append(RowIssue(row_no, str(exc)))
    return records, issues


# ---------------------------------------------------------------------------
# IRI minting
# ---------------------------------------------------------------------------


def zip_area_iri(zip_code: str) -> Iri:
    return EVR[f"zipcodearea.{zip_code}"]


def state_iri(label: str) -> Iri:
    return EVR[f"state.{_sanitize(label)}"]


def county_iri(label: str) -> Iri:
    return EVR[f"county.{_sanitize(label)}"]


def station_iri(station_id: str) -> Iri:
    return EVR[f"chargingstation.{_sanitize(station_id)}"]


def product_iri(key: ProductKey) -> Iri:
    digest = _key_hash(
        key.make,
        key.model,
        str(key.model_year),
        key.technology,
        key.manufacturer,
        key.use_case,
        key.weight_level,
        "|".join(sorted(key.charger_types)),
        "|".join(sorted(key.connector_types)),
    )
    return EVR[
        f"product.{_sanitize(key.make)}.{_sanitize(key.model)}.{key.model_year}.{digest}"
    ]


def collection_iri(zip_code: str, year: int, key: ProductKey) -> Iri:
    prod_local = product_iri(key).value.rsplit(".", 1)[-1]
    return EVR[f"evregcol.{zip_code}.{year}.{prod_local}"]


def geometry_iri(feature: Iri) -> Iri:
    return Iri(feature.value + ".geometry")


def _labeled_individual(kind: str, label: str) -> tuple[Iri, str]:
    return EVR[f"{kind}.{_sanitize(label)}"], label


class _Minter:
    """Collision check: one IRI per natural key, one natural key per IRI."""

    def __init__(self):
        self.by_iri: dict[Iri, str] = {}

    def claim(self, iri: Iri, natural_key: str) -> Iri:
        existing = self.by_iri.get(iri)
        if existing is not None and existing != natural_key:
            raise IngestError(f"IRI collision: {iri.value} for {existing!r} and {natural_key!r}")
        self.by_iri[iri] = natural_key
        return iri


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------


def aggregate_registrations(records: Iterable[RegistrationRecord]) -> list[RegistrationCollection]:
    """Group records by (zip, registration year, full product identity)."""
    groups: dict[tuple[str, int, ProductKey], int] = {}
    for rec in records:
        key = (rec.zip, rec.registration_year, product_key(rec))
        groups[key] = groups.get(key, 0) + 1
    return [
        RegistrationCollection(zip_code, year, prod, amount)
        for (zip_code, year, prod), amount in sorted(
            groups.items(), key=lambda kv: (kv[0][0], kv[0][1], product_iri(kv[0][2]).value)
        )
    ]


# ---------------------------------------------------------------------------
# Triplifiers
# ---------------------------------------------------------------------------


def _geometry_triples(g: Graph, feature: Iri, geom_type: Iri, wkt: str) -> None:
    node = geometry_iri(feature)
    g.insert(Triple(feature, GEO.hasGeometry, node))
    g.insert(Triple(node, RDF.type, geom_type))
    g.insert(Triple(node, GEO.asWKT, Literal(wkt, WKT_LITERAL)))


def triplify_adoption(
    collections: Iterable[RegistrationCollection],
    products: Iterable[ProductKey],
) -> Graph:
    g = Graph()
    minter = _Minter()
    product_list = list(products)
    known = set(product_list)
    collections = list(collections)
    dangling: list[ProductKey] = []
    for coll in collections:
        if coll.product not in known and coll.product not in dangling:
            dangling.append(coll.product)
    if dangling:
        raise DanglingProductKey(dangling)

    for key in product_list:
        prod = minter.claim(product_iri(key), repr(key))
        g.insert(Triple(prod, RDF.type, EV_ONT.ElectricVehicleProduct))
        g.insert(Triple(prod, RDFS.label, Literal(f"{key.make} {key.model}")))
        model_year = Literal(str(key.model_year), XSD_GYEAR)
        g.insert(Triple(prod, EV_ONT.hasModelYear, model_year))

        make, make_label = _labeled_individual("maketype", key.make)
        g.insert(Triple(prod, EV_ONT.hasMakeType, make))
        g.insert(Triple(make, RDF.type, EV_ONT.MakeType))
        g.insert(Triple(make, RDFS.label, Literal(make_label)))

        model = EVR[
            f"modeltype.{_sanitize(key.make)}.{_sanitize(key.model)}.{key.model_year}"
        ]
        g.insert(Triple(prod, EV_ONT.hasModelType, model))
        g.insert(Triple(model, RDF.type, EV_ONT.ModelType))
        g.insert(Triple(model, RDFS.label, Literal(key.model)))
        g.insert(Triple(model, EV_ONT.hasModelYear, model_year))

        for kind, prop, cls, raw in (
            ("technology", EV_ONT.isWithTechnology, EV_ONT.Technology, key.technology),
            ("manufacturer", EV_ONT.hasManufacturer, EV_ONT.Manufacturer, key.manufacturer),
            ("vehicleusecase", EV_ONT.hasVehicleUseCase, EV_ONT.VehicleUseCase, key.use_case),
            ("weightlevel", EV_ONT.hasWeightLevel, EV_ONT.WeightLevel, key.weight_level),
        ):
            ind, label = _labeled_individual(kind, raw)
            g.insert(Triple(prod, prop, ind))
            g.insert(Triple(ind, RDF.type, cls))
            g.insert(Triple(ind, RDFS.label, Literal(label)))

        for token in sorted(key.charger_types):
            if token not in CHARGER_TOKENS:
                raise UnknownVocabularyToken(token, "charger type")
            g.insert(Triple(prod, EV_ONT.hasMatchableChargerType, CHARGER_TOKENS[token]))
        for token in sorted(key.connector_types):
            if token not in CONNECTOR_TOKENS:
                raise UnknownVocabularyToken(token, "connector type")
            g.insert(Triple(prod, EV_ONT.hasMatchableConnectorType, CONNECTOR_TOKENS[token]))

    for coll in collections:
        iri = minter.claim(
            collection_iri(coll.zip, coll.year, coll.product),
            f"{coll.zip}/{coll.year}/{product_iri(coll.product).value}",
        )
        g.insert(Triple(iri, RDF.type, EV_ONT.ElectricVehicleRegistrationCollection))
        g.insert(Triple(iri, EV_ONT.hasSpatialScope, zip_area_iri(coll.zip)))
        g.insert(Triple(iri, EV_ONT.hasTemporalScope, Literal(str(coll.year), XSD_GYEAR)))
        g.insert(Triple(iri, EV_ONT.hasProductInfo, product_iri(coll.product)))
        g.insert(Triple(iri, EV_ONT.hasAmount, Literal(str(coll.amount), XSD_INTEGER)))
    return g


def triplify_stations(records: Iterable[StationRecord]) -> Graph:
    g = Graph()
    minter = _Minter()
    for rec in records:
        stn = minter.claim(station_iri(rec.station_id), rec.station_id)
        access_cls = (
            EV_ONT.PublicChargingStation if rec.access == "public" else EV_ONT.PrivateChargingStation
        )
        g.insert(Triple(stn, RDF.type, access_cls))
        if rec.network:
            g.insert(Triple(stn, RDF.type, EV_ONT.NetworkedChargingStation))
            net, net_label = _labeled_individual("chargingnetwork", rec.network)
            g.insert(Triple(stn, EV_ONT.isUnderChargingNetwork, net))
            g.insert(Triple(net, RDF.type, EV_ONT.ChargingNetwork))
            g.insert(Triple(net, RDFS.label, Literal(net_label)))
        else:
            g.insert(Triple(stn, RDF.type, EV_ONT.NonNetworkedChargingStation))
        g.insert(Triple(stn, RDFS.label, Literal(rec.name)))

        point = geometry.Point(rec.lon, rec.lat)
        _geometry_triples(g, stn, SF.Point, geometry.to_wkt(point))

        g.insert(Triple(stn, EV_ONT.hasOperatingHours, Literal(rec.operating_hours)))
        g.insert(Triple(stn, EV_ONT.hasOpenYear, Literal(str(rec.open_year), XSD_GYEAR)))
        if rec.open_date:
            g.insert(Triple(stn, EV_ONT.hasOpenTime, Literal(rec.open_date)))
        if rec.pricing:
            g.insert(Triple(stn, EV_ONT.hasPricingScheme, Literal(rec.pricing)))
        if rec.parking_restriction:
            g.insert(Triple(stn, EV_ONT.hasParkingRestriction, Literal(rec.parking_restriction)))

        amounts: dict[tuple[str, str], int] = {}
        for group in rec.charger_groups:
            if group.charger_type not in CHARGER_TOKENS:
                raise UnknownVocabularyToken(group.charger_type, "charger type")
            if group.connector_type not in CONNECTOR_TOKENS:
                raise UnknownVocabularyToken(group.connector_type, "connector type")
            pair = (group.charger_type, group.connector_type)
            amounts[pair] = amounts.get(pair, 0) + group.count
        for (charger, connector), amount in sorted(amounts.items()):
            cc = EVR[
                f"chargercollection.{_sanitize(rec.station_id)}.{charger}.{connector}"
            ]
            g.insert(Triple(stn, EV_ONT.hosts, cc))
            g.insert(Triple(cc, RDF.type, EV_ONT.ChargerCollection))
            g.insert(Triple(cc, EV_ONT.hasChargerType, CHARGER_TOKENS[charger]))
            g.insert(Triple(cc, EV_ONT.hasConnectorType, CONNECTOR_TOKENS[connector]))
            g.insert(Triple(cc, EV_ONT.hasAmount, Literal(str(amount), XSD_INTEGER)))
    return g


_ASSET_KINDS = {
    "line": ("transmissionline", EV_ONT.TransmissionLine),
    "substation": ("substation", EV_ONT.Substation),
    "plant": ("powerplant", EV_ONT.PowerPlant),
}

_GEOM_CLASSES = {
    geometry.Point: SF.Point,
    geometry.LineString: SF.LineString,
    geometry.Polygon: SF.Polygon,
    geometry.MultiPoint: SF.MultiPoint,
    geometry.MultiLineString: SF.MultiLineString,
    geometry.MultiPolygon: SF.MultiPolygon,
}


def triplify_transmission(records: Iterable[TransmissionAssetRecord]) -> Graph:
    g = Graph()
    minter = _Minter()
    for rec in records:
        prefix, cls = _ASSET_KINDS[rec.kind]
        asset = minter.claim(EVR[f"{prefix}.{_sanitize(rec.asset_id)}"], rec.asset_id)
        g.insert(Triple(asset, RDF.type, cls))
        geom = geometry.parse_wkt(rec.geometry_wkt)
        _geometry_triples(g, asset, _GEOM_CLASSES[type(geom)], geometry.to_wkt(geom))

        if rec.kind == "line":
            if rec.voltage_class:
                vc, vc_label = _labeled_individual("voltageclass", rec.voltage_class)
                g.insert(Triple(asset, EV_ONT.hasVoltageClass, vc))
                g.insert(Triple(vc, RDF.type, EV_ONT.VoltageClass))
                g.insert(Triple(vc, RDFS.label, Literal(vc_label)))
            if rec.status:
                st, st_label = _labeled_individual("servingstatus", rec.status)
                g.insert(Triple(asset, EV_ONT.hasLineStatus, st))
                g.insert(Triple(st, RDF.type, EV_ONT.ServingStatus))
                g.insert(Triple(st, RDFS.label, Literal(st_label)))
            if rec.owner:
                ow, ow_label = _labeled_individual("translineowner", rec.owner)
                g.insert(Triple(asset, EV_ONT.hasLineOwner, ow))
                g.insert(Triple(ow, RDF.type, EV_ONT.TransmissionLineOwner))
                g.insert(Triple(ow, RDFS.label, Literal(ow_label)))
        elif rec.kind == "substation":
            if rec.min_voltage:
                g.insert(Triple(asset, EV_ONT.hasMinVoltage, Literal(rec.min_voltage, XSD_DOUBLE)))
            if rec.max_voltage:
                g.insert(Triple(asset, EV_ONT.hasMaxVoltage, Literal(rec.max_voltage, XSD_DOUBLE)))
            if rec.status:
                st, st_label = _labeled_individual("servingstatus", rec.status)
                g.insert(Triple(asset, EV_ONT.hasStationStatus, st))
                g.insert(Triple(st, RDF.type, EV_ONT.ServingStatus))
                g.insert(Triple(st, RDFS.label, Literal(st_label)))
        else:  # plant
            for prop, value in (
                (EV_ONT.hasSummerCapacity, rec.summer_capacity),
                (EV_ONT.hasWinterCapacity, rec.winter_capacity),
                (EV_ONT.hasOperatingCapacity, rec.operating_capacity),
            ):
                if value:
                    g.insert(Triple(asset, prop, Literal(value, XSD_DOUBLE)))
            if rec.status:
                st, st_label = _labeled_individual("servingstatus", rec.status)
                g.insert(Triple(asset, EV_ONT.hasPlantStatus, st))
                g.insert(Triple(st, RDF.type, EV_ONT.ServingStatus))
                g.insert(Triple(st, RDFS.label, Literal(st_label)))
    return g


def triplify_places(records: Iterable[ZipAreaRecord]) -> Graph:
    g = Graph()
    seen: set[str] = set()
    for rec in records:
        if rec.zip in seen:
            raise DuplicateZip(rec.zip)
        seen.add(rec.zip)
        zip_area = zip_area_iri(rec.zip)
        g.insert(Triple(zip_area, RDF.type, KWG_ONT.ZipCodeArea))
        g.insert(Triple(zip_area, RDFS.label, Literal(f"zip code {rec.zip}")))
        geom = geometry.parse_wkt(rec.polygon_wkt)
        _geometry_triples(g, zip_area, _GEOM_CLASSES[type(geom)], geometry.to_wkt(geom))

        state = state_iri(rec.state_label)
        g.insert(Triple(state, RDF.type, KWG_ONT.AdministrativeRegion_2))
        g.insert(Triple(state, RDFS.label, Literal(rec.state_label)))
        g.insert(Triple(state, KWG_ONT.sfContains, zip_area))
        g.insert(Triple(zip_area, KWG_ONT.sfWithin, state))

        county = county_iri(rec.county_label)
        g.insert(Triple(county, RDF.type, KWG_ONT.AdministrativeRegion_3))
        g.insert(Triple(county, RDFS.label, Literal(rec.county_label)))
        g.insert(Triple(county, KWG_ONT.sfContains, zip_area))
        g.insert(Triple(zip_area, KWG_ONT.sfWithin, county))

        if rec.kwg_sameas:
            try:
                g.insert(Triple(zip_area, OWL.sameAs, Iri(rec.kwg_sameas)))
            except TermError as exc:
                raise IngestError(f"zip {rec.zip}: bad sameAs IRI: {exc}") from None
    return g


# ---------------------------------------------------------------------------
# Whole-load orchestration
# ---------------------------------------------------------------------------


@dataclass
class IngestConfig:
    registrations: Optional[Path] = None
    stations: Optional[Path] = None
    transmission: Optional[Path] = None
    zip_areas: Optional[Path] = None
    materialize_spatial: bool = True
    subclass_closure: bool = True


def build_graph(config: IngestConfig) -> tuple[Graph, LoadReport]:
    """Run every configured pipeline and merge into one graph.

    Always includes the fixed vocabulary individuals (charger levels,
    connector types) because instance queries match on their labels.
    Spatial materialization and subclass closure are applied here when the
    config asks for them.
    """
    from . import materialize  # local import: materialize depends on this module's IRIs

    report = LoadReport()
    merged = Graph()
    merged.update(individuals_graph())

    if config.zip_areas:
        records, issues = read_zip_areas(config.zip_areas)
        report.skipped.extend(issues)
        report.bump("zip_areas", len(records))
        merged.update(triplify_places(records))
    if config.registrations:
        records, issues = read_registrations(config.registrations)
        report.skipped.extend(issues)
        collections = aggregate_registrations(records)
        products = sorted({product_key(r) for r in records}, key=lambda k: product_iri(k).value)
        report.bump("registration_records", len(records))
        report.bump("registration_collections", len(collections))
        report.bump("products", len(products))
        merged.update(triplify_adoption(collections, products))
    if config.stations:
        records, issues = read_stations(config.stations)
        report.skipped.extend(issues)
        report.bump("stations", len(records))
        merged.update(triplify_stations(records))
    if config.transmission:
        records, issues = read_transmission(config.transmission)
        report.skipped.extend(issues)
        for rec in records:
            report.bump(f"transmission_{rec.kind}s")
        merged.update(triplify_transmission(records))

    if config.subclass_closure:
        report.bump("closure_triples", materialize.materialize_subclass_closure(merged))
    if config.materialize_spatial:
        spatial = materialize.materialize_spatial_relations(merged)
        report.bump("spatial_triples", spatial.added_total)
    return merged, report
