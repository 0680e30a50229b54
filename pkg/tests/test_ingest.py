from __future__ import annotations

import csv
from pathlib import Path

import pytest

from evkg.ingest import (
    ChargerGroup,
    DanglingProductKey,
    DuplicateZip,
    RegistrationRecord,
    StationRecord,
    UnknownVocabularyToken,
    ZipAreaRecord,
    aggregate_registrations,
    build_graph,
    collection_iri,
    product_iri,
    product_key,
    read_registrations,
    read_stations,
    triplify_adoption,
    triplify_places,
    triplify_stations,
    triplify_transmission,
    zip_area_iri,
    TransmissionAssetRecord,
)
from evkg.ntriples import serialize_ntriples
from evkg.terms import EV_ONT, EVR, KWG_ONT, OWL, RDF, RDFS, GEO, Iri, Literal, Triple, XSD_INTEGER
from conftest import fixture_config


def _registration(zip_code="07677", year=2019, **overrides) -> RegistrationRecord:
    fields = dict(
        vin8="WBY1Z4C5",
        zip=zip_code,
        model_year=2018,
        registration_year=year,
        make="BMW",
        model="i3",
        technology="BEV",
        manufacturer="BMW of North America Inc.",
        use_case="compact",
        weight_level="light-duty",
        charger_types=frozenset({"LEVEL2", "DCFC"}),
        connector_types=frozenset({"J1772", "J1772COMBO"}),
    )
    fields.update(overrides)
    return RegistrationRecord(**fields)


def _station(**overrides) -> StationRecord:
    fields = dict(
        station_id="ST1",
        name="Test Station",
        lon=-74.6,
        lat=40.5,
        zip="07677",
        access="public",
        network="ChargePoint Network",
        operating_hours="24 hours daily  ",
        open_date="2020-05-01",
        open_year=2020,
        pricing=None,
        parking_restriction=None,
        charger_groups=(ChargerGroup("DCFC", "CHADEMO", 2), ChargerGroup("DCFC", "J1772COMBO", 2)),
    )
    fields.update(overrides)
    return StationRecord(**fields)


# --- aggregation -------------------------------------------------------------


def test_36_identical_records_one_collection():
    records = [_registration() for _ in range(36)]
    collections = aggregate_registrations(records)
    assert len(collections) == 1
    assert collections[0].amount == 36
    assert collections[0].zip == "07677"
    assert collections[0].year == 2019


def test_zero_records_zero_collections():
    assert aggregate_registrations([]) == []


def test_split_across_zips_hand_count():
    records = [_registration("07677") for _ in range(7)] + [
        _registration("07001") for _ in range(3)
    ]
    collections = {(c.zip, c.amount) for c in aggregate_registrations(records)}
    assert collections == {("07677", 7), ("07001", 3)}


def test_amounts_conserve_record_count():
    records = (
        [_registration() for _ in range(5)]
        + [_registration(year=2020) for _ in range(4)]
        + [_registration(model="iX") for _ in range(2)]
    )
    collections = aggregate_registrations(records)
    assert sum(c.amount for c in collections) == len(records)


# --- adoption triplification ---------------------------------------------------


def test_adoption_emits_collection_facts():
    records = [_registration() for _ in range(36)]
    collections = aggregate_registrations(records)
    key = product_key(records[0])
    g = triplify_adoption(collections, [key])
    coll = collection_iri("07677", 2019, key)
    assert Triple(coll, EV_ONT.hasAmount, Literal("36", XSD_INTEGER)) in g
    assert Triple(coll, EV_ONT.hasSpatialScope, zip_area_iri("07677")) in g
    prod = product_iri(key)
    assert Triple(prod, EV_ONT.hasMakeType, EVR["maketype.BMW"]) in g
    assert Triple(prod, RDFS.label, Literal("BMW i3")) in g


def test_product_with_two_connectors_two_matchable_triples():
    rec = _registration()
    key = product_key(rec)
    g = triplify_adoption(aggregate_registrations([rec]), [key])
    matchable = g.objects(product_iri(key), EV_ONT.hasMatchableConnectorType)
    assert set(matchable) == {EVR["connectortype.J1772"], EVR["connectortype.J1772COMBO"]}


def test_adoption_deterministic():
    records = [_registration(), _registration(zip_code="07001"), _registration(model="iX")]
    keys = sorted({product_key(r) for r in records}, key=lambda k: product_iri(k).value)
    one = triplify_adoption(aggregate_registrations(records), keys)
    two = triplify_adoption(aggregate_registrations(list(reversed(records))), keys)
    assert serialize_ntriples(one) == serialize_ntriples(two)


def test_dangling_product_key_rejected():
    rec = _registration()
    with pytest.raises(DanglingProductKey):
        triplify_adoption(aggregate_registrations([rec]), [])


def test_unknown_connector_token_named():
    rec = _registration(connector_types=frozenset({"WARPPLUG"}))
    with pytest.raises(UnknownVocabularyToken) as exc:
        triplify_adoption(aggregate_registrations([rec]), [product_key(rec)])
    assert "WARPPLUG" in str(exc.value)


# --- station triplification ---------------------------------------------------


def test_station_types_and_collections():
    g = triplify_stations([_station()])
    stn = EVR["chargingstation.ST1"]
    types = set(g.objects(stn, RDF.type))
    assert EV_ONT.PublicChargingStation in types
    assert EV_ONT.NetworkedChargingStation in types
    collections = g.objects(stn, EV_ONT.hosts)
    assert len(collections) == 2
    for cc in collections:
        [amount] = g.objects(cc, EV_ONT.hasAmount)
        assert amount == Literal("2", XSD_INTEGER)


def test_station_operating_hours_preserved_byte_exact():
    g = triplify_stations([_station()])
    stn = EVR["chargingstation.ST1"]
    assert g.value(stn, EV_ONT.hasOperatingHours) == Literal("24 hours daily  ")


def test_station_without_groups_emits_no_collections():
    g = triplify_stations([_station(charger_groups=())])
    stn = EVR["chargingstation.ST1"]
    assert g.objects(stn, EV_ONT.hosts) == []
    assert EV_ONT.PublicChargingStation in g.objects(stn, RDF.type)


def test_private_nonnetworked_station_types():
    g = triplify_stations([_station(access="private", network=None)])
    stn = EVR["chargingstation.ST1"]
    types = set(g.objects(stn, RDF.type))
    assert EV_ONT.PrivateChargingStation in types
    assert EV_ONT.NonNetworkedChargingStation in types


def test_station_unknown_charger_token():
    bad = _station(charger_groups=(ChargerGroup("TURBO", "J1772", 1),))
    with pytest.raises(UnknownVocabularyToken) as exc:
        triplify_stations([bad])
    assert "TURBO" in str(exc.value)


def test_station_has_exactly_one_geometry(fixture_graph):
    for cls in (EV_ONT.PublicChargingStation, EV_ONT.Substation, EV_ONT.PowerPlant,
                EV_ONT.TransmissionLine, KWG_ONT.ZipCodeArea):
        for feature in fixture_graph.subjects(RDF.type, cls):
            nodes = fixture_graph.objects(feature, GEO.hasGeometry)
            assert len(nodes) == 1, feature
            wkts = fixture_graph.objects(nodes[0], GEO.asWKT)
            assert len(wkts) == 1, feature


# --- transmission ------------------------------------------------------------


def test_line_voltage_class_labeled():
    rec = TransmissionAssetRecord(
        asset_id="L1", kind="line", geometry_wkt="LINESTRING (0 0, 5 5)",
        voltage_class="500", status="IN SERVICE", owner="PSEG",
    )
    g = triplify_transmission([rec])
    line = EVR["transmissionline.L1"]
    [vc] = g.objects(line, EV_ONT.hasVoltageClass)
    assert g.value(vc, RDFS.label) == Literal("500")


def test_substation_two_voltage_triples():
    rec = TransmissionAssetRecord(
        asset_id="S1", kind="substation", geometry_wkt="POINT (1 1)",
        min_voltage="115", max_voltage="345",
    )
    g = triplify_transmission([rec])
    sub = EVR["substation.S1"]
    assert g.value(sub, EV_ONT.hasMinVoltage) is not None
    assert g.value(sub, EV_ONT.hasMaxVoltage) is not None


def test_plant_with_only_operating_capacity():
    rec = TransmissionAssetRecord(
        asset_id="P1", kind="plant", geometry_wkt="POINT (2 2)", operating_capacity="300",
    )
    g = triplify_transmission([rec])
    plant = EVR["powerplant.P1"]
    assert g.value(plant, EV_ONT.hasOperatingCapacity) is not None
    assert g.value(plant, EV_ONT.hasSummerCapacity) is None
    assert g.value(plant, EV_ONT.hasWinterCapacity) is None


def test_line_with_point_geometry_rejected():
    with pytest.raises(Exception):
        TransmissionAssetRecord(asset_id="L2", kind="line", geometry_wkt="POINT (0 0)")


# --- places --------------------------------------------------------------------


def test_places_hierarchy_and_label():
    rec = ZipAreaRecord(
        zip="95814",
        polygon_wkt="POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0))",
        state_label="California",
        county_label="Sacramento",
    )
    g = triplify_places([rec])
    zip_area = zip_area_iri("95814")
    state = EVR["state.California"]
    assert g.value(zip_area, RDFS.label) == Literal("zip code 95814")
    assert Triple(state, KWG_ONT.sfContains, zip_area) in g
    assert Triple(zip_area, KWG_ONT.sfWithin, state) in g


def test_places_sameas_emitted_once():
    rec = ZipAreaRecord(
        zip="95814",
        polygon_wkt="POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0))",
        state_label="California",
        county_label="Sacramento",
        kwg_sameas="http://stko-kwg.geog.ucsb.edu/lod/resource/zipCodeArea.95814",
    )
    g = triplify_places([rec])
    assert len(list(g.match(None, OWL.sameAs, None))) == 1


def test_places_hierarchy_triple_count():
    records = [
        ZipAreaRecord(
            zip=f"0700{i}",
            polygon_wkt=f"POLYGON (({i * 2} 0, {i * 2 + 1} 0, {i * 2 + 1} 1, {i * 2} 1, {i * 2} 0))",
            state_label="New Jersey",
            county_label=f"County{i}",
        )
        for i in range(4)
    ]
    g = triplify_places(records)
    # 2N per parent level: state<->zip and county<->zip
    assert len(list(g.match(None, KWG_ONT.sfContains, None))) == 2 * len(records)
    assert len(list(g.match(None, KWG_ONT.sfWithin, None))) == 2 * len(records)


def test_duplicate_zip_rejected():
    rec = ZipAreaRecord(
        zip="95814", polygon_wkt="POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0))",
        state_label="California", county_label="Sacramento",
    )
    with pytest.raises(DuplicateZip):
        triplify_places([rec, rec])


# --- CSV readers ----------------------------------------------------------------


def test_bad_rows_skipped_with_row_numbers(tmp_path: Path):
    path = tmp_path / "registrations.csv"
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["vin8", "zip", "model_year", "registration_year", "make", "model",
             "technology", "manufacturer", "use_case", "weight_level",
             "charger_types", "connector_types"])
        writer.writerow(["WBY1Z4C5", "07677", 2018, 2019, "BMW", "i3", "BEV",
                         "BMW NA", "compact", "light-duty", "DCFC", "J1772COMBO"])
        writer.writerow(["SHORT", "07677", 2018, 2019, "BMW", "i3", "BEV",
                         "BMW NA", "compact", "light-duty", "DCFC", "J1772COMBO"])
        writer.writerow(["WBY1Z4C5", "0767", 2018, 2019, "BMW", "i3", "BEV",
                         "BMW NA", "compact", "light-duty", "DCFC", "J1772COMBO"])
    records, issues = read_registrations(path)
    assert len(records) == 1
    assert [i.row for i in issues] == [3, 4]


def test_header_only_registrations(tmp_path: Path):
    path = tmp_path / "registrations.csv"
    path.write_text(
        "vin8,zip,model_year,registration_year,make,model,technology,"
        "manufacturer,use_case,weight_level,charger_types,connector_types\n",
        encoding="utf-8",
    )
    records, issues = read_registrations(path)
    assert records == [] and issues == []
    assert aggregate_registrations(records) == []


def test_station_reader_round_trips_trailing_spaces(fixtures_dir):
    records, issues = read_stations(fixtures_dir / "stations.csv")
    assert not issues
    ca001 = next(r for r in records if r.station_id == "CA001")
    assert ca001.operating_hours == "24 hours daily  "
    assert ca001.open_year == 2020


# --- whole-load determinism ----------------------------------------------------


def test_double_ingest_byte_identical():
    one, _ = build_graph(fixture_config())
    two, _ = build_graph(fixture_config())
    assert serialize_ntriples(one) == serialize_ntriples(two)


def test_conservation_per_state_year(fixture_graph, fixtures_dir):
    """Sum of collection amounts per (state, year) equals raw record count."""
    zip_state: dict[str, str] = {}
    with open(fixtures_dir / "zip_areas.csv", newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            zip_state[row["zip"]] = row["state"]
    expected: dict[tuple[str, str], int] = {}
    with open(fixtures_dir / "registrations.csv", newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            key = (zip_state[row["zip"]], row["registration_year"])
            expected[key] = expected.get(key, 0) + 1

    actual: dict[tuple[str, str], int] = {}
    for coll in fixture_graph.subjects(RDF.type, EV_ONT.ElectricVehicleRegistrationCollection):
        [zip_area] = fixture_graph.objects(coll, EV_ONT.hasSpatialScope)
        [year] = fixture_graph.objects(coll, EV_ONT.hasTemporalScope)
        [amount] = fixture_graph.objects(coll, EV_ONT.hasAmount)
        assert isinstance(zip_area, Iri)
        zip_code = zip_area.value.rsplit(".", 1)[-1]
        key = (zip_state[zip_code], year.lexical)
        actual[key] = actual.get(key, 0) + int(amount.lexical)
    assert actual == expected


def test_fixture_36_record_walkthrough(fixture_graph):
    """The 07677/2019 BMW i3 collection has amount exactly 36."""
    from evkg.terms import XSD_GYEAR

    found = []
    for coll in fixture_graph.subjects(RDF.type, EV_ONT.ElectricVehicleRegistrationCollection):
        if fixture_graph.value(coll, EV_ONT.hasSpatialScope) != zip_area_iri("07677"):
            continue
        if fixture_graph.value(coll, EV_ONT.hasTemporalScope) != Literal("2019", XSD_GYEAR):
            continue
        [prod] = fixture_graph.objects(coll, EV_ONT.hasProductInfo)
        if fixture_graph.value(prod, RDFS.label) == Literal("BMW i3"):
            found.append(coll)
    assert len(found) == 1
    assert fixture_graph.value(found[0], EV_ONT.hasAmount) == Literal("36", XSD_INTEGER)
