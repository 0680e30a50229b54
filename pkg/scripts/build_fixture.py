#!/usr/bin/env python3
"""Generate the committed CSV fixture corpus under fixtures/.

Everything is declarative and deterministic: zip code areas are 0.8-degree
squares on a grid, and every feature sits well inside (or deliberately on
the boundary of) its declared zip so containment facts can be recomputed by
hand. The competency-question scenarios are wired in:

* Zip 95814 carries the station-search scenario: exactly one public,
  ChargePoint-networked, "24 hours daily  " station hosting a CHAdeMO
  fast charger (CA001); its neighbors each fail one of the filters.
* The 36-record BMW i3 collection in zip 07677 (2019) reproduces the
  registration-grouping walkthrough.
* NJ zips are tuned so that exactly 07001 and 07003 satisfy: CCS charger
  to CCS-EV ratio below 0.1, more than 98 CCS-EV registrations in 2021,
  and a 500-class transmission line crossing (07002/07030 fail the
  registration bar, 07677/07601 fail the ratio bar, 08904/07094 lack a
  500-class line, 07960 lacks stations).

Run with --check to verify the committed files match regeneration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def square(x0: float, y0: float, size: float = 0.8) -> str:
    def fmt(v: float) -> str:
        text = f"{v:.9f}".rstrip("0").rstrip(".")
        return "0" if text in ("-0", "") else text

    x1, y1 = x0 + size, y0 + size
    pts = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)]
    return "POLYGON ((" + ", ".join(f"{fmt(x)} {fmt(y)}" for x, y in pts) + "))"


KWG_RES = "http://stko-kwg.geog.ucsb.edu/lod/resource/"

# zip -> (x0, y0, state, county, kwg_sameas)
ZIPS: dict[str, tuple[float, float, str, str, str]] = {
    # New Jersey, row 0
    "07677": (-75.0, 40.0, "New Jersey", "Bergen", KWG_RES + "zipCodeArea.07677"),
    "07001": (-74.0, 40.0, "New Jersey", "Middlesex", ""),
    "07002": (-73.0, 40.0, "New Jersey", "Hudson", ""),
    "07003": (-72.0, 40.0, "New Jersey", "Essex", ""),
    # New Jersey, row 1
    "07670": (-75.0, 41.0, "New Jersey", "Bergen", ""),
    "08904": (-74.0, 41.0, "New Jersey", "Middlesex", ""),
    "08901": (-73.0, 41.0, "New Jersey", "Middlesex", ""),
    "07302": (-72.0, 41.0, "New Jersey", "Hudson", ""),
    # New Jersey, row 2
    "07094": (-75.0, 42.0, "New Jersey", "Hudson", ""),
    "07102": (-74.0, 42.0, "New Jersey", "Essex", ""),
    "07030": (-73.0, 42.0, "New Jersey", "Hudson", ""),
    "07601": (-72.0, 42.0, "New Jersey", "Bergen", ""),
    # New Jersey, row 3
    "08540": (-75.0, 43.0, "New Jersey", "Mercer", ""),
    "08008": (-74.0, 43.0, "New Jersey", "Ocean", ""),
    "07960": (-73.0, 43.0, "New Jersey", "Morris", ""),
    "08102": (-72.0, 43.0, "New Jersey", "Camden", ""),
    # New Jersey, row 4 (no 500-class line crosses this row)
    "07728": (-75.0, 44.0, "New Jersey", "Monmouth", ""),
    "08628": (-74.0, 44.0, "New Jersey", "Mercer", ""),
    "07871": (-73.0, 44.0, "New Jersey", "Sussex", ""),
    "08332": (-72.0, 44.0, "New Jersey", "Cumberland", ""),
    # California
    "95814": (-122.0, 38.0, "California", "Sacramento", KWG_RES + "zipCodeArea.95814"),
    "95816": (-121.0, 38.0, "California", "Sacramento", ""),
    "94103": (-120.0, 38.0, "California", "San Francisco", ""),
    "90210": (-119.0, 38.0, "California", "Los Angeles", ""),
    "92101": (-118.0, 38.0, "California", "San Diego", ""),
    "94301": (-117.0, 38.0, "California", "Santa Clara", ""),
    # Washington (King county drives the county-level query scenario)
    "98101": (-122.5, 47.0, "Washington", "King", ""),
    "98052": (-121.5, 47.0, "Washington", "King", ""),
    "98004": (-120.5, 47.0, "Washington", "King", ""),
    "98033": (-119.5, 47.0, "Washington", "King", ""),
    "98225": (-118.5, 47.0, "Washington", "Whatcom", ""),
    "98501": (-117.5, 47.0, "Washington", "Thurston", ""),
}

# vin8, make, model, model_year, technology, manufacturer, use_case,
# weight_level, charger_types, connector_types
PRODUCTS: dict[str, tuple] = {
    "i3-2018": (
        "WBY1Z4C5", "BMW", "i3", 2018, "BEV", "BMW of North America Inc.",
        "compact", "light-duty", "LEVEL2|DCFC", "J1772|J1772COMBO",
    ),
    "leaf-2018": (
        "1N4AZ0CP", "Nissan", "Leaf", 2018, "BEV", "Nissan North America Inc.",
        "compact", "light-duty", "LEVEL2|DCFC", "J1772|CHADEMO",
    ),
    "leaf-2021": (
        "1N4AZ1CP", "Nissan", "Leaf", 2021, "BEV", "Nissan North America Inc.",
        "compact", "light-duty", "LEVEL2|DCFC", "J1772|CHADEMO",
    ),
    "model3-2018": (
        "5YJ3E1EA", "Tesla", "Model 3", 2018, "BEV", "Tesla Inc.",
        "sedan", "light-duty", "LEVEL2|DCFC", "TESLA",
    ),
    "model3-2021": (
        "5YJ3E1EB", "Tesla", "Model 3", 2021, "BEV", "Tesla Inc.",
        "sedan", "light-duty", "LEVEL2|DCFC", "TESLA",
    ),
    "bolt-2020": (
        "1G1FY6S0", "Chevrolet", "Bolt EV", 2020, "BEV", "General Motors LLC",
        "compact", "light-duty", "LEVEL2|DCFC", "J1772|J1772COMBO",
    ),
    "prius-2020": (
        "JTDKARFP", "Toyota", "Prius Prime", 2020, "PHEV", "Toyota Motor North America",
        "compact", "light-duty", "LEVEL1|LEVEL2", "J1772",
    ),
}

# (product, zip, registration_year, record count)
REGISTRATIONS: list[tuple[str, str, int, int]] = [
    # BMW i3 (CCS): the 36-record walkthrough collection, plus volume
    ("i3-2018", "07677", 2019, 36),
    ("i3-2018", "07677", 2021, 200),
    ("i3-2018", "07001", 2021, 70),
    ("i3-2018", "07003", 2021, 180),
    ("i3-2018", "07094", 2021, 150),
    ("i3-2018", "08540", 2019, 40),
    ("i3-2018", "08540", 2020, 60),
    ("i3-2018", "92101", 2019, 30),
    ("i3-2018", "94103", 2021, 90),
    ("i3-2018", "98004", 2021, 55),
    # Chevrolet Bolt EV (CCS)
    ("bolt-2020", "07001", 2021, 50),
    ("bolt-2020", "07002", 2021, 50),
    ("bolt-2020", "07003", 2021, 120),
    ("bolt-2020", "08904", 2021, 150),
    ("bolt-2020", "07030", 2021, 80),
    ("bolt-2020", "07094", 2021, 250),
    ("bolt-2020", "07601", 2021, 500),
    ("bolt-2020", "07960", 2021, 150),
    ("bolt-2020", "90210", 2021, 45),
    ("bolt-2020", "94301", 2021, 70),
    ("bolt-2020", "98033", 2021, 65),
    # Nissan Leaf (CHAdeMO)
    ("leaf-2018", "07677", 2019, 10),
    ("leaf-2018", "07001", 2020, 15),
    ("leaf-2018", "92101", 2020, 20),
    ("leaf-2021", "07003", 2021, 25),
    ("leaf-2021", "95814", 2021, 8),
    ("leaf-2021", "94103", 2021, 20),
    # Tesla Model 3 (Tesla connector)
    ("model3-2018", "07670", 2019, 20),
    ("model3-2018", "07670", 2020, 30),
    ("model3-2018", "94301", 2019, 25),
    ("model3-2021", "08904", 2021, 40),
    ("model3-2021", "07102", 2021, 35),
    ("model3-2021", "98101", 2021, 22),
    ("model3-2021", "94103", 2021, 60),
    ("model3-2021", "90210", 2021, 120),
    # Toyota Prius Prime (no fast charging)
    ("prius-2020", "07302", 2021, 12),
    ("prius-2020", "08102", 2021, 30),
    ("prius-2020", "94301", 2021, 15),
    # Row-4 New Jersey zips: high CCS adoption, but no 500-class line,
    # so none of them can enter the shortage shortlist.
    ("i3-2018", "07728", 2021, 140),
    ("bolt-2020", "07728", 2021, 160),
    ("i3-2018", "08628", 2019, 45),
    ("bolt-2020", "08628", 2021, 160),
    ("prius-2020", "07871", 2021, 40),
    ("model3-2021", "08332", 2021, 60),
    ("model3-2018", "08332", 2019, 15),
    # Washington filler outside King county
    ("bolt-2020", "98225", 2021, 90),
    ("leaf-2018", "98501", 2020, 25),
]

# station_id, name, lon, lat, zip, access, network, operating_hours,
# open_date, pricing, parking_restriction, charger_groups
STATIONS: list[tuple] = [
    # 95814: the station-search scenario. Exactly CA001 qualifies.
    ("CA001", "Downtown Garage Chargers", -121.6, 38.4, "95814", "public",
     "ChargePoint Network", "24 hours daily  ", "2020-05-01", "$0.25/kWh", "",
     "DCFC:CHADEMO:2|DCFC:J1772COMBO:2|LEVEL2:J1772:4"),
    ("CA002", "Capitol Private Lot", -121.7, 38.3, "95814", "private",
     "ChargePoint Network", "24 hours daily  ", "2019-03-15", "", "Employees only",
     "DCFC:CHADEMO:1"),
    ("CA003", "Midtown Fast Plaza", -121.5, 38.5, "95814", "public",
     "EVgo", "24 hours daily  ", "2021-01-20", "$0.30/kWh", "",
     "DCFC:CHADEMO:2"),
    ("CA004", "River Park Chargers", -121.4, 38.6, "95814", "public",
     "ChargePoint Network", "6am-10pm daily", "2020-08-10", "", "",
     "DCFC:CHADEMO:2"),
    ("CA005", "Old Town Level 2", -121.8, 38.2, "95814", "public",
     "ChargePoint Network", "24 hours daily  ", "2018-11-05", "", "",
     "LEVEL2:J1772:6"),
    ("CA006", "East Sac Chargers", -120.6, 38.4, "95816", "public",
     "EVgo", "24 hours daily", "2021-06-15", "", "", "DCFC:J1772COMBO:3"),
    ("CA007", "Mission District Hub", -119.6, 38.4, "94103", "public",
     "ChargePoint Network", "24 hours daily", "2020-09-19", "", "",
     "DCFC:J1772COMBO:8|LEVEL2:J1772:6"),
    ("CA008", "SoMa Garage", -119.4, 38.6, "94103", "public",
     "EVgo", "24 hours daily", "2021-03-02", "$0.28/kWh", "",
     "DCFC:CHADEMO:2|DCFC:J1772COMBO:4"),
    ("CA009", "Rodeo Drive Valet", -118.6, 38.4, "90210", "private",
     "Tesla Destination", "9am-9pm daily", "2019-07-08", "", "Customers only",
     "DCFC:TESLA:6"),
    ("CA010", "Harbor View Plaza", -117.6, 38.3, "92101", "public",
     "Electrify America", "24 hours daily", "2021-10-26", "", "",
     "DCFC:J1772COMBO:10|DCFC:CHADEMO:2"),
    ("CA011", "University Ave Chargers", -116.6, 38.4, "94301", "public",
     "ChargePoint Network", "24 hours daily", "2018-04-12", "", "",
     "LEVEL2:J1772:12"),
    ("CA012", "Embarcadero Lot", -119.5, 38.2, "94103", "public",
     "", "24 hours daily", "2017-06-23", "", "", "LEVEL2:J1772:4"),
    # New Jersey row 0
    ("NJ001", "Westwood Center Chargers", -74.6, 40.5, "07677", "public",
     "ChargePoint Network", "24 hours daily", "2019-04-01", "", "",
     "DCFC:J1772COMBO:10"),
    ("NJ002", "Pascack Valley Plaza", -74.4, 40.6, "07677", "public",
     "EVgo", "24 hours daily", "2020-07-15", "$0.31/kWh", "",
     "DCFC:J1772COMBO:20|DCFC:CHADEMO:5"),
    ("NJ003", "Avenel Park and Charge", -73.6, 40.5, "07001", "public",
     "Electrify America", "24 hours daily", "2020-03-10", "", "",
     "DCFC:J1772COMBO:6|DCFC:CHADEMO:2"),
    ("NJ004", "Bayonne Harbor Chargers", -72.6, 40.5, "07002", "public",
     "EVgo", "24 hours daily", "2021-05-20", "", "",
     "DCFC:J1772COMBO:2|LEVEL2:J1772:8"),
    ("NJ005", "Bloomfield Tesla Corner", -71.8, 40.5, "07003", "public",
     "Tesla Destination", "24 hours daily", "2021-02-14", "", "",
     "DCFC:TESLA:12"),
    ("NJ006", "Bloomfield Ave Fast Hub", -71.4, 40.6, "07003", "public",
     "Electrify America", "24 hours daily", "2019-09-30", "", "",
     "DCFC:J1772COMBO:15"),
    # New Jersey row 1
    ("NJ007", "Highland Park Residences", -73.6, 41.5, "08904", "private",
     "", "6am-8pm weekdays", "2021-03-01", "", "Residents only",
     "DCFC:J1772COMBO:3"),
    ("NJ008", "Tenafly Commons", -74.6, 41.5, "07670", "public",
     "Tesla Destination", "24 hours daily", "2020-10-05", "", "",
     "DCFC:TESLA:8|LEVEL2:J1772:4"),
    ("NJ009", "New Brunswick Lot 9", -72.6, 41.5, "08901", "public",
     "", "24 hours daily", "2022-01-10", "", "", ""),
    # New Jersey row 2
    ("NJ010", "Secaucus Junction North", -74.6, 42.4, "07094", "public",
     "EVgo", "24 hours daily", "2021-04-18", "", "",
     "DCFC:J1772COMBO:30|DCFC:CHADEMO:4"),
    ("NJ011", "Secaucus Outlets", -74.4, 42.2, "07094", "public",
     "Electrify America", "24 hours daily", "2021-08-22", "", "",
     "DCFC:J1772COMBO:20"),
    ("NJ012", "Newark Ironbound Garage", -73.6, 42.4, "07102", "public",
     "Tesla Destination", "24 hours daily", "2019-12-01", "", "",
     "DCFC:TESLA:10"),
    ("NJ013", "Hoboken Terminal Chargers", -72.6, 42.4, "07030", "public",
     "ChargePoint Network", "24 hours daily", "2020-06-30", "", "",
     "DCFC:J1772COMBO:4"),
    ("NJ014", "Hackensack River Plaza", -71.6, 42.4, "07601", "public",
     "EVgo", "24 hours daily", "2021-09-12", "$0.33/kWh", "",
     "DCFC:J1772COMBO:60|LEVEL2:J1772:10"),
    ("NJ015", "Hackensack Main Street", -71.4, 42.2, "07601", "public",
     "EVgo", "24 hours daily", "2020-02-28", "", "",
     "DCFC:J1772COMBO:40"),
    # New Jersey row 3
    ("NJ016", "Princeton Forrestal", -74.6, 43.4, "08540", "public",
     "Electrify America", "24 hours daily", "2019-05-17", "", "",
     "DCFC:J1772COMBO:12"),
    ("NJ017", "Long Beach Island Hub", -73.6, 43.4, "08008", "public",
     "EVgo", "24 hours daily", "2021-07-04", "", "",
     "DCFC:J1772COMBO:5"),
    ("NJ018", "Camden Waterfront", -71.6, 43.4, "08102", "public",
     "", "24 hours daily", "2018-08-08", "", "",
     "LEVEL2:J1772:6|LEVEL1:NEMA:2"),
    # New Jersey row 4
    ("NJ019", "Freehold Raceway Mall", -74.6, 44.4, "07728", "public",
     "EVgo", "24 hours daily", "2020-04-04", "", "",
     "DCFC:J1772COMBO:25|LEVEL2:J1772:6"),
    ("NJ020", "Ewing Town Chargers", -73.6, 44.4, "08628", "public",
     "ChargePoint Network", "24 hours daily", "2019-10-10", "", "",
     "DCFC:CHADEMO:6|DCFC:J1772COMBO:10"),
    ("NJ021", "Sparta Municipal Lot", -72.6, 44.4, "07871", "public",
     "", "6am-10pm daily", "2021-12-01", "", "", "LEVEL2:J1772:8"),
    ("NJ022", "Millville Motorsports Park", -71.6, 44.4, "08332", "public",
     "Tesla Destination", "24 hours daily", "2018-06-18", "", "",
     "DCFC:TESLA:9"),
    # Washington (King county)
    ("WA001", "Pike Street Garage", -122.1, 47.5, "98101", "public",
     "Blink", "24 hours daily", "2018-03-25", "", "", "LEVEL2:J1772:6"),
    ("WA002", "Redmond Town Center", -121.2, 47.5, "98052", "public",
     "ChargePoint Network", "24 hours daily  ", "2021-11-11", "", "",
     "DCFC:J1772COMBO:4"),
    ("WA003", "Bellevue Square Chargers", -120.1, 47.4, "98004", "public",
     "EVgo", "24 hours daily", "2020-12-12", "", "",
     "DCFC:J1772COMBO:6"),
    ("WA004", "Kirkland Urban", -119.1, 47.4, "98033", "public",
     "ChargePoint Network", "24 hours daily", "2021-06-06", "", "",
     "DCFC:J1772COMBO:3|LEVEL2:J1772:4"),
    ("WA005", "Bellingham Depot", -118.1, 47.4, "98225", "public",
     "EVgo", "24 hours daily", "2021-03-03", "", "", "DCFC:J1772COMBO:7"),
    ("WA006", "Olympia Capitol Lot", -117.1, 47.4, "98501", "public",
     "", "24 hours daily", "2019-02-02", "", "", "LEVEL2:J1772:5"),
]

# asset_id, kind, wkt, voltage_class, min_v, max_v, summer, winter,
# operating, status, owner
TRANSMISSION: list[tuple] = [
    # 500-class lines wired to the shortage scenario
    ("TL500A", "line", "LINESTRING (-75.5 40.4, -73.1 40.4)",
     "500", "", "", "", "", "", "IN SERVICE", "PSEG"),          # 07677, 07001
    ("TL500B", "line", "LINESTRING (-71.6 39.5, -71.6 40.95)",
     "500", "", "", "", "", "", "IN SERVICE", "PSEG"),          # 07003
    ("TL500C", "line", "LINESTRING (-72.6 39.5, -72.6 40.95)",
     "500", "", "", "", "", "", "IN SERVICE", "JCPL"),          # 07002
    ("TL500D", "line", "LINESTRING (-73.1 42.4, -70.9 42.4)",
     "500", "", "", "", "", "", "IN SERVICE", "PSEG"),          # 07030, 07601
    ("TL230A", "line", "LINESTRING (-75.4 41.4, -73.1 41.4)",
     "230", "", "", "", "", "", "IN SERVICE", "JCPL"),          # 07670, 08904
    ("TL230B", "line", "LINESTRING (-74.6 41.9, -74.6 42.9)",
     "230", "", "", "", "", "", "UNDER CONSTRUCTION", "PSEG"),  # 07094
    ("TL230C", "line", "LINESTRING (-75.3 44.4, -73.1 44.4)",
     "230", "", "", "", "", "", "IN SERVICE", "JCPL"),          # 07728, 08628
    ("TLWA500", "line", "LINESTRING (-122.8 47.4, -120.6 47.4)",
     "500", "", "", "", "", "", "IN SERVICE", "Seattle City Light"),  # 98101, 98052
    ("TLCA230", "line", "LINESTRING (-122.2 38.4, -121.1 38.4)",
     "230", "", "", "", "", "", "IN SERVICE", "SMUD"),          # 95814
    ("TLCA500", "line", "LINESTRING (-120.3 38.4, -118.1 38.4)",
     "500", "", "", "", "", "", "IN SERVICE", "PG&E"),          # 94103, 90210
    # Substations; SUBBND sits exactly on the 07002 boundary on purpose
    ("SUBNJ01", "substation", "POINT (-74.6 40.3)", "", "115", "345", "", "", "", "IN SERVICE", ""),
    ("SUBNJ02", "substation", "POINT (-73.6 40.2)", "", "230", "500", "", "", "", "IN SERVICE", ""),
    ("SUBWA01", "substation", "POINT (-122.1 47.2)", "", "115", "230", "", "", "", "IN SERVICE", ""),
    ("SUBCA01", "substation", "POINT (-119.6 38.3)", "", "115", "500", "", "", "", "IN SERVICE", ""),
    ("SUBBND", "substation", "POINT (-73 40.4)", "", "115", "230", "", "", "", "IN SERVICE", ""),
    ("SUBNJ03", "substation", "POINT (-72.6 44.3)", "", "115", "230", "", "", "", "IN SERVICE", ""),
    # Power plants; PPREMOTE far from any zip, PPNJ01 has one capacity value
    ("PPNJ01", "plant", "POINT (-71.5 40.2)", "", "", "", "", "", "300", "IN SERVICE", ""),
    ("PPNJ02", "plant", "POINT (-71.5 44.5)", "", "", "", "420", "380", "400", "IN SERVICE", ""),
    ("PPWA01", "plant", "POINT (-121.1 47.3)", "", "", "", "500", "450", "480", "IN SERVICE", ""),
    ("PPCA01", "plant", "POINT (-117.6 38.4)", "", "", "", "600", "500", "550", "IN SERVICE", ""),
    ("PPREMOTE", "plant", "POINT (-100 35)", "", "", "", "800", "700", "750", "STANDBY", ""),
]


def registrations_csv() -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "vin8", "zip", "model_year", "registration_year", "make", "model",
            "technology", "manufacturer", "use_case", "weight_level",
            "charger_types", "connector_types",
        ]
    )
    for product, zip_code, year, count in REGISTRATIONS:
        vin8, make, model, model_year, tech, mfr, use, weight, chargers, conns = PRODUCTS[product]
        for _ in range(count):
            writer.writerow(
                [vin8, zip_code, model_year, year, make, model, tech, mfr, use,
                 weight, chargers, conns]
            )
    return out.getvalue()


def stations_csv() -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "station_id", "name", "lon", "lat", "zip", "access", "network",
            "operating_hours", "open_date", "pricing", "parking_restriction",
            "charger_groups",
        ]
    )
    for row in STATIONS:
        writer.writerow(row)
    return out.getvalue()


def transmission_csv() -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "asset_id", "kind", "wkt", "voltage_class", "min_voltage",
            "max_voltage", "summer_capacity", "winter_capacity",
            "operating_capacity", "status", "owner",
        ]
    )
    for row in TRANSMISSION:
        writer.writerow(row)
    return out.getvalue()


def zip_areas_csv() -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["zip", "wkt", "state", "county", "kwg_sameas"])
    for zip_code, (x0, y0, state, county, sameas) in ZIPS.items():
        writer.writerow([zip_code, square(x0, y0), state, county, sameas])
    return out.getvalue()


def config_json() -> str:
    return json.dumps(
        {
            "registrations": "registrations.csv",
            "stations": "stations.csv",
            "transmission": "transmission.csv",
            "zip_areas": "zip_areas.csv",
            "snapshot": "evkg.nt",
            "materialize_spatial": True,
            "subclass_closure": True,
        },
        indent=2,
    ) + "\n"


FILES = {
    "registrations.csv": registrations_csv,
    "stations.csv": stations_csv,
    "transmission.csv": transmission_csv,
    "zip_areas.csv": zip_areas_csv,
    "evkg-config.json": config_json,
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true",
                        help="verify committed files match regeneration")
    parser.add_argument("--out", type=Path, default=FIXTURES)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    status = 0
    for name, build in FILES.items():
        content = build()
        path = args.out / name
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != content:
                print(f"STALE: {path}")
                status = 1
            else:
                print(f"ok: {path}")
        else:
            path.write_text(content, encoding="utf-8")
            print(f"wrote {path}")
    return status


if __name__ == "__main__":
    sys.exit(main())
