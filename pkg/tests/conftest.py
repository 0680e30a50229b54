from __future__ import annotations

from pathlib import Path

import pytest

from evkg.ingest import IngestConfig, build_graph

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def fixture_config(materialize: bool = True) -> IngestConfig:
    return IngestConfig(
        registrations=FIXTURES / "registrations.csv",
        stations=FIXTURES / "stations.csv",
        transmission=FIXTURES / "transmission.csv",
        zip_areas=FIXTURES / "zip_areas.csv",
        materialize_spatial=materialize,
        subclass_closure=materialize,
    )


@pytest.fixture(scope="session")
def fixture_graph():
    """The fully built fixture graph (closure + spatial relations)."""
    graph, report = build_graph(fixture_config())
    assert not report.skipped
    return graph


@pytest.fixture(scope="session")
def raw_fixture_graph():
    """Fixture graph before any materialization."""
    graph, report = build_graph(fixture_config(materialize=False))
    assert not report.skipped
    return graph
