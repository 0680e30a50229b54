from __future__ import annotations

import random

from hypothesis import given
from hypothesis import strategies as st

from evkg.graph import Graph
from evkg.terms import EV_ONT, EVR, RDF_TYPE, Literal, Triple, XSD_INTEGER

STATION = EV_ONT.ChargingStation


def _triple_pool():
    subjects = [EVR[f"s{i}"] for i in range(8)]
    predicates = [EV_ONT[f"p{i}"] for i in range(4)]
    objects = [EVR[f"o{i}"] for i in range(6)] + [Literal(str(i), XSD_INTEGER) for i in range(4)]
    return subjects, predicates, objects


triples_strategy = st.lists(
    st.builds(
        Triple,
        st.sampled_from(_triple_pool()[0]),
        st.sampled_from(_triple_pool()[1]),
        st.sampled_from(_triple_pool()[2]),
    ),
    max_size=120,
)


def test_insert_twice_returns_false_and_keeps_size():
    g = Graph()
    t = Triple(EVR["s1"], RDF_TYPE, STATION)
    assert g.insert(t) is True
    assert g.insert(t) is False
    assert len(g) == 1


def test_insert_singleton():
    g = Graph()
    g.insert(Triple(EVR["s1"], RDF_TYPE, STATION))
    assert len(g) == 1


@given(triples_strategy)
def test_insert_distinct_then_reinsert_all(triples):
    # Oracle: deduplicated list length.
    g = Graph()
    for t in triples:
        g.insert(t)
    assert len(g) == len(set(triples))
    for t in triples:
        assert g.insert(t) is False
    assert len(g) == len(set(triples))


def test_match_all_on_empty_graph():
    assert list(Graph().match()) == []


@given(triples_strategy, st.randoms())
def test_match_agrees_with_linear_scan(triples, rng):
    g = Graph(triples)
    pool_s, pool_p, pool_o = _triple_pool()
    for _ in range(12):
        s = rng.choice([None, rng.choice(pool_s)])
        p = rng.choice([None, rng.choice(pool_p)])
        o = rng.choice([None, rng.choice(pool_o)])
        expected = {
            t
            for t in triples
            if (s is None or t.subject == s)
            and (p is None or t.predicate == p)
            and (o is None or t.object == o)
        }
        assert set(g.match(s, p, o)) == expected


def test_match_by_subject_hand_count():
    g = Graph()
    for i in range(3):
        g.insert(Triple(EVR["s1"], EV_ONT[f"p{i}"], EVR[f"o{i}"]))
    for i in range(2):
        g.insert(Triple(EVR["s2"], EV_ONT[f"p{i}"], EVR[f"o{i}"]))
    assert len(list(g.match(EVR["s1"], None, None))) == 3


def test_match_type_returns_exactly_inserted_stations():
    g = Graph()
    stations = [EVR[f"stn{i}"] for i in range(5)]
    for s in stations:
        g.insert(Triple(s, RDF_TYPE, STATION))
    g.insert(Triple(EVR["x"], RDF_TYPE, EV_ONT.PowerPlant))
    found = {t.subject for t in g.match(None, RDF_TYPE, STATION)}
    assert found == set(stations)


@given(triples_strategy)
def test_index_sizes_always_agree(triples):
    g = Graph(triples)
    sizes = g.index_sizes()
    assert sizes == (len(g), len(g), len(g))


@given(triples_strategy, st.randoms())
def test_insertion_order_never_affects_match(triples, rng):
    g1 = Graph(triples)
    shuffled = list(triples)
    rng.shuffle(shuffled)
    g2 = Graph(shuffled)
    assert set(g1.match()) == set(g2.match())
    for s in _triple_pool()[0][:3]:
        assert set(g1.match(s, None, None)) == set(g2.match(s, None, None))


def test_fully_bound_match_consistent_with_membership():
    g = Graph()
    t = Triple(EVR["s"], RDF_TYPE, STATION)
    g.insert(t)
    assert list(g.match(t.subject, t.predicate, t.object)) == [t]
    absent = Triple(EVR["s"], RDF_TYPE, EV_ONT.PowerPlant)
    assert list(g.match(absent.subject, absent.predicate, absent.object)) == []


def test_count_estimate_bounds_match():
    random.seed(7)
    pool_s, pool_p, pool_o = _triple_pool()
    triples = [
        Triple(random.choice(pool_s), random.choice(pool_p), random.choice(pool_o))
        for _ in range(60)
    ]
    g = Graph(triples)
    for s in (None, pool_s[0]):
        for p in (None, pool_p[0]):
            for o in (None, pool_o[0]):
                assert len(list(g.match(s, p, o))) <= g.count_estimate(s, p, o)
