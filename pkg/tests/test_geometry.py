from __future__ import annotations

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evkg.geometry import (
    BOUNDARY,
    EPS,
    EXTERIOR,
    INTERIOR,
    GeometryValidationError,
    LineString,
    MultiPolygon,
    Point,
    Polygon,
    UnsupportedGeometryPair,
    WktParseError,
    bbox,
    bbox_disjoint,
    locate_point,
    parse_wkt,
    sf_contains,
    sf_crosses,
    sf_intersects,
    sf_within,
    to_wkt,
)

SQUARE = Polygon((Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4), Point(0, 0)))


# --- independent ray-casting oracle (classic float even-odd test) ----------


def oracle_point_in_polygon(x: float, y: float, ring) -> bool:
    inside = False
    j = len(ring) - 2
    for i in range(len(ring) - 1):
        xi, yi = ring[i].x, ring[i].y
        xj, yj = ring[j].x, ring[j].y
        if (yi > y) != (yj > y) and x < (xj - xi) * (y - yi) / (yj - yi) + xi:
            inside = not inside
        j = i
    return inside


def oracle_dist_to_ring(x: float, y: float, ring) -> float:
    best = math.inf
    for a, b in zip(ring, ring[1:]):
        dx, dy = b.x - a.x, b.y - a.y
        seg2 = dx * dx + dy * dy
        t = 0.0 if seg2 == 0 else max(0.0, min(1.0, ((x - a.x) * dx + (y - a.y) * dy) / seg2))
        best = min(best, math.hypot(x - (a.x + t * dx), y - (a.y + t * dy)))
    return best


def random_convex_polygon(rng: random.Random, n: int = 8) -> Polygon:
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
    radius = rng.uniform(1.0, 5.0)
    cx, cy = rng.uniform(-3, 3), rng.uniform(-3, 3)
    pts = [Point(cx + radius * math.cos(a), cy + radius * math.sin(a)) for a in angles]
    return Polygon(tuple(pts + [pts[0]]))


# --- WKT -----------------------------------------------------------------


def test_parse_point():
    assert parse_wkt("POINT (0 0)") == Point(0, 0)


def test_parse_polygon_round_trip():
    text = "POLYGON ((0 0, 4 0, 4 4, 0 4, 0 0))"
    assert to_wkt(parse_wkt(text)) == text


def test_keywords_case_insensitive():
    assert parse_wkt("point(1 2)") == Point(1, 2)
    assert isinstance(parse_wkt("multipolygon(((0 0, 1 0, 1 1, 0 0)))"), MultiPolygon)


def test_short_ring_rejected():
    with pytest.raises(WktParseError):
        parse_wkt("POLYGON ((0 0, 1 1))")


def test_unclosed_ring_rejected():
    with pytest.raises(WktParseError):
        parse_wkt("POLYGON ((0 0, 4 0, 4 4, 0 4))")


def test_self_intersecting_outer_ring_rejected():
    with pytest.raises(GeometryValidationError):
        Polygon((Point(0, 0), Point(4, 4), Point(4, 0), Point(0, 4), Point(0, 0)))


def test_malformed_wkt_reports_position():
    with pytest.raises(WktParseError) as exc:
        parse_wkt("POINT (0, 0)")
    assert exc.value.position > 0


def test_wkt_coordinate_formatting():
    assert to_wkt(Point(-74.123456789123, 40.0)) == "POINT (-74.123456789 40)"


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_wkt_round_trip_points(x, y):
    p = Point(float(x) + 0.5, float(y) + 0.25)
    assert parse_wkt(to_wkt(p)) == p


# --- within / contains ------------------------------------------------------


def test_point_within_square():
    assert sf_within(Point(2, 2), SQUARE) is True


def test_square_within_itself_but_boundary_point_is_not():
    assert sf_within(SQUARE, SQUARE) is True
    assert sf_within(Point(0, 2), SQUARE) is False
    assert sf_intersects(Point(0, 2), SQUARE) is True


def test_within_agrees_with_ray_casting_oracle():
    rng = random.Random(20240229)
    for _ in range(50):
        poly = random_convex_polygon(rng)
        x0, y0, x1, y1 = bbox(poly)
        for _ in range(20):
            x = rng.uniform(x0 - 1, x1 + 1)
            y = rng.uniform(y0 - 1, y1 + 1)
            if oracle_dist_to_ring(x, y, poly.outer) <= 1e-9:
                continue  # too close to an edge for the oracle to be meaningful
            expected = oracle_point_in_polygon(x, y, poly.outer)
            assert sf_within(Point(x, y), poly) == expected
            assert sf_contains(poly, Point(x, y)) == expected


def test_point_in_hole_is_not_within():
    holed = Polygon(
        (Point(0, 0), Point(10, 0), Point(10, 10), Point(0, 10), Point(0, 0)),
        ((Point(4, 4), Point(6, 4), Point(6, 6), Point(4, 6), Point(4, 4)),),
    )
    assert sf_within(Point(5, 5), holed) is False
    assert sf_within(Point(2, 2), holed) is True
    assert locate_point(Point(4, 5), holed) == BOUNDARY


def test_line_within_polygon():
    assert sf_within(LineString((Point(1, 1), Point(2, 2))), SQUARE) is True
    assert sf_within(LineString((Point(1, 1), Point(9, 9))), SQUARE) is False


# --- crosses ---------------------------------------------------------------


def test_segment_through_square_crosses():
    assert sf_crosses(LineString((Point(-1, 2), Point(5, 2))), SQUARE) is True


def test_inner_segment_is_within_not_crosses():
    inner = LineString((Point(1, 1), Point(2, 2)))
    assert sf_crosses(inner, SQUARE) is False
    assert sf_within(inner, SQUARE) is True


def test_line_ending_inside_crosses():
    assert sf_crosses(LineString((Point(-1, 2), Point(2, 2))), SQUARE) is True


def test_disjoint_line_does_not_cross():
    assert sf_crosses(LineString((Point(10, 10), Point(12, 12))), SQUARE) is False


def test_crosses_unsupported_pair_raises():
    with pytest.raises(UnsupportedGeometryPair):
        sf_crosses(SQUARE, SQUARE)
    with pytest.raises(UnsupportedGeometryPair):
        sf_crosses(Point(0, 0), SQUARE)


def test_line_line_crosses():
    a = LineString((Point(0, 0), Point(4, 4)))
    b = LineString((Point(0, 4), Point(4, 0)))
    assert sf_crosses(a, b) is True
    # collinear overlap is not a crossing
    c = LineString((Point(1, 1), Point(3, 3)))
    assert sf_crosses(a, c) is False
    # endpoint touch is not a crossing
    d = LineString((Point(4, 4), Point(6, 0)))
    assert sf_crosses(a, d) is False


def _sampling_crosses_oracle(seg: LineString, poly: Polygon, samples: int = 2048):
    """Classify dense sample points along the segment as inside/outside."""
    (a, b) = seg.points
    saw_in = saw_out = False
    for i in range(samples + 1):
        t = i / samples
        x = a.x + (b.x - a.x) * t
        y = a.y + (b.y - a.y) * t
        if oracle_dist_to_ring(x, y, poly.outer) <= 1e-9:
            continue
        if oracle_point_in_polygon(x, y, poly.outer):
            saw_in = True
        else:
            saw_out = True
    return saw_in and saw_out


def test_crosses_agrees_with_sampling_oracle_on_random_segments():
    rng = random.Random(13)
    poly = SQUARE
    checked = 0
    for _ in range(200):
        seg = LineString(
            (
                Point(rng.uniform(-3, 7), rng.uniform(-3, 7)),
                Point(rng.uniform(-3, 7), rng.uniform(-3, 7)),
            )
        )
        # Skip segments that graze an edge closer than the snap tolerance:
        # the sampling oracle cannot classify those reliably.
        if any(oracle_dist_to_ring(p.x, p.y, poly.outer) <= 1e-6 for p in seg.points):
            continue
        checked += 1
        assert sf_crosses(seg, poly) == _sampling_crosses_oracle(seg, poly), to_wkt(seg)
    assert checked > 150


# --- intersects / bbox ------------------------------------------------------


def test_disjoint_unit_squares_do_not_intersect():
    a = parse_wkt("POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0))")
    b = parse_wkt("POLYGON ((10 10, 11 10, 11 11, 10 11, 10 10))")
    assert sf_intersects(a, b) is False


def test_touching_squares_intersect():
    a = parse_wkt("POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0))")
    b = parse_wkt("POLYGON ((1 0, 2 0, 2 1, 1 1, 1 0))")
    assert sf_intersects(a, b) is True


def test_nested_squares_intersect():
    inner = parse_wkt("POLYGON ((1 1, 2 1, 2 2, 1 2, 1 1))")
    assert sf_intersects(inner, SQUARE) is True
    assert sf_within(inner, SQUARE) is True


def test_intersects_agrees_with_brute_force_on_random_polygons():
    rng = random.Random(99)
    for _ in range(60):
        a = random_convex_polygon(rng, 6)
        b = random_convex_polygon(rng, 6)
        # brute force: any vertex containment or any segment pair intersecting
        def brute(p, q):
            for v in p.outer[:-1]:
                if oracle_point_in_polygon(v.x, v.y, q.outer) or oracle_dist_to_ring(
                    v.x, v.y, q.outer
                ) <= 1e-12:
                    return True
            for v in q.outer[:-1]:
                if oracle_point_in_polygon(v.x, v.y, p.outer) or oracle_dist_to_ring(
                    v.x, v.y, p.outer
                ) <= 1e-12:
                    return True
            for s1 in zip(p.outer, p.outer[1:]):
                for s2 in zip(q.outer, q.outer[1:]):
                    if _segments_meet(s1, s2):
                        return True
            return False

        assert sf_intersects(a, b) == brute(a, b)


def _segments_meet(s1, s2) -> bool:
    (p1, p2), (q1, q2) = s1, s2

    def orient(a, b, c):
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True
    return False


def test_bbox_tight():
    assert bbox(SQUARE) == (0.0, 0.0, 4.0, 4.0)
    assert bbox(LineString((Point(-1, 5), Point(3, -2)))) == (-1.0, -2.0, 3.0, 5.0)


@given(
    st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 5), st.floats(0.1, 5),
    st.floats(-50, 50), st.floats(-50, 50), st.floats(0.1, 5), st.floats(0.1, 5),
)
def test_bbox_disjoint_implies_not_intersects(ax, ay, aw, ah, bx, by, bw, bh):
    a = Polygon((Point(ax, ay), Point(ax + aw, ay), Point(ax + aw, ay + ah), Point(ax, ay + ah), Point(ax, ay)))
    b = Polygon((Point(bx, by), Point(bx + bw, by), Point(bx + bw, by + bh), Point(bx, by + bh), Point(bx, by)))
    if bbox_disjoint(a, b):
        assert sf_intersects(a, b) is False


# --- cross-predicate properties ---------------------------------------------


def test_duality_on_random_pairs():
    rng = random.Random(5)
    for _ in range(300):
        poly = random_convex_polygon(rng)
        x0, y0, x1, y1 = bbox(poly)
        p = Point(rng.uniform(x0 - 1, x1 + 1), rng.uniform(y0 - 1, y1 + 1))
        assert sf_within(p, poly) == sf_contains(poly, p)
        if sf_within(p, poly):
            assert sf_intersects(p, poly)


def test_within_and_crosses_mutually_exclusive():
    rng = random.Random(31)
    for _ in range(150):
        seg = LineString(
            (
                Point(rng.uniform(-2, 6), rng.uniform(-2, 6)),
                Point(rng.uniform(-2, 6), rng.uniform(-2, 6)),
            )
        )
        w = sf_within(seg, SQUARE)
        c = sf_crosses(seg, SQUARE)
        assert not (w and c)
        if c:
            assert sf_intersects(seg, SQUARE)


def test_locate_point_classes():
    assert locate_point(Point(2, 2), SQUARE) == INTERIOR
    assert locate_point(Point(0, 2), SQUARE) == BOUNDARY
    assert locate_point(Point(9, 9), SQUARE) == EXTERIOR
    assert locate_point(Point(0, 2 + EPS / 10), SQUARE) == BOUNDARY
