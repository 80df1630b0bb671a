import math

import pytest
from hypothesis import given, strategies as st

from ddc.grid import (GridKind, Metric, apply, distance, euclid_sq, hex_distance, manhattan,
                      neighbors, symmetries, xi, xi_inverse)
from oracles import bfs_hex, float_hex_sq

SQ, HX = GridKind.SQUARE, GridKind.HEXAGONAL
coord = st.integers(-60, 60)
point = st.tuples(coord, coord)


@pytest.mark.parametrize("p,q,d", [((0, 0), (3, -4), 7), ((2, 2), (2, 2), 0), ((1, 1), (-2, 3), 5)])
def test_manhattan_examples(p, q, d):
    assert manhattan(p, q) == d


@pytest.mark.parametrize("p,q,d", [((0, 0), (2, 2), 2), ((0, 0), (1, -2), 3), ((5, 5), (5, 5), 0)])
def test_hex_distance_examples(p, q, d):
    assert hex_distance(p, q) == d


def test_hex_distance_matches_bfs():
    dist = bfs_hex(30)
    for di in range(-30, 31):
        for dj in range(-30, 31):
            assert hex_distance((0, 0), (di, dj)) == dist[(di, dj)]


def test_euclid_sq_examples():
    assert euclid_sq((0, 0), (3, 4), SQ) == 25
    assert euclid_sq((0, 0), (1, 1), HX) == 1
    assert euclid_sq((0, 0), (1, -1), HX) == 3


def test_hex_euclid_matches_float_model():
    for di in range(-100, 101):
        for dj in range(-100, 101):
            assert abs(euclid_sq((0, 0), (di, dj), HX) - float_hex_sq(di, dj)) < 1e-9 * max(1, di * di + dj * dj)


def test_xi_examples():
    assert xi(1, 0) == pytest.approx((1, 0))
    assert xi(0.5, math.sqrt(3) / 2) == pytest.approx((1, 1))
    assert xi_inverse(1, 1) == pytest.approx((0.5, math.sqrt(3) / 2))


@given(point)
def test_xi_roundtrip(p):
    assert xi(*xi_inverse(*p)) == pytest.approx(p, abs=1e-9)


def test_neighbors():
    assert neighbors((0, 0), SQ) == {(-1, 0), (0, -1), (0, 1), (1, 0)}
    hexes = {(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)}
    assert neighbors((0, 0), HX) == hexes
    assert neighbors((2, 3), HX) == {(2 + a, 3 + b) for a, b in hexes}
    for p in neighbors((0, 0), HX):
        assert hex_distance((0, 0), p) == 1 and euclid_sq((0, 0), p, HX) == 1


def test_distance_rejects_metric_mismatch():
    with pytest.raises(ValueError):
        distance((0, 0), (1, 1), Metric.HEX, SQ)
    with pytest.raises(ValueError):
        distance((0, 0), (1, 1), Metric.MANHATTAN, HX)


METRICS = [(Metric.MANHATTAN, SQ), (Metric.HEX, HX), (Metric.EUCLIDEAN, SQ), (Metric.EUCLIDEAN, HX)]


def _d(p, q, metric, kind):
    d = distance(p, q, metric, kind)
    return math.sqrt(d) if metric is Metric.EUCLIDEAN else d


@pytest.mark.parametrize("metric,kind", METRICS)
@given(p=point, q=point, s=point)
def test_metric_axioms(metric, kind, p, q, s):
    d = distance(p, q, metric, kind)
    assert d == distance(q, p, metric, kind)
    assert (d == 0) == (p == q)
    shifted = distance((p[0] + s[0], p[1] + s[1]), (q[0] + s[0], q[1] + s[1]), metric, kind)
    assert shifted == d
    assert _d(p, s, metric, kind) <= _d(p, q, metric, kind) + _d(q, s, metric, kind) + 1e-9


@pytest.mark.parametrize("kind,count", [(SQ, 8), (HX, 12)])
def test_symmetries_preserve_distance(kind, count):
    gs = symmetries(kind)
    assert len(set(gs)) == count
    metric = Metric.MANHATTAN if kind is SQ else Metric.HEX
    for g in gs:
        for p in [(1, 0), (2, 1), (-3, 5), (4, 4)]:
            assert distance((0, 0), apply(g, p), metric, kind) == distance((0, 0), p, metric, kind)
            assert euclid_sq((0, 0), apply(g, p), kind) == euclid_sq((0, 0), p, kind)
