import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ddc.anticodes import AnticodeSpec, Family, anticode_size, build_anticode, hex_sphere_size
from ddc.bounds import (BoundReport, covering_largest_m, erdos_turan_upper, generic_shape_upper,
                        honeycomb_ruled_out, honeycomb_witness, is_honeycomb_array,
                        max_anticode_size, table1_constants, trivial_upper, vector_count)
from ddc.configuration import Configuration, DDCClass, Shape
from ddc.grid import GridKind, Metric, distance

SQ, HX = GridKind.SQUARE, GridKind.HEXAGONAL


def test_trivial_examples():
    assert vector_count(4, DDCClass.DDBAR) == 40 and trivial_upper(4, DDCClass.DDBAR) == 6
    assert trivial_upper(1, DDCClass.DDBAR) == 2
    assert vector_count(1, DDCClass.DDBARSTAR) == 6 and trivial_upper(1, DDCClass.DDBARSTAR) == 3


@pytest.mark.parametrize("cls", list(DDCClass))
def test_vector_count_by_enumeration(cls):
    for r in range(1, 15):
        lim = cls.limit(r)
        n = sum(1 for i in range(-2 * r, 2 * r + 1) for j in range(-2 * r, 2 * r + 1)
                if (i, j) != (0, 0) and distance((0, 0), (i, j), cls.metric, cls.kind) <= lim)
        assert vector_count(r, cls) == n
        m = trivial_upper(r, cls)
        assert m * (m - 1) <= n < (m + 1) * m


def test_max_anticode_examples():
    assert max_anticode_size(4, DDCClass.DDBAR) == 13
    assert max_anticode_size(5, DDCClass.DDBAR) == 18
    assert max_anticode_size(4, DDCClass.DDBARSTAR) == 19


def test_manhattan_closed_form_is_family_max():
    for d in range(0, 10001):
        R = d // 2
        if d % 2:
            fam = 2 * R * R + 4 * R + 2
        else:
            fam = max(2 * R * R + 2 * R + 1, 2 * R * R + 2 * R if R else 0)
        assert max_anticode_size(d, DDCClass.DDBAR) == fam


def test_hex_max_anticode_is_largest_a_i():
    for d in range(0, 40):
        best = max(anticode_size(AnticodeSpec(Family.HEX_ANTICODE, d, index=i)) for i in range(d + 1))
        assert max_anticode_size(d, DDCClass.DDBARSTAR) == best == hex_sphere_size(d)


def test_euclidean_anticode_bound_dominates_exact_discs():
    # a disc of diameter d is an anticode; its point count must not exceed the bound
    for d in range(0, 40):
        for kind, cls in ((SQ, DDCClass.DD), (HX, DDCClass.DDSTAR)):
            q = (lambda i, j: i * i + j * j) if kind is SQ else (lambda i, j: i * i - i * j + j * j)
            pts = sum(1 for i in range(-d, d + 1) for j in range(-d, d + 1) if 4 * q(i, j) <= d * d)
            assert pts <= max_anticode_size(d, cls)


@given(st.integers(1, 10**6), st.integers(1, 10**4))
def test_covering_largest_m(w, a):
    m = covering_largest_m(w, a)
    assert a * m * m - w * m - w * a <= 0
    assert a * (m + 1) ** 2 - w * (m + 1) - w * a > 0
    # the closed form with the square root agrees away from ties
    x = w / a
    assert abs(m - math.floor((x + math.sqrt(x * x + 4 * w)) / 2)) <= 1


@pytest.mark.parametrize("cls", list(DDCClass))
def test_bound_report_consistency(cls):
    for r in (2, 5, 17, 60):
        rep = erdos_turan_upper(r, cls)
        assert isinstance(rep, BoundReport)
        assert rep.et_m_max == covering_largest_m(rep.w, rep.a)
        assert rep.m_max == min(rep.et_m_max, rep.trivial_m_max)
        for ell in range(1, r + 1):
            from ddc.bounds import sphere_size
            assert covering_largest_m(max_anticode_size(r + 2 * ell, cls), sphere_size(ell, cls)) >= rep.et_m_max


def test_ratios_decrease_with_r():
    for cls in DDCClass:
        ratios = [erdos_turan_upper(r, cls).ratio for r in (100, 1000, 10000)]
        assert ratios[0] + 1e-3 >= ratios[1] and ratios[1] + 1e-3 >= ratios[2]
        assert ratios[-1] >= table1_constants()[cls][1]


def test_generic_shape_examples():
    assert generic_shape_upper(Shape(SQ, [(0, 0)]), Metric.MANHATTAN) == 1
    ten = Shape(SQ, [(i, j) for i in range(10) for j in range(10)])
    assert 10 <= generic_shape_upper(ten, Metric.MANHATTAN) <= 32
    for r in (4, 6, 10):
        lee = build_anticode(AnticodeSpec(Family.LEE, r // 2))
        g = generic_shape_upper(lee, Metric.MANHATTAN)
        assert g <= erdos_turan_upper(r, DDCClass.DDBAR).m_max


def test_generic_shape_sound_on_small_shapes():
    from oracles import brute_max_ddc
    for cells in ([(i, j) for i in range(3) for j in range(3)],
                  [(i, 0) for i in range(7)],
                  [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2), (3, 1)]):
        s = Shape(SQ, cells)
        assert brute_max_ddc(cells) <= generic_shape_upper(s, Metric.MANHATTAN)
        assert brute_max_ddc(cells) <= generic_shape_upper(s, Metric.EUCLIDEAN)


def test_honeycomb_array_predicate():
    assert is_honeycomb_array(Configuration(HX, [(0, 0)]))
    assert not is_honeycomb_array(Configuration(HX, [(0, 0), (1, 2)]))
    assert not is_honeycomb_array(Configuration(HX, [(0, 0), (1, 1), (2, 2)]))
    assert is_honeycomb_array(Configuration(HX, [(0, 0), (1, 2), (2, 1)]))
    assert not is_honeycomb_array(Configuration(SQ, [(0, 0)]))


def test_honeycomb_1289():
    out, ell = honeycomb_ruled_out(1289)
    assert out and ell == 64
    w = honeycomb_witness(1289, 65)
    assert (w["a"], w["d"], w["W"]) == (12871, 1418, 1510171)
    assert Fraction(w["W"]) * (1 + Fraction(1289, 12871)) < 1289 ** 2
    assert round(w["bound"]) == 1661411 and w["m_squared"] == 1661521 and w["ruled_out"]
    assert not honeycomb_ruled_out(1288)[0]
    assert honeycomb_ruled_out(3) == (False, None)


def test_honeycomb_exact_against_fractions():
    for m in (40, 500, 1288, 1289, 1500, 5000):
        out, ell = honeycomb_ruled_out(m)
        wit = None
        for l in range(1, m):
            a = 3 * l * l + 3 * l + 1
            if Fraction(m * m) > hex_sphere_size(m - 1 + 2 * l) * (1 + Fraction(m, a)):
                wit = l
                break
        assert (out, ell) == (wit is not None, wit)


def test_asymptotic_coefficients():
    t = table1_constants()
    assert t[DDCClass.DD][1] == pytest.approx(0.88623, abs=1e-5)
    assert t[DDCClass.DDBARSTAR][1] == pytest.approx(0.86603, abs=1e-5)
    assert t[DDCClass.DDSTAR][1] == pytest.approx(0.95231, abs=1e-5)
    assert t[DDCClass.DDBAR] == (pytest.approx(1 / math.sqrt(2)), pytest.approx(1 / math.sqrt(2)))
    for lo, hi in t.values():
        assert lo <= hi
