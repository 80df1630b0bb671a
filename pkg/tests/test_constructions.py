from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from ddc.algebra import SidonSet, bose_b2, optimal_ruler, primitive_root
from ddc.configuration import (Shape, density, is_periodic_shape_ddc, restrict,
                               verify_ddc, window)
from ddc.constructions import (ExtendedLeeSphereSpec, crt_construction, doubly_periodic_folding,
                               doubly_periodic_leedd, extended_lee_shape, extended_leedd_array,
                               folded_ruler, lee_sphere_cells, leedd, leedd_index, periodic_golomb,
                               periodic_welch)
from ddc.grid import GridKind

SQ = GridKind.SQUARE


def test_welch_examples():
    w = periodic_welch(5, 2)
    assert set(w.fundamental) == {(0, 1), (1, 2), (2, 4), (3, 3)}
    assert set(periodic_welch(3, 2).fundamental) == {(0, 1), (1, 2)}
    assert density(periodic_welch(7)) == Fraction(1, 7)
    with pytest.raises(ValueError, match="6 is not prime"):
        periodic_welch(6)
    with pytest.raises(ValueError):
        periodic_welch(7, 2)            # 2 has order 3 mod 7


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_welch_windows(p):
    a = periodic_welch(p)
    for oi in range(p - 1):
        for oj in range(p):
            c = window(a, (oi, oj), p - 1, p)
            assert c.m == p - 1 and verify_ddc(c)
    costas = window(a, (1, 1), p - 1, p - 1)
    assert len({i for i, _ in costas.dots}) == len({j for _, j in costas.dots}) == costas.m == p - 1


def test_golomb_examples():
    g = periodic_golomb(5, 2, 3)
    assert set(g.fundamental) == {(1, 2), (2, 3), (3, 1)}
    assert density(g) == Fraction(3, 16)
    assert periodic_golomb(4).count == 2


def _golomb_prime_oracle(p, a, b):
    return {(i, j) for i in range(p - 1) for j in range(p - 1)
            if (pow(a, i, p) + pow(b, j, p)) % p == 1}


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_golomb_prime_field_oracle(p):
    a = primitive_root(p)
    b = next(g for g in range(a + 1, p) if len({pow(g, e, p) for e in range(p - 1)}) == p - 1)
    assert set(periodic_golomb(p, a, b).fundamental) == _golomb_prime_oracle(p, a, b)


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_golomb_windows(q):
    a = periodic_golomb(q)
    for oi in range(q - 1):
        for oj in range(q - 1):
            c = window(a, (oi, oj), q - 1, q - 1)
            assert c.m == q - 2 and verify_ddc(c)


def test_folded_examples():
    assert set(folded_ruler([0, 1, 4, 6], 2, 3).dots) == {(0, 0), (0, 1), (2, 0)}
    assert folded_ruler([0, 1], 1, 2).dots == ((0, 0), (1, 0))
    with pytest.raises(ValueError):
        folded_ruler([0, 1, 4, 6], 3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.data())
def test_folded_is_ddc(order, data):
    S = optimal_ruler(order)
    ell = data.draw(st.integers(1, S.length + 1))
    k = data.draw(st.integers(1, (S.length + 1) // ell))
    c = folded_ruler(S, ell, k)
    assert verify_ddc(c) and c.m == len(S) - sum(1 for x in S if x >= ell * k)


def test_dpf_examples():
    a = doubly_periodic_folding([1, 6, 7], 2, 4, 8)
    assert a.period == (4, 8) and density(a) == Fraction(3, 8)
    rect = Shape(SQ, [(i, j) for i in range(4) for j in range(2)])
    assert is_periodic_shape_ddc(a, rect)
    single = doubly_periodic_folding([3], 2, 4, 8)
    assert density(single) == Fraction(1, 8) and is_periodic_shape_ddc(single, rect)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_dpf_windows_bose(q):
    D = bose_b2(q)
    n = D.modulus
    for ell in range(1, n + 1):
        k = n // ell
        a = doubly_periodic_folding(D, ell, k)
        assert a.period == (n // gcd(n, ell), n)
        assert is_periodic_shape_ddc(a, Shape(SQ, [(i, j) for i in range(k) for j in range(ell)]))


def test_crt_examples():
    a = crt_construction([0, 1, 3, 7], 3, 5, 15)
    assert a.period == (5, 3)
    assert set(window(a, (0, 0), 5, 3).dots) == {(0, 0), (1, 0), (2, 2), (4, 2)}
    for oi in range(5):
        for oj in range(3):
            assert window(a, (oi, oj), 5, 3).m == 4
    empty = crt_construction([], 3, 5, 15)
    assert empty.count == 0
    with pytest.raises(ValueError):
        crt_construction([0, 1], 2, 4, 8)


@pytest.mark.parametrize("ell,k", [(3, 5), (5, 3), (4, 5), (7, 8), (5, 16)])
def test_crt_windows_exact_count(ell, k):
    n = ell * k
    D = SidonSet([d for d in range(n) if d % 3 == 0][:4], n)
    a = crt_construction(D, ell, k)
    for oi in range(k):
        for oj in range(ell):
            assert window(a, (oi, oj), k, ell).m == len(D)


def test_leedd_examples():
    want = {(0, -1): 0, (-1, 0): 1, (0, 0): 2, (1, 0): 3, (0, 1): 4}
    assert {p: leedd_index(*p, 1) for p in lee_sphere_cells(1)} == want
    c = leedd(2, [0, 1, 3])
    assert set(c.dots) == {(0, -1), (-1, 0), (1, 0)} and verify_ddc(c)
    assert leedd(2, []).m == 0


def test_leedd_index_bijection():
    for R in range(0, 60):
        vals = sorted(leedd_index(i, j, R) for i, j in lee_sphere_cells(R))
        assert vals == list(range(2 * R * R + 2 * R + 1))


def test_dpleedd_examples():
    a = doubly_periodic_leedd(1, [1, 6, 7], 8)
    assert a.period == (8, 8) and density(a) == Fraction(3, 8)
    assert is_periodic_shape_ddc(a, Shape(SQ, lee_sphere_cells(1)))
    assert is_periodic_shape_ddc(doubly_periodic_leedd(1, [], 8), Shape(SQ, lee_sphere_cells(1)))
    b = doubly_periodic_leedd(2, bose_b2(4))
    assert b.period == (15, 15) and is_periodic_shape_ddc(b, Shape(SQ, lee_sphere_cells(2)))
    with pytest.raises(ValueError):
        doubly_periodic_leedd(2, [0, 1], 12)


def test_dpleedd_restriction_is_leedd():
    D = bose_b2(7)
    a = doubly_periodic_leedd(3, D)
    S = Shape(SQ, lee_sphere_cells(3))
    c = restrict(a, S, (0, 0))
    assert verify_ddc(c)


def test_extended_shape_examples():
    assert len(extended_lee_shape(ExtendedLeeSphereSpec(3, 5))) == 53
    for R in range(0, 6):
        assert set(extended_lee_shape(ExtendedLeeSphereSpec(R, 1)).cells) == set(lee_sphere_cells(R))
    assert set(extended_lee_shape(ExtendedLeeSphereSpec(0, 3)).cells) == {(0, 0), (1, 1), (2, 2)}


def test_extended_shape_is_union_of_spheres():
    for R in range(0, 6):
        for t in range(1, 7):
            want = {(s + i, s + j) for s in range(t) for i, j in lee_sphere_cells(R)}
            shape = extended_lee_shape(ExtendedLeeSphereSpec(R, t, (2, -1)))
            assert set(shape.cells) == {(i + 2, j - 1) for i, j in want}
            assert len(shape) == ExtendedLeeSphereSpec(R, t).size


def test_extended_leedd_examples():
    a = extended_leedd_array(2, 1, bose_b2(5))
    assert density(a) == Fraction(5, 24)
    assert is_periodic_shape_ddc(a, extended_lee_shape(ExtendedLeeSphereSpec(2, 2)))
    with pytest.raises(ValueError):
        extended_leedd_array(3, 2, bose_b2(5))          # needs n >= 78
    # t = 1 is the plain doubly periodic LeeDD
    b = extended_leedd_array(2, Fraction(1, 2), bose_b2(4))
    assert b == doubly_periodic_leedd(2, bose_b2(4))
