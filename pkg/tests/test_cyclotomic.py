from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from overspt.cyclotomic import CycInt, cyc_reduce, cyclotomic_poly, degree, zeta_sum

ORDERS = [1, 2, 3, 4, 5, 6, 8, 10, 12]


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert [degree(t) for t in (1, 2, 3, 4, 5, 6, 12)] == [1, 1, 2, 2, 4, 2, 4]


def test_reduction_examples():
    assert CycInt.zeta(3, 2) == cyc_reduce(3, [-1, -1])
    assert CycInt.zeta(4, 2) == -1
    assert cyc_reduce(5, [1, 1, 1, 1, 1]).is_zero()
    assert zeta_sum(5, {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}) == 0


def test_trivial_ring_is_the_integers():
    a = CycInt.from_int(1, 7)
    assert a * 3 == 21 and int(a - 10) == -3
    assert CycInt.zeta(1, 5) == 1


def test_conjugation_and_norm_like_products():
    z = CycInt.zeta(5)
    assert z.conj() == CycInt.zeta(5, 4)
    assert z * z.conj() == 1
    # (zeta + zeta^-1) satisfies x^2 + x - 1 = 0
    w = z + z.conj()
    assert w * w + w - 1 == 0


def test_json_roundtrip_and_text():
    a = cyc_reduce(5, [2, -1, 0, 3])
    assert CycInt.from_json(a.to_json()) == a
    assert a.to_json() == {"t": 5, "c": [2, -1, 0, 3]}
    assert str(CycInt.zeta(3)) == "ζ"
    assert str(cyc_reduce(3, [1, -2])) == "1 - 2ζ"
    assert str(CycInt.from_int(4, 0)) == "0"


def test_mixed_rings_rejected():
    with pytest.raises(ValueError):
        CycInt.zeta(3) + CycInt.zeta(5)
    with pytest.raises(ValueError):
        CycInt(5, (1, 2))


def test_mult_matrix_acts_on_coordinates():
    a = cyc_reduce(5, [1, 2, 0, -1])
    b = cyc_reduce(5, [0, 1, 3, 1])
    m = a.mult_matrix()
    prod = [sum(m[i][j] * b.coeffs[j] for j in range(4)) for i in range(4)]
    assert tuple(prod) == (a * b).coeffs


def elements(t):
    return st.lists(st.integers(-20, 20), min_size=degree(t), max_size=degree(t)).map(
        lambda c: CycInt(t, tuple(c))
    )


@st.composite
def triples(draw):
    t = draw(st.sampled_from(ORDERS))
    return t, draw(elements(t)), draw(elements(t)), draw(elements(t))


@given(triples())
def test_ring_axioms(data):
    t, a, b, c = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@given(triples(), st.integers(0, 5))
def test_power_matches_repeated_product(data, e):
    _, a, _, _ = data
    prod = CycInt.from_int(a.order, 1)
    for _ in range(e):
        prod = prod * a
    assert a**e == prod


@given(st.sampled_from(ORDERS), st.integers(-30, 30), st.integers(-30, 30))
def test_zeta_powers_multiply(t, j, k):
    assert CycInt.zeta(t, j) * CycInt.zeta(t, k) == CycInt.zeta(t, j + k)
