from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from overspt.counting import distinct_partition_counts, partition_counts
from overspt.cyclotomic import CycInt, degree
from overspt.laurent import specialize_at_root
from overspt.qseries import (
    QSeries,
    dissect,
    eta_quotient,
    lambert_sum,
    poch_inf,
    poch_inf_inv,
    poch_product,
    reassemble,
    theta_f,
    theta_phi,
)
from overspt.tables import stat_table


def test_geometric_inverse():
    geo = QSeries.from_coeffs(1, [1] * 6)
    one_minus_q = QSeries.from_coeffs(1, [1, -1, 0, 0, 0, 0])
    assert (one_minus_q * geo).int_coeffs() == [1, 0, 0, 0, 0, 0]
    assert geo * QSeries.one(1, 5) == geo
    assert (geo * geo)[3] == 4


def test_euler_product_pentagonal():
    assert poch_inf(1, 1, 1, 1, 7).int_coeffs() == [1, -1, -1, 0, 0, 1, 0, 1]


def test_distinct_parts_and_partition_numbers():
    assert poch_inf(1, -1, 1, 1, 6)[6] == 4
    assert poch_inf(1, -1, 1, 1, 30).int_coeffs() == list(distinct_partition_counts(30))
    assert poch_inf_inv(1, 1, 1, 1, 30).int_coeffs() == list(partition_counts(30))
    assert poch_inf_inv(1, 1, 1, 1, 5)[5] == 7
    assert poch_inf_inv(1, 1, 2, 2, 4)[4] == 2


def test_zero_scalar_factor_is_one():
    assert poch_inf(1, 0, 1, 1, 6) == QSeries.one(1, 6)


def test_bad_pochhammer_arguments():
    with pytest.raises(ValueError):
        poch_inf(1, 1, 0, 1, 5)
    with pytest.raises(ValueError):
        poch_inf(1, 1, 1, 0, 5)


@given(st.sampled_from([1, 3, 4, 5]), st.integers(-2, 2), st.integers(1, 4), st.integers(1, 4))
def test_pochhammer_times_inverse_is_one(t, k, shift, step):
    c = CycInt.zeta(t, k) if t > 1 else -1 if k % 2 else 1
    n = 25
    assert poch_inf(t, c, shift, step, n) * poch_inf_inv(t, c, shift, step, n) == QSeries.one(t, n)


def test_eta_quotient_matches_poch_product():
    assert eta_quotient(1, 40, {1: 2, 2: -1}) == poch_product(1, 40, [(1, 1, 1, 2), (1, 2, 2, -1)])


def test_truncation_is_minimum():
    a = QSeries.one(1, 10)
    b = QSeries.one(1, 4)
    assert (a + b).trunc == 4 and (a * b).trunc == 4


def test_series_inverse_and_powers():
    s = poch_inf(3, CycInt.zeta(3), 1, 1, 20)
    assert s * s.inverse() == QSeries.one(3, 20)
    assert s ** -2 * s**2 == QSeries.one(3, 20)
    with pytest.raises(ValueError):
        QSeries.from_coeffs(1, [2, 1]).inverse()


def test_shift_and_dilate():
    s = QSeries.from_coeffs(1, [1, 2, 3])
    assert s.shift(2).int_coeffs() == [0, 0, 1, 2, 3]
    assert s.dilate(2).int_coeffs()[:5] == [1, 0, 2, 0, 3]


def test_theta_functions():
    assert theta_phi(1, 1, 9).int_coeffs() == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    over = poch_product(1, 50, [(-1, 1, 1, 1), (1, 1, 1, -1)])
    assert theta_phi(1, -1, 50) * over == QSeries.one(1, 50)
    assert theta_f(1, 1, 1, 50) == theta_phi(1, 1, 50)
    assert theta_f(1, 1, 1, 50, form="product") == theta_phi(1, 1, 50)
    assert theta_f(1, 3, 15, 80, form="product") == theta_f(1, 3, 15, 80)
    assert theta_f(1, 0, 4, 20, form="product") == theta_f(1, 0, 4, 20)


def test_lambert_sum_trivial_root_vanishes():
    s = lambert_sum(1, 1, lambda n: n, lambda n: n, lambda n: 1, 10)
    assert s == QSeries.zero(1, 10)


def test_lambert_sum_against_geometric_expansion():
    # (1 - z)(1 - 1/z) = 3 and 1/((1 - zx)(1 - x/z)) = (1 - x)/(1 - x^3) at z = zeta_3
    n = 30
    want = [0] * (n + 1)
    for k in range(1, n + 1):
        for e0, sgn in ((k, 1), (2 * k, -1)):
            for e in range(e0, n + 1, 3 * k):
                want[e] += 3 * sgn * (-1) ** k
    got = lambert_sum(3, CycInt.zeta(3), lambda k: k, lambda k: k, lambda k: (-1) ** k, n)
    assert [got[i] for i in range(n + 1)] == want
    assert want[:7] == [0, -3, 6, -3, -3, 0, 6]


def test_lambert_rank_form_matches_counted_table():
    n = 40
    z = CycInt.zeta(3)
    lam = lambert_sum(3, z, lambda k: k * k + k, lambda k: k, lambda k: (-1) ** k, n)
    pre = poch_product(3, n, [(-1, 1, 1, 1), (1, 1, 1, -1)])
    lhs = pre * (QSeries.one(3, n) + lam.scale(2))
    assert lhs == specialize_at_root(stat_table("Nbar", n), 3)


def test_lambert_sum_rejects_non_increasing_exponents():
    with pytest.raises(ValueError):
        lambert_sum(3, CycInt.zeta(3), lambda k: 5, lambda k: k, lambda k: 1, 10)


def test_dissect_examples():
    s = QSeries.from_coeffs(1, [1, 1, 1, 1])
    a, b = dissect(s, 2)
    assert a.int_coeffs() == [1, 1] and b.int_coeffs() == [1, 1]
    phi = theta_phi(1, 1, 90)
    c0 = dissect(phi, 3)[0]
    want = [phi[3 * k] for k in range(c0.trunc + 1)]
    assert c0.coeffs == want
    with pytest.raises(ValueError):
        dissect(QSeries.one(1, 1), 3)


@st.composite
def series(draw):
    t = draw(st.sampled_from([1, 3, 4, 5]))
    n = draw(st.integers(12, 40))
    d = degree(t)
    coeffs = draw(st.lists(st.lists(st.integers(-9, 9), min_size=d, max_size=d), min_size=n + 1, max_size=n + 1))
    return QSeries.from_coeffs(t, [CycInt(t, tuple(c)) for c in coeffs])


@given(series(), st.integers(1, 13))
def test_dissect_reassemble_roundtrip(s, t):
    if s.trunc < t - 1:
        return
    back = reassemble(dissect(s, t), t)
    assert back.trunc == s.trunc
    assert back == s


@given(series(), series())
def test_series_ring_laws(a, b):
    if a.ring != b.ring:
        return
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a.truncate(min(a.trunc, b.trunc))
