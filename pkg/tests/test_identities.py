from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from overspt import identities as idl
from overspt.cyclotomic import CycInt
from overspt.identities import (
    CATALOG,
    DISSECTIONS,
    CheckReport,
    Term,
    Witness,
    build_component,
    check_classical,
    check_congruence,
    check_dissection,
    check_equal_classes,
    check_rank_crank,
    dissection_lhs,
    first_moment,
    grid_witness,
    rank_crank_sides,
    run_check,
    series_witness,
    sptcrank_classes,
    table_classes,
)
from overspt.qseries import QSeries, dissect
from overspt.tables import nsb_table


# -- report plumbing ------------------------------------------------------------


def test_report_validation():
    with pytest.raises(ValueError):
        CheckReport("x", 1, "fail")
    with pytest.raises(ValueError):
        CheckReport("x", 1, "maybe")
    rep = CheckReport("x", 3, "fail", Witness(2, None, 1, CycInt.zeta(3)))
    d = rep.to_dict(include_elapsed=False)
    assert d["witness"] == {"n": 2, "m": None, "expected": 1, "got": {"t": 3, "c": [0, 1]}}
    assert "elapsed" not in d


def test_grid_witness_prefers_small_n_then_small_m():
    a = np.zeros((4, 7), dtype=object)
    b = a.copy()
    b[2, 3 + 2] = 5
    b[2, 3 - 1] = 1
    b[3, 3] = 9
    w = grid_witness(a, b, 3)
    assert (w.n, w.m, w.expected, w.got) == (2, -1, 0, 1)
    assert grid_witness(a, a.copy(), 3) is None


def test_series_witness_reindexes():
    a = QSeries.from_coeffs(1, [1, 2, 3])
    b = QSeries.from_coeffs(1, [1, 2, 4])
    w = series_witness(a, b, index=lambda n: 5 * n + 3)
    assert (w.n, w.expected, w.got) == (13, 3, 4)


# -- rank-crank stencils --------------------------------------------------------


@pytest.mark.parametrize("ident", ["T2_1", "T2_2", "T2_3", "T2_4"])
def test_rank_crank_small_orders(ident):
    assert check_rank_crank(ident, 30) is None


def test_rank_crank_first_entry_by_hand():
    lhs, rhs = rank_crank_sides("T2_1", 4)
    tab = nsb_table("NSbar", 4)
    centre = (lhs.shape[1] - 1) // 2
    assert lhs[1, centre] == 2 * tab(0, 1) - 2 * tab(1, 1)
    assert lhs[1, centre] == rhs[1, centre]
    assert sum(lhs[3]) == 0 and sum(rhs[3]) == 0


def test_rank_crank_detects_a_perturbed_table(monkeypatch):
    real = idl.rank_crank_sides

    def broken(ident, max_n):
        lhs, rhs = real(ident, max_n)
        rhs = rhs.copy()
        centre = (rhs.shape[1] - 1) // 2
        rhs[5, centre + 2] += 1
        rhs[7, centre] += 1
        return lhs, rhs

    monkeypatch.setattr(idl, "rank_crank_sides", broken)
    w = idl.check_rank_crank("T2_1", 10)
    assert (w.n, w.m) == (5, 2)
    assert w.expected + 1 == w.got


# -- dissections ----------------------------------------------------------------


def test_rank_and_crank_share_component_zero_mod_3():
    a = build_component("T2_5", 0, 40)
    b = build_component("T2_9", 0, 40)
    assert a == b
    lhs = dissection_lhs("T2_5", 3 * 41 - 1)
    assert dissect(lhs, 3)[0].truncate(40) == a


@pytest.mark.parametrize("ident", sorted(DISSECTIONS))
def test_dissections_low_order(ident):
    assert check_dissection(ident, 60) is None


def test_component_selection():
    assert check_dissection("T2_6", 60, component=3) is None


def _perturbed(ident, r, factor):
    spec = DISSECTIONS[ident]
    comps = dict(spec.components)
    first, *rest = comps[r]
    coeff = first.coeff
    comps[r] = [dataclasses.replace(first, coeff=lambda t: coeff(t) * factor), *rest]
    return dataclasses.replace(spec, components=comps)


def test_mutated_dissection_fails_with_reindexed_witness(monkeypatch):
    monkeypatch.setitem(DISSECTIONS, "T2_5", _perturbed("T2_5", 1, 3))
    w = check_dissection("T2_5", 60)
    # component 1 is 2 + O(q); tripling it first disagrees at q^(3*0 + 1)
    assert (w.n, w.expected, w.got) == (1, 6, 2)


def test_mutated_five_dissection_fails(monkeypatch):
    monkeypatch.setitem(DISSECTIONS, "T2_6", _perturbed("T2_6", 3, -1))
    w = check_dissection("T2_6", 60)
    assert w is not None and w.n % 5 == 3


def test_extra_term_changes_dissection(monkeypatch):
    spec = DISSECTIONS["T2_7"]
    comps = dict(spec.components)
    comps[1] = comps[1] + [Term(lambda t: 1, (), shift=4)]
    monkeypatch.setitem(DISSECTIONS, "T2_7", dataclasses.replace(spec, components=comps))
    w = check_dissection("T2_7", 60)
    assert w.n == 3 * 4 + 1


def test_unknown_dissection():
    with pytest.raises(ValueError):
        check_dissection("T2_99", 30)


# -- congruences and classes ------------------------------------------------------


def test_congruence_detects_wrong_progression(monkeypatch):
    monkeypatch.setitem(idl.CONGRUENCES, "spt5", ("spt", 5, 3, None))
    w = check_congruence("spt5", 40)
    # spt(3) = 5 is divisible, spt(8) = 57 is not
    assert (w.n, w.got) == (8, 57)


def test_equal_class_weakening_is_detected(monkeypatch):
    # divisibility holds on this progression but the wrong table has unequal classes
    monkeypatch.setitem(idl.CONGRUENCES, "sb2_5p3", ("sptbar2", 5, 3, "NSbar"))
    w = check_congruence("sb2_5p3", 30)
    assert w.n == 3 and w.got == CycInt.from_int(5, 1)


def test_class_examples():
    assert sptcrank_classes(3, 3) == [2, 2, 2]
    assert sptcrank_classes(8, 5, "even") == [3] * 5
    assert sorted(sptcrank_classes(5, 4, "odd")) == [4, 4, 6, 6]
    assert table_classes(5, 4, "odd") == sptcrank_classes(5, 4, "odd")


def test_equal_class_methods_agree():
    for case in ("mainthm_i", "mainthm_ii", "mainthm_vi"):
        assert check_equal_classes(case, 14, "enumerate") is None
        assert check_equal_classes(case, 14, "table") is None


def test_first_moment_example():
    assert first_moment("Mbar", 3) - first_moment("Nbar", 3) == 2


# -- classical identities and the catalog -------------------------------------------


@pytest.mark.parametrize("identity", idl.CLASSICAL)
def test_classical_low_order(identity):
    assert check_classical(identity, 40) is None


def test_catalog_ids_and_run():
    required = {"spt5", "spt7", "spt13", "sb3", "sb1_3", "sb1_5", "sb2_3", "sb2_3p1", "sb2_5p3",
                "m2_3p1", "m2_5p1", "m2_5p3", "T2_17", "watson_rank_forms", "watson_m2_forms",
                "phi_entries", "lambert_prop_3"}
    required |= {f"T2_{i}" for i in range(1, 17)}
    required |= {f"mainthm_{r}" for r in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")}
    assert required <= set(CATALOG)
    rep = run_check("spt5", 50)
    assert rep.passed and rep.order_checked == 50
    with pytest.raises(KeyError):
        run_check("nope")
    with pytest.raises(ValueError):
        run_check("spt5", 0)
