"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import re

import pytest

from golden_data import MARKED_TABLES, PAIR_TABLES, PSI3_16, VECTOR_TABLES
from overspt.bijections import iter_D, psi
from overspt.counting import VARIANTS, spt_count, spt_count_enum, spt_counts
from overspt.identities import CONGRUENCES, DISSECTIONS, EQUAL_CLASS_CASES, PARITY, run_check
from overspt.partitions import format_partition
from overspt.spt_models import (
    crank_bar,
    enumerate_sp_pairs,
    enumerate_vector_partitions,
    iter_marked_overpartitions,
    k_vec,
    marked_row,
)
from overspt.tables import spt_generating_function


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, failures: list[str]) -> None:
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            line = f"\n[acceptance {number:2d}] {status}  {title}"
            if failures:
                line += "  -- " + "; ".join(failures[:5])
            print(line)
        assert not failures, failures

    return emit


def _checks(ids, order=None) -> list[str]:
    failures = []
    for cid in ids:
        rep = run_check(cid, order)
        if not rep.passed:
            failures.append(f"{cid}: {rep.witness.to_dict()}")
    return failures


# -- golden-table normalisation ---------------------------------------------------------


def _norm_partition(text: str) -> str:
    """Canonical text: parts descending, an overlined part before its plain copies."""
    text = text.strip()
    if text in ("--", ""):
        return "--"
    parts = []
    for tok in text.split("+"):
        over = tok.endswith("'")
        parts.append((int(tok.rstrip("'")), over))
    parts.sort(key=lambda p: (-p[0], not p[1]))
    return "+".join(f"{v}'" if o else str(v) for v, o in parts)


def _norm_vector(text: str, width: int) -> str:
    comps = [_norm_partition(c) for c in text.strip("[]").split(",")]
    comps += ["--"] * (width - len(comps))
    return "[" + ", ".join(comps) + "]"


def _ascii(text: str) -> str:
    """Rewrite combining overlines (one per digit) as a trailing apostrophe."""
    return re.sub(r"((?:\d̅)+)", lambda m: m.group(1).replace("̅", "") + "'", text)


def _canonical(rows) -> str:
    return "\n".join(sorted(" | ".join(str(c) for c in r) for r in rows))


def test_01_golden_tables(report):
    failures = []
    for (n, family), rows in VECTOR_TABLES.items():
        want = _canonical((_norm_vector(v, 4), w, c) for v, w, c in rows)
        got = _canonical((_norm_vector(_ascii(str(v)), 4), w, c)
                         for v, w, c in enumerate_vector_partitions(n, family))
        if want != got:
            failures.append(f"vector {family} n={n}")
    for (n, family), rows in PAIR_TABLES.items():
        want = _canonical((_norm_vector(p, 2), k, c) for p, k, c in rows)
        got = _canonical((_norm_vector(str(p), 2), k_vec(p), crank_bar(p))
                         for p in enumerate_sp_pairs(n, family))
        if want != got:
            failures.append(f"pairs {family} n={n}")
    for (n, parity), rows in MARKED_TABLES.items():
        want = _canonical(
            (_norm_partition(pi), j, _norm_partition(p1), _norm_partition(p2), v, k, kb, sc)
            for pi, j, p1, p2, v, k, kb, sc in rows
        )
        got_rows = []
        for mop in iter_marked_overpartitions(n, parity):
            r = marked_row(mop)
            got_rows.append((_norm_partition(_ascii(r["pi"])), r["j"], _norm_partition(r["pi1"]),
                             _norm_partition(r["pi2"]), r["nu"], r["k"], r["kbar"], r["sptcrank"]))
        if want != _canonical(got_rows):
            failures.append(f"marked n={n} parity={parity}")
    want = _canonical((_norm_partition(a), _norm_partition(b)) for a, b in PSI3_16)
    got = _canonical((format_partition(pi), format_partition(psi(3, pi))) for pi in iter_D(3, 16))
    if want != got:
        failures.append("psi_3 on 16")
    report(1, "golden tables (vector, pair, marked, psi_3)", failures)


def test_02_counting(report):
    expected = [
        ("sptbar", 4, 13), ("sptbar1", 4, 10), ("sptbar2", 4, 3),
        ("sptbar", 3, 6), ("m2spt", 6, 5), ("sptbar1", 5, 20), ("sptbar2", 8, 15),
    ]
    failures = [f"{v}({n})={spt_count(n, v)} != {x}" for v, n, x in expected if spt_count(n, v) != x]
    report(2, "spt counting values", failures)


def test_03_generating_functions(report):
    failures = []
    for variant in VARIANTS:
        counted = list(spt_counts(variant, 60))
        series = spt_generating_function(variant, 60).int_coeffs()
        bad = [n for n in range(1, 61) if counted[n] != series[n]]
        if bad:
            failures.append(f"{variant} first differs at n={bad[0]}")
        listed = [n for n in range(1, 17) if spt_count_enum(n, variant) != counted[n]]
        if listed:
            failures.append(f"{variant} object listing differs at n={listed[0]}")
    report(3, "spt counts equal generating-function coefficients, n <= 60", failures)


def test_04_congruences(report):
    spt_ids = [c for c, v in CONGRUENCES.items() if v[0] == "spt"]
    other = [c for c in CONGRUENCES if c not in spt_ids]
    failures = _checks(spt_ids, 150) + _checks(other, 300) + _checks(sorted(PARITY), 400)
    report(4, "congruences (<= 150 / <= 300) and parity (<= 400)", failures)


def test_05_equal_classes(report):
    prime = [c for c, (t, _, _) in EQUAL_CLASS_CASES.items() if t != 4]
    mod4 = [c for c, (t, _, _) in EQUAL_CLASS_CASES.items() if t == 4]
    failures = _checks(prime, 24) + _checks(mod4, 60)
    report(5, "equal sptcrank classes (i-v to 24, vi-viii to 60)", failures)


def test_06_rank_crank(report):
    report(6, "rank-crank stencil identities, |m| <= n <= 60", _checks(["T2_1", "T2_2", "T2_3", "T2_4"], 60))


def test_07_dissections(report):
    failures = []
    for cid, spec in sorted(DISSECTIONS.items()):
        failures += _checks([cid], 40 * spec.t)
    failures += _checks(["T2_17"], 200)
    report(7, "3- and 5-dissections to component order 40, z = i to 200", failures)


def test_08_bijections(report):
    failures = _checks(["bij_phi"], 25) + _checks(["bij_psi"], 6)
    report(8, "Phi exhaustive to n = 25, Psi_n for n <= 6 and sizes <= 30", failures)


def test_09_watson_forms(report):
    report(9, "Eulerian and Lambert rank forms at zeta_3 and zeta_5 to 80",
           _checks(["watson_rank_forms", "watson_m2_forms"], 80))


def test_10_moments(report):
    report(10, "first-moment identity and inequality, 1 <= n <= 60", _checks(["moments"], 60))


def test_11_nonnegativity(report):
    ids = ["nonneg_Sbar", "nonneg_Sbar1", "nonneg_Sbar2", "nonneg_S2bar"]
    failures = _checks(ids, 60) + _checks(["s2bar_summand"], 10)
    report(11, "nonnegativity to 60 and the single-summand counterexample", failures)
