"""Exact two-variable statistic tables and the generating series behind them.

Rank families (Nbar, N2, N) are counted combinatorially by default and can
also be expanded from their Eulerian sums.  Crank families (Mbar, M2, M)
are defined by their product generating functions; the combinatorial
residual crank is available separately for cross-checks.  The weighted
spt-crank families (NSbar, NSbar1, NSbar2, NS2bar) come from their
two-variable series, with vector-partition enumeration as a cross-check
in ``spt_models``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .laurent import ZLaurentSeries, lambert_laurent
from .partitions import (
    has_distinct_odd_parts,
    iter_overpartitions,
    iter_partitions,
    m2_rank,
    rank,
    residual_crank,
    residual_crank_m2,
    crank,
)
from .qseries import QSeries, poch_inf, poch_product

STAT_FAMILIES = ("Nbar", "Mbar", "N2", "M2", "N", "M")
NSB_FAMILIES = ("NSbar", "NSbar1", "NSbar2", "NS2bar")
SYMMETRIC = set(STAT_FAMILIES) | set(NSB_FAMILIES)

_ALIASES = {
    "N̄": "Nbar",
    "M̄": "Mbar",
    "N_S̄": "NSbar",
    "N_S̄₁": "NSbar1",
    "N_S̄₂": "NSbar2",
    "N_S2̄": "NS2bar",
    "S̄": "NSbar",
    "S̄₁": "NSbar1",
    "S̄₂": "NSbar2",
    "S2̄": "NS2bar",
    "Sbar": "NSbar",
    "Sbar1": "NSbar1",
    "Sbar2": "NSbar2",
    "S2bar": "NS2bar",
}


def canonical_family(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in STAT_FAMILIES and name not in NSB_FAMILIES:
        raise ValueError(
            f"unknown family {name!r}; choose from {STAT_FAMILIES + NSB_FAMILIES}"
        )
    return name


@dataclass(frozen=True)
class TwoVarTable:
    """Exact integers c(m, n) for 0 <= n <= max_n and |m| <= n."""

    family: str
    series: ZLaurentSeries

    @property
    def max_n(self) -> int:
        return self.series.trunc

    def __call__(self, m: int, n: int) -> int:
        return self.series.coeff(m, n)

    def coeff(self, m: int, n: int) -> int:
        return self.series.coeff(m, n)

    def row(self, n: int) -> dict[int, int]:
        return self.series.row(n)

    def row_sum(self, n: int) -> int:
        return sum(self.series.row(n).values())

    def class_sum(self, k: int, t: int, n: int) -> int:
        return class_sum(self, k, t, n)

    def entries(self) -> list[tuple[int, int, int]]:
        """Nonzero (m, n, value) triples ordered by n, then m."""
        return [(m, n, v) for n in range(self.max_n + 1) for m, v in sorted(self.row(n).items())]

    def is_symmetric(self) -> bool:
        g = self.series.grid
        return bool(np.all(g == g[:, ::-1]))

    def truncate(self, n: int) -> TwoVarTable:
        return TwoVarTable(self.family, self.series.truncate(n))


def class_sum(tab: TwoVarTable, k: int, t: int, n: int) -> int:
    """sum of c(m, n) over m congruent to k mod t."""
    if t < 1 or not 0 <= k < t:
        raise ValueError("need t >= 1 and 0 <= k < t")
    return sum(v for m, v in tab.row(n).items() if m % t == k)


# -- rank families by counting ---------------------------------------------


def _rank_count_grid(family: str, max_n: int) -> np.ndarray:
    n = max_n
    grid = np.zeros((n + 1, 2 * n + 1), dtype=object)
    grid[0, n] = 1  # empty object, rank 0
    # h[size, parts] counts objects using only part sizes < L
    h = np.zeros((n + 1, n + 1), dtype=object)
    h[0, 0] = 1
    for L in range(1, n + 1):
        if family == "Nbar":
            weight, max_mult = 2, n // L
        elif family == "N2":
            weight, max_mult = 1, (1 if L % 2 else n // L)
        else:
            weight, max_mult = 1, n // L
        e = np.zeros_like(h)  # objects whose largest part is exactly L
        for mu in range(1, max_mult + 1):
            e[mu * L :, mu:] = e[mu * L :, mu:] + weight * h[: n + 1 - mu * L, : n + 1 - mu]
        top = L if family != "N2" else -(-L // 2)
        for k in range(1, n + 1):
            col = e[:, k]
            if col.any():
                grid[:, n + top - k] = grid[:, n + top - k] + col
        h = h + e
    return grid


def _rank_enum_grid(family: str, max_n: int) -> np.ndarray:
    n = max_n
    grid = np.zeros((n + 1, 2 * n + 1), dtype=object)
    for size in range(n + 1):
        if family == "Nbar":
            for op in iter_overpartitions(size):
                grid[size, n + rank(op.parts)] += 1
        elif family == "N2":
            for p in iter_partitions(size, distinct_odd_parts=True):
                grid[size, n + m2_rank(p)] += 1
        else:
            for p in iter_partitions(size):
                grid[size, n + rank(p)] += 1
    return grid


def _rank_eulerian(family: str, max_n: int) -> ZLaurentSeries:
    """Expand the Eulerian sum defining the rank family term by term."""
    total = ZLaurentSeries.one(max_n)
    term = ZLaurentSeries.one(max_n)
    j = 1
    while True:
        if family == "Nbar":
            # ratio: (1 + q^(j-1)) q^j / ((1 - z q^j)(1 - q^j / z))
            lead = j * (j + 1) // 2
            if lead > max_n:
                break
            term = term.scale(2) if j == 1 else term.mul_factor(-1, 0, j - 1)
            term = term.monomial_shift(0, j)
            pole = j
        elif family == "N2":
            lead = j * j
            if lead > max_n:
                break
            term = term.mul_factor(-1, 0, 2 * j - 1).monomial_shift(0, 2 * j - 1)
            pole = 2 * j
        else:
            lead = j * j
            if lead > max_n:
                break
            term = term.monomial_shift(0, 2 * j - 1)
            pole = j
        term = term.div_factor(1, 1, pole).div_factor(1, -1, pole)
        total = total + term
        j += 1
    return total


# -- crank families ----------------------------------------------------------


def _crank_series(family: str, max_n: int) -> ZLaurentSeries:
    if family == "Mbar":
        num = poch_product(1, max_n, [(-1, 1, 1, 1), (1, 1, 1, 1)])
        step = 1
    elif family == "M2":
        num = poch_product(1, max_n, [(-1, 1, 2, 1), (1, 2, 2, 1)])
        step = 2
    else:
        num = poch_inf(1, 1, 1, 1, max_n)
        step = 1
    out = ZLaurentSeries.from_qseries(num)
    for k in range(step, max_n + 1, step):
        out = out.div_factor(1, 1, k).div_factor(1, -1, k)
    return out


def _crank_enum_grid(family: str, max_n: int) -> np.ndarray:
    n = max_n
    grid = np.zeros((n + 1, 2 * n + 1), dtype=object)
    for size in range(n + 1):
        if family == "Mbar":
            for op in iter_overpartitions(size):
                grid[size, n + residual_crank(op)] += 1
        elif family == "M2":
            for p in iter_partitions(size, distinct_odd_parts=True):
                grid[size, n + residual_crank_m2(p)] += 1
        else:
            for p in iter_partitions(size):
                grid[size, n + crank(p)] += 1
    return grid


@lru_cache(maxsize=None)
def stat_table(family: str, max_n: int, method: str = "default") -> TwoVarTable:
    """Rank/crank table for Nbar, Mbar, N2, M2, N or M.

    method: 'default' (counting for ranks, product series for cranks),
    'count' (rank families), 'series' (Eulerian sums or products) or
    'enumerate' (object listing; for cranks this is the combinatorial
    residual crank, which differs from the series on a known set).
    """
    family = canonical_family(family)
    if family not in STAT_FAMILIES:
        raise ValueError(f"{family} is not a rank/crank family")
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    is_rank = family in ("Nbar", "N2", "N")
    if method == "default":
        method = "count" if is_rank else "series"
    if is_rank:
        if method == "count":
            series = ZLaurentSeries(max_n, _rank_count_grid(family, max_n))
        elif method == "enumerate":
            series = ZLaurentSeries(max_n, _rank_enum_grid(family, max_n))
        elif method == "series":
            series = _rank_eulerian(family, max_n)
        else:
            raise ValueError(f"unknown method {method!r}")
    else:
        if method == "series":
            series = _crank_series(family, max_n)
        elif method == "enumerate":
            series = ZLaurentSeries(max_n, _crank_enum_grid(family, max_n))
        else:
            raise ValueError(f"unknown method {method!r} for a crank family")
    return TwoVarTable(family, series)


def crank_exception_correction(family: str, max_n: int) -> ZLaurentSeries:
    """Series table minus combinatorial residual-crank table.

    The product generating functions assign z + 1/z - 1 (instead of z^-1) to
    the lone part 1 of the crank.  For Mbar the affected objects have
    non-overlined part exactly (1); for M2 the even part is exactly (2);
    for M it is the partition (1) itself.  Each contributes z - 1.
    """
    from .counting import distinct_partition_counts

    family = canonical_family(family)
    terms: dict[tuple[int, int], int] = {}
    for n in range(1, max_n + 1):
        if family == "Mbar":
            count = distinct_partition_counts(max_n)[n - 1]
        elif family == "M2":
            count = distinct_partition_counts(max_n, odd_only=True)[n - 2] if n >= 2 else 0
        elif family == "M":
            count = 1 if n == 1 else 0
        else:
            raise ValueError(f"{family} has no crank exceptions")
        if count:
            terms[(1, n)] = count
            terms[(0, n)] = -count
    return ZLaurentSeries.from_terms(max_n, terms)


# -- weighted spt-crank families ---------------------------------------------


@lru_cache(maxsize=None)
def nsb_table(family: str, max_n: int) -> TwoVarTable:
    """N_S(m, n) for S in {NSbar, NSbar1, NSbar2, NS2bar} from the two-variable series."""
    family = canonical_family(family)
    if family not in NSB_FAMILIES:
        raise ValueError(f"{family} is not a weighted spt-crank family")
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    total = ZLaurentSeries.zero(max_n)
    tail = ZLaurentSeries.one(max_n)
    if family == "NS2bar":
        # tail_j = (q^(2j+2); q^2)(-q^(2j+1); q^2) / ((z q^(2j); q^2)(q^(2j)/z; q^2))
        for j in range(max_n // 2, 0, -1):
            tail = tail.mul_factor(1, 0, 2 * j + 2) if 2 * j + 2 <= max_n else tail
            tail = tail.mul_factor(-1, 0, 2 * j + 1) if 2 * j + 1 <= max_n else tail
            tail = tail.div_factor(1, 1, 2 * j).div_factor(1, -1, 2 * j)
            total = total + tail.monomial_shift(0, 2 * j)
        return TwoVarTable(family, total)
    # tail_j = (-q^(j+1); q)(q^(j+1); q) / ((z q^j; q)(q^j/z; q))
    for j in range(max_n, 0, -1):
        if j + 1 <= max_n:
            tail = tail.mul_factor(-1, 0, j + 1).mul_factor(1, 0, j + 1)
        tail = tail.div_factor(1, 1, j).div_factor(1, -1, j)
        if family == "NSbar" or (family == "NSbar1") == (j % 2 == 1):
            total = total + tail.monomial_shift(0, j)
    return TwoVarTable(family, total)


def nsb_at_root(family: str, t: int, max_n: int) -> QSeries:
    """The weighted spt-crank series at z = zeta_t, expanded directly in Z[zeta_t].

    Equals ``specialize_at_root(nsb_table(family, max_n), t)`` but avoids the
    two-variable grid, so it reaches much higher orders.
    """
    from .cyclotomic import CycInt

    family = canonical_family(family)
    if family not in NSB_FAMILIES:
        raise ValueError(f"{family} is not a weighted spt-crank family")
    z, zi = CycInt.zeta(t, 1), CycInt.zeta(t, -1)
    total = QSeries.zero(t, max_n)
    tail = QSeries.one(t, max_n)
    if family == "NS2bar":
        for j in range(max_n // 2, 0, -1):
            if 2 * j + 2 <= max_n:
                tail = tail.mul_factor(1, 2 * j + 2)
            if 2 * j + 1 <= max_n:
                tail = tail.mul_factor(-1, 2 * j + 1)
            tail = tail.div_factor(z, 2 * j).div_factor(zi, 2 * j)
            total = total + tail.shift(2 * j).truncate(max_n)
        return total
    for j in range(max_n, 0, -1):
        if j + 1 <= max_n:
            tail = tail.mul_factor(-1, j + 1).mul_factor(1, j + 1)
        tail = tail.div_factor(z, j).div_factor(zi, j)
        if family == "NSbar" or (family == "NSbar1") == (j % 2 == 1):
            total = total + tail.shift(j).truncate(max_n)
    return total


@lru_cache(maxsize=None)
def doubled_extra_series(max_n: int) -> ZLaurentSeries:
    """epsilon(z, q) = (-q;q)/(q;q) * (1 + 2 sum (1-z)(1-1/z)(-1)^n q^n / ((1-zq^n)(1-q^n/z)))."""
    lam = lambert_laurent(lambda n: n, lambda n: n, lambda n: (-1) ** n, max_n)
    inner = ZLaurentSeries.one(max_n) + lam.scale(2)
    prefactor = poch_product(1, max_n, [(-1, 1, 1, 1), (1, 1, 1, -1)])
    return inner.mul_qseries(prefactor)


# -- single-variable spt generating functions --------------------------------


@lru_cache(maxsize=None)
def spt_generating_function(variant: str, max_n: int) -> QSeries:
    """Expand the single-variable generating function of an spt variant."""
    from .counting import _check_variant

    _check_variant(variant)
    total = QSeries.zero(1, max_n)
    tail = QSeries.one(1, max_n)
    if variant == "m2spt":
        # tail_j = (-q^(2j+1); q^2) / (q^(2j+2); q^2)
        for j in range(max_n // 2, 0, -1):
            if 2 * j + 1 <= max_n:
                tail = tail.mul_factor(-1, 2 * j + 1)
            if 2 * j + 2 <= max_n:
                tail = tail.div_factor(1, 2 * j + 2)
            total = total + tail.div_factor(1, 2 * j).div_factor(1, 2 * j).shift(2 * j).truncate(max_n)
        return total
    overlined = variant != "spt"
    for j in range(max_n, 0, -1):
        if j + 1 <= max_n:
            if overlined:
                tail = tail.mul_factor(-1, j + 1)
            tail = tail.div_factor(1, j + 1)
        if variant == "sptbar1" and j % 2 == 0:
            continue
        if variant == "sptbar2" and j % 2 == 1:
            continue
        total = total + tail.div_factor(1, j).div_factor(1, j).shift(j).truncate(max_n)
    return total
