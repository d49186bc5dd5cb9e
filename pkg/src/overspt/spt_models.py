"""Combinatorial models of the spt-crank for overpartitions.

Three families of objects carry the same crank distribution:

* weighted vector partitions (pi1, pi2, pi3, pi4),
* partition pairs (lambda1, lambda2) with a crank-bar statistic,
* marked overpartitions (pi, j) with the spt-crank.

Membership predicates are defined once here and reused by the bijections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .partitions import (
    INFINITY,
    Overpartition,
    Partition,
    format_partition,
    is_distinct,
    is_partition,
    iter_overpartitions,
    iter_partitions,
    n_even,
    n_odd,
    nu,
    smallest,
)

VECTOR_FAMILIES = ("Sbar", "Sbar1", "Sbar2", "S2bar")
PAIR_FAMILIES = ("SPbar", "SPbar1", "SPbar2")

_VECTOR_ALIASES = {"S̄": "Sbar", "S̄₁": "Sbar1", "S̄₂": "Sbar2", "S2̄": "S2bar"}
_PAIR_ALIASES = {"SP̄": "SPbar", "SP̄₁": "SPbar1", "SP̄₂": "SPbar2"}


def _family(name: str, allowed, aliases) -> str:
    name = aliases.get(name, name)
    if name not in allowed:
        raise ValueError(f"unknown family {name!r}; choose from {allowed}")
    return name


def _parity_of(family: str) -> Optional[str]:
    if family.endswith("1"):
        return "odd"
    if family.endswith("2") or family == "S2bar":
        return "even"
    return None


# -- vector partitions -------------------------------------------------------


@dataclass(frozen=True, order=True)
class VectorPartition:
    pi1: Partition
    pi2: Partition
    pi3: Partition
    pi4: Partition

    @property
    def size(self) -> int:
        return sum(self.pi1) + sum(self.pi2) + sum(self.pi3) + sum(self.pi4)

    @property
    def weight(self) -> int:
        return -1 if len(self.pi1) % 2 == 0 else 1

    @property
    def crank(self) -> int:
        return len(self.pi2) - len(self.pi3)

    def __str__(self) -> str:
        return "[" + ", ".join(format_partition(p) for p in (self.pi1, self.pi2, self.pi3, self.pi4)) + "]"


def is_vector_member(v: VectorPartition, family: str = "Sbar") -> bool:
    family = _family(family, VECTOR_FAMILIES, _VECTOR_ALIASES)
    parts = (v.pi1, v.pi2, v.pi3, v.pi4)
    if not all(is_partition(p) for p in parts):
        return False
    if not (is_distinct(v.pi1) and is_distinct(v.pi4)):
        return False
    s = smallest(v.pi1)
    if not 1 <= s < INFINITY:
        return False
    if not (s <= smallest(v.pi2) and s <= smallest(v.pi3) and s < smallest(v.pi4)):
        return False
    if family == "Sbar1":
        return s % 2 == 1
    if family == "Sbar2":
        return s % 2 == 0
    if family == "S2bar":
        return n_odd(v.pi1) == n_odd(v.pi2) == n_odd(v.pi3) == 0 and n_even(v.pi4) == 0
    return True


def iter_vector_partitions(n: int, family: str = "Sbar") -> Iterator[VectorPartition]:
    family = _family(family, VECTOR_FAMILIES, _VECTOR_ALIASES)
    if n < 1:
        raise ValueError("n must be positive")
    even_only = "even" if family == "S2bar" else None
    odd_only = "odd" if family == "S2bar" else None
    parity = _parity_of(family)
    for s in range(1, n + 1):
        if parity == "odd" and s % 2 == 0 or parity == "even" and s % 2 == 1:
            continue
        for a1 in range(s, n + 1):
            firsts = [
                (p + (s,))
                for p in iter_partitions(a1 - s, min_part=s + 1, distinct=True, parts_parity=even_only)
            ]
            for a2 in range(0, n - a1 + 1):
                seconds = list(iter_partitions(a2, min_part=s, parts_parity=even_only))
                for a3 in range(0, n - a1 - a2 + 1):
                    thirds = list(iter_partitions(a3, min_part=s, parts_parity=even_only))
                    a4 = n - a1 - a2 - a3
                    fourths = list(
                        iter_partitions(a4, min_part=s + 1, distinct=True, parts_parity=odd_only)
                    )
                    for p1 in firsts:
                        for p2 in seconds:
                            for p3 in thirds:
                                for p4 in fourths:
                                    v = VectorPartition(p1, p2, p3, p4)
                                    if is_vector_member(v, family):
                                        yield v


def enumerate_vector_partitions(n: int, family: str = "Sbar") -> list[tuple[VectorPartition, int, int]]:
    """(vector partition, weight, crank) in canonical (sorted) order."""
    return [(v, v.weight, v.crank) for v in sorted(iter_vector_partitions(n, family))]


# -- partition pairs ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class PartitionPair:
    lam1: Partition
    lam2: Partition

    @property
    def size(self) -> int:
        return sum(self.lam1) + sum(self.lam2)

    def __str__(self) -> str:
        return f"[{format_partition(self.lam1)}, {format_partition(self.lam2)}]"


def is_sp_member(pair: PartitionPair, family: str = "SPbar") -> bool:
    family = _family(family, PAIR_FAMILIES, _PAIR_ALIASES)
    if not (is_partition(pair.lam1) and is_partition(pair.lam2)):
        return False
    s = smallest(pair.lam1)
    if not 0 < s < INFINITY or smallest(pair.lam2) < s:
        return False
    if any(x >= 2 * s + 1 and x % 2 == 0 for x in pair.lam2):
        return False
    if family == "SPbar1":
        return s % 2 == 1
    if family == "SPbar2":
        return s % 2 == 0
    return True


def iter_sp_pairs(n: int, family: str = "SPbar") -> Iterator[PartitionPair]:
    family = _family(family, PAIR_FAMILIES, _PAIR_ALIASES)
    if n < 1:
        raise ValueError("n must be positive")
    parity = _parity_of(family)
    for s in range(1, n + 1):
        if parity == "odd" and s % 2 == 0 or parity == "even" and s % 2 == 1:
            continue
        for a1 in range(s, n + 1):
            seconds = [
                p
                for p in iter_partitions(n - a1, min_part=s)
                if all(x % 2 == 1 or x <= 2 * s for x in p)
            ]
            for p in iter_partitions(a1 - s, min_part=s):
                lam1 = p + (s,)
                for lam2 in seconds:
                    yield PartitionPair(lam1, lam2)


def enumerate_sp_pairs(n: int, family: str = "SPbar") -> list[PartitionPair]:
    return sorted(iter_sp_pairs(n, family))


def _require_sp(pair: PartitionPair) -> int:
    if not is_sp_member(pair):
        raise ValueError(f"{pair} is not an SP-bar partition pair")
    return pair.lam1[-1]


def k_vec(pair: PartitionPair) -> int:
    """Number of parts j of lambda2 with s <= j <= 2s - 1, s = s(lambda1)."""
    s = _require_sp(pair)
    return sum(1 for x in pair.lam2 if s <= x <= 2 * s - 1)


def _crank_from(parts: Partition, s: int, k: int) -> int:
    if k > 0:
        return sum(1 for x in parts if x >= s + k) - k
    return len(parts) - 1


def crank_bar(pair: PartitionPair) -> int:
    s = _require_sp(pair)
    return _crank_from(pair.lam1, s, k_vec(pair))


# -- marked overpartitions ------------------------------------------------------


def odd_part(m: int) -> tuple[int, int]:
    """(b, j) with m = b * 2^j and b odd."""
    if m < 1:
        raise ValueError("need a positive integer")
    j = (m & -m).bit_length() - 1
    return m >> j, j


def j0(m: int, n: int) -> int:
    """Smallest j0 >= 0 with b(m) 2^j0 >= n + 1."""
    b, _ = odd_part(m)
    e = 0
    while b << e < n + 1:
        e += 1
    return e


def k_int(m: int, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    if m < n + 1:
        raise ValueError(f"k(m, n) needs m >= n + 1, got m={m}, n={n}")
    b, j = odd_part(m)
    if b >= 2 * n:
        return 0
    lifted = b << j0(m, n)
    if lifted < 2 * n:
        return 1 << (j - j0(m, n))
    return 0


def k_partition(pi: Partition, n: int) -> int:
    """Sum of k(m, n) over the (distinct) parts of pi; 0 for the empty partition."""
    return sum(k_int(m, n) for m in pi)


@dataclass(frozen=True)
class MarkedOverpartition:
    pi: Overpartition
    j: int

    def __post_init__(self):
        if not self.pi.parts:
            raise ValueError("a marked overpartition needs at least one part")
        if self.pi.smallest_overlined():
            raise ValueError("the smallest part must not be overlined")
        if not 1 <= self.j <= nu(self.pi.parts):
            raise ValueError(f"mark {self.j} outside 1..{nu(self.pi.parts)}")

    @property
    def size(self) -> int:
        return self.pi.size

    @property
    def pi1(self) -> Partition:
        return self.pi.non_overlined()

    @property
    def pi2(self) -> Partition:
        return self.pi.overlined_parts()

    @property
    def s(self) -> int:
        return self.pi.parts[-1]

    def sort_key(self):
        return (self.pi.parts, sorted(self.pi.overlined), self.j)

    def __str__(self) -> str:
        return f"({self.pi}, {self.j})"


def kbar(mop: MarkedOverpartition) -> int:
    return nu(mop.pi1) - mop.j + k_partition(mop.pi2, mop.s)


def sptcrank(mop: MarkedOverpartition) -> int:
    return _crank_from(mop.pi1, mop.s, kbar(mop))


def iter_marked_overpartitions(n: int, smallest_parity: Optional[str] = None) -> Iterator[MarkedOverpartition]:
    """Overpartitions in lexicographically descending order, then j ascending."""
    for op in iter_overpartitions(n, smallest_not_overlined=True, smallest_parity=smallest_parity):
        for j in range(1, nu(op.parts) + 1):
            yield MarkedOverpartition(op, j)


def enumerate_marked_overpartitions(n: int, smallest_parity: Optional[str] = None) -> list[MarkedOverpartition]:
    return list(iter_marked_overpartitions(n, smallest_parity))


def marked_row(mop: MarkedOverpartition) -> dict:
    """The per-object quantities shown in a marked-overpartition table."""
    return {
        "pi": str(mop.pi),
        "j": mop.j,
        "pi1": format_partition(mop.pi1),
        "pi2": format_partition(mop.pi2),
        "nu": nu(mop.pi1),
        "k": k_partition(mop.pi2, mop.s),
        "kbar": kbar(mop),
        "sptcrank": sptcrank(mop),
    }


# -- distributions ----------------------------------------------------------------


def vector_crank_distribution(n: int, family: str = "Sbar") -> dict[int, int]:
    """Weighted count of vector partitions of n by crank."""
    out: dict[int, int] = {}
    for v in iter_vector_partitions(n, family):
        out[v.crank] = out.get(v.crank, 0) + v.weight
    return {m: c for m, c in sorted(out.items()) if c}


def pair_crank_distribution(n: int, family: str = "SPbar") -> dict[int, int]:
    out: dict[int, int] = {}
    for pair in iter_sp_pairs(n, family):
        c = crank_bar(pair)
        out[c] = out.get(c, 0) + 1
    return dict(sorted(out.items()))


def sptcrank_distribution(n: int, smallest_parity: Optional[str] = None) -> dict[int, int]:
    out: dict[int, int] = {}
    for mop in iter_marked_overpartitions(n, smallest_parity):
        c = sptcrank(mop)
        out[c] = out.get(c, 0) + 1
    return dict(sorted(out.items()))
