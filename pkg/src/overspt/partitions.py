"""Partitions, overpartitions, and their rank/crank statistics.

A partition is a weakly decreasing tuple of positive integers.  The empty
partition is ``()`` and its smallest part is the sentinel ``INFINITY``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

Partition = tuple[int, ...]

INFINITY = math.inf  # smallest part of the empty partition


# -- basic partition functions -------------------------------------------


def smallest(p: Partition):
    """s(p); INFINITY for the empty partition."""
    return p[-1] if p else INFINITY


def largest(p: Partition) -> int:
    """l(p); 0 for the empty partition."""
    return p[0] if p else 0


def num_parts(p: Partition) -> int:
    return len(p)


def nu(p: Partition) -> int:
    """Number of occurrences of the smallest part (0 for the empty partition)."""
    if not p:
        return 0
    s = p[-1]
    return sum(1 for x in p if x == s)


def n_odd(p: Partition) -> int:
    return sum(1 for x in p if x % 2)


def n_even(p: Partition) -> int:
    return sum(1 for x in p if x % 2 == 0)


def is_partition(p) -> bool:
    return (
        isinstance(p, tuple)
        and all(isinstance(x, int) and x > 0 for x in p)
        and all(p[i] >= p[i + 1] for i in range(len(p) - 1))
    )


def normalize(parts) -> Partition:
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in parts):
        raise ValueError("parts must be positive")
    return parts


def is_distinct(p: Partition) -> bool:
    return len(set(p)) == len(p)


def has_distinct_odd_parts(p: Partition) -> bool:
    odd = [x for x in p if x % 2]
    return len(set(odd)) == len(odd)


def _parity_ok(x, parity: Optional[str]) -> bool:
    if parity is None:
        return True
    if x == INFINITY:
        return False
    if parity == "odd":
        return x % 2 == 1
    if parity == "even":
        return x % 2 == 0
    raise ValueError(f"parity must be 'odd', 'even' or None, got {parity!r}")


def iter_partitions(
    n: int,
    min_part: int = 1,
    max_part: Optional[int] = None,
    distinct: bool = False,
    distinct_odd_parts: bool = False,
    smallest_parity: Optional[str] = None,
    parts_parity: Optional[str] = None,
) -> Iterator[Partition]:
    """Partitions of n in lexicographically descending order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n
    min_part = max(min_part, 1)
    step_ok = (lambda x: True) if parts_parity is None else (lambda x: _parity_ok(x, parts_parity))

    def rec(rest: int, cap: int, prefix: list[int]) -> Iterator[Partition]:
        if rest == 0:
            p = tuple(prefix)
            if _parity_ok(smallest(p), smallest_parity):
                yield p
            return
        for x in range(min(rest, cap), min_part - 1, -1):
            if not step_ok(x):
                continue
            strict = distinct or (distinct_odd_parts and x % 2 == 1)
            prefix.append(x)
            yield from rec(rest - x, x - 1 if strict else x, prefix)
            prefix.pop()

    yield from rec(n, max_part, [])


def enumerate_partitions(n: int, **constraints) -> list[Partition]:
    return list(iter_partitions(n, **constraints))


# -- overpartitions --------------------------------------------------------


def _overline(x: int) -> str:
    return "".join(ch + "̅" for ch in str(x))


def format_partition(p: Partition, overlined=frozenset()) -> str:
    """'3̄+2+1' style text; the empty partition renders as '--'."""
    if not p:
        return "--"
    out, seen = [], set()
    for x in p:
        if x in overlined and x not in seen:
            out.append(_overline(x))
            seen.add(x)
        else:
            out.append(str(x))
    return "+".join(out)


@dataclass(frozen=True)
class Overpartition:
    """A partition whose first occurrence of each size in ``overlined`` is overlined."""

    parts: Partition
    overlined: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not is_partition(self.parts):
            raise ValueError(f"{self.parts} is not a weakly decreasing tuple of positive ints")
        if not set(self.overlined) <= set(self.parts):
            raise ValueError("overlined sizes must occur as parts")
        object.__setattr__(self, "overlined", frozenset(self.overlined))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def non_overlined(self) -> Partition:
        """Sub-partition of the parts that carry no overline."""
        out, seen = [], set()
        for x in self.parts:
            if x in self.overlined and x not in seen:
                seen.add(x)
            else:
                out.append(x)
        return tuple(out)

    def overlined_parts(self) -> Partition:
        return tuple(sorted(self.overlined, reverse=True))

    def smallest_overlined(self) -> bool:
        return bool(self.parts) and self.parts[-1] in self.overlined

    def __str__(self) -> str:
        return format_partition(self.parts, self.overlined)


def overpartitions_of(p: Partition) -> Iterator[Overpartition]:
    """All overlinings of p; the mask bit of the largest size is least significant."""
    sizes = sorted(set(p), reverse=True)
    for mask in range(1 << len(sizes)):
        chosen = frozenset(s for i, s in enumerate(sizes) if mask >> i & 1)
        yield Overpartition(p, chosen)


def iter_overpartitions(
    n: int,
    smallest_not_overlined: bool = False,
    smallest_parity: Optional[str] = None,
) -> Iterator[Overpartition]:
    for p in iter_partitions(n, smallest_parity=smallest_parity):
        for op in overpartitions_of(p):
            if smallest_not_overlined and op.smallest_overlined():
                continue
            yield op


def enumerate_overpartitions(n: int, **constraints) -> list[Overpartition]:
    return list(iter_overpartitions(n, **constraints))


# -- statistics -------------------------------------------------------------


def rank(p: Partition) -> int:
    """Dyson's rank: largest part minus number of parts (0 for the empty partition)."""
    return largest(p) - len(p)


def crank(p: Partition) -> int:
    """Combinatorial crank; the single partition (1) gets 0 - 1 = -1."""
    ones = sum(1 for x in p if x == 1)
    if ones == 0:
        return largest(p)
    return sum(1 for x in p if x > ones) - ones


def m2_rank(p: Partition) -> int:
    """ceil(l(p)/2) - #(p) for partitions without repeated odd parts."""
    if not has_distinct_odd_parts(p):
        raise ValueError(f"M2-rank needs distinct odd parts, got {p}")
    return -(-largest(p) // 2) - len(p)


def dyson_rank(op: Overpartition) -> int:
    return rank(op.parts)


def residual_crank(op: Overpartition) -> int:
    """Crank of the sub-partition of non-overlined parts."""
    return crank(op.non_overlined())


def halved_evens(p: Partition) -> Partition:
    return tuple(x // 2 for x in p if x % 2 == 0)


def residual_crank_m2(p: Partition) -> int:
    """Crank of the even parts halved, for partitions with distinct odd parts."""
    if not has_distinct_odd_parts(p):
        raise ValueError(f"needs distinct odd parts, got {p}")
    return crank(halved_evens(p))


def statistic(obj, which: str) -> int:
    """Dispatch: rank | crank | dyson_rank | m2_rank | residual_crank | residual_crank_m2."""
    if which in ("dyson_rank", "residual_crank"):
        if not isinstance(obj, Overpartition):
            obj = Overpartition(tuple(obj))
        return dyson_rank(obj) if which == "dyson_rank" else residual_crank(obj)
    parts = obj.parts if isinstance(obj, Overpartition) else tuple(obj)
    if isinstance(obj, Overpartition) and obj.overlined and which != "rank":
        raise ValueError(f"{which} is defined on partitions, not overpartitions")
    table = {
        "rank": rank,
        "crank": crank,
        "m2_rank": m2_rank,
        "residual_crank_m2": residual_crank_m2,
    }
    if which not in table:
        raise ValueError(f"unknown statistic {which!r}")
    return table[which](parts)
