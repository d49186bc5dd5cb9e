"""Smallest-parts counting functions.

Two independent routes: ``spt_counts`` is a dynamic program over the
smallest part and its multiplicity; ``spt_count_enum`` walks the objects
themselves and is meant for small n.
"""

from __future__ import annotations

from functools import lru_cache

from .partitions import has_distinct_odd_parts, iter_overpartitions, iter_partitions, nu

VARIANTS = ("spt", "sptbar", "sptbar1", "sptbar2", "m2spt")


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown spt variant {variant!r}; choose from {VARIANTS}")


def _allowed_smallest(variant: str, s: int) -> bool:
    if variant in ("sptbar1",):
        return s % 2 == 1
    if variant in ("sptbar2", "m2spt"):
        return s % 2 == 0
    return True


def _add_part(g: list[int], variant: str, s: int) -> None:
    """Allow part size s in the objects counted by g (in place)."""
    n = len(g) - 1
    unbounded = not (variant == "m2spt" and s % 2 == 1)
    if variant in ("sptbar", "sptbar1", "sptbar2"):
        # an overpartition part size: optional overlined copy, then any number
        for m in range(n, s - 1, -1):
            g[m] += g[m - s]
    elif not unbounded:
        # odd parts of m2spt objects are distinct
        for m in range(n, s - 1, -1):
            g[m] += g[m - s]
        return
    for m in range(s, n + 1):
        g[m] += g[m - s]


@lru_cache(maxsize=None)
def spt_counts(variant: str, max_n: int) -> tuple[int, ...]:
    """(value at 0, value at 1, ..., value at max_n); the value at 0 is 0."""
    _check_variant(variant)
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    out = [0] * (max_n + 1)
    # g[m] = number of objects of size m with every part > s
    g = [1] + [0] * max_n
    for s in range(max_n, 0, -1):
        if _allowed_smallest(variant, s):
            for k in range(1, max_n // s + 1):
                base = k * s
                for n in range(base, max_n + 1):
                    out[n] += k * g[n - base]
        _add_part(g, variant, s)
    return tuple(out)


def spt_count(n: int, variant: str = "spt") -> int:
    """Total number of smallest parts over the qualifying objects of n."""
    if n < 1:
        raise ValueError("n must be positive")
    return spt_counts(variant, n)[n]


def spt_count_enum(n: int, variant: str = "spt") -> int:
    """Same quantity by listing every object (small n only)."""
    _check_variant(variant)
    if n < 1:
        raise ValueError("n must be positive")
    if variant == "spt":
        return sum(nu(p) for p in iter_partitions(n))
    if variant == "m2spt":
        return sum(
            nu(p)
            for p in iter_partitions(n, distinct_odd_parts=True, smallest_parity="even")
            if has_distinct_odd_parts(p)
        )
    parity = {"sptbar": None, "sptbar1": "odd", "sptbar2": "even"}[variant]
    return sum(
        nu(op.parts)
        for op in iter_overpartitions(n, smallest_not_overlined=True, smallest_parity=parity)
    )


@lru_cache(maxsize=None)
def overpartition_counts(max_n: int) -> tuple[int, ...]:
    """p-bar(n) for n = 0..max_n."""
    g = [1] + [0] * max_n
    for s in range(1, max_n + 1):
        _add_part(g, "sptbar", s)
    return tuple(g)


@lru_cache(maxsize=None)
def partition_counts(max_n: int) -> tuple[int, ...]:
    g = [1] + [0] * max_n
    for s in range(1, max_n + 1):
        _add_part(g, "spt", s)
    return tuple(g)


@lru_cache(maxsize=None)
def distinct_partition_counts(max_n: int, odd_only: bool = False) -> tuple[int, ...]:
    """Partitions into distinct parts (optionally distinct odd parts only)."""
    g = [1] + [0] * max_n
    for s in range(1, max_n + 1, 2 if odd_only else 1):
        for m in range(max_n, s - 1, -1):
            g[m] += g[m - s]
    return tuple(g)
