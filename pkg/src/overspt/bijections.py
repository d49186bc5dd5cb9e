"""The bijections Psi_n (distinct parts -> restricted parts) and Phi
(marked overpartitions -> SP-bar partition pairs), with their inverses."""

from __future__ import annotations

from collections import Counter
from typing import Iterator

from .partitions import Overpartition, Partition, is_distinct, is_partition, iter_partitions, nu
from .spt_models import MarkedOverpartition, PartitionPair, is_sp_member, j0, odd_part


def in_D(n: int, pi: Partition) -> bool:
    """Distinct parts, all >= n + 1."""
    return is_partition(pi) and is_distinct(pi) and all(x >= n + 1 for x in pi)


def in_P(n: int, lam: Partition) -> bool:
    """Parts >= n + 1, and every part > 2n is odd."""
    return is_partition(lam) and all(x >= n + 1 and (x <= 2 * n or x % 2 == 1) for x in lam)


def iter_D(n: int, ell: int) -> Iterator[Partition]:
    return iter_partitions(ell, min_part=n + 1, distinct=True)


def iter_P(n: int, ell: int) -> Iterator[Partition]:
    return (lam for lam in iter_partitions(ell, min_part=n + 1) if in_P(n, lam))


def psi(n: int, pi: Partition) -> Partition:
    """Send each part m = b 2^j to 2^(j - j0) copies of b 2^j0."""
    if n < 1:
        raise ValueError("n must be positive")
    if not in_D(n, pi):
        raise ValueError(f"{pi} is not a partition into distinct parts >= {n + 1}")
    out: list[int] = []
    for m in pi:
        b, j = odd_part(m)
        e = j0(m, n)
        out.extend([b << e] * (1 << (j - e)))
    return tuple(sorted(out, reverse=True))


def psi_inv(n: int, lam: Partition) -> Partition:
    """Merge copies of each part p by the binary digits of its multiplicity."""
    if n < 1:
        raise ValueError("n must be positive")
    if not in_P(n, lam):
        raise ValueError(f"{lam} is not in P_{n}")
    out: list[int] = []
    for p, mult in Counter(lam).items():
        a = 0
        while mult:
            if mult & 1:
                out.append(p << a)
            mult >>= 1
            a += 1
    result = tuple(sorted(out, reverse=True))
    if not is_distinct(result):
        raise AssertionError(f"inverse image {result} of {lam} has repeated parts")
    return result


def phi(mop: MarkedOverpartition) -> PartitionPair:
    """(pi, j) -> (lambda1, lambda2): keep j smallest parts in lambda1, move the
    other nu - j to lambda2 together with Psi_s of the overlined parts."""
    if not isinstance(mop, MarkedOverpartition):
        raise TypeError("phi expects a MarkedOverpartition")
    s = mop.s
    pi1 = mop.pi1
    v = nu(pi1)
    rest = tuple(x for x in pi1 if x != s)
    lam1 = rest + (s,) * mop.j
    lam2 = tuple(sorted(psi(s, mop.pi2) + (s,) * (v - mop.j), reverse=True))
    return PartitionPair(lam1, lam2)


def phi_inv(pair: PartitionPair) -> MarkedOverpartition:
    if not is_sp_member(pair):
        raise ValueError(f"{pair} is not an SP-bar partition pair")
    s = pair.lam1[-1]
    j = nu(pair.lam1)
    ell = sum(1 for x in pair.lam2 if x == s)
    reduced = tuple(x for x in pair.lam2 if x != s)
    pi2 = psi_inv(s, reduced)
    parts = tuple(sorted(pair.lam1 + (s,) * ell + pi2, reverse=True))
    return MarkedOverpartition(Overpartition(parts, frozenset(pi2)), j)
