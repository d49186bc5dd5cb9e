"""Two-variable series sum_n sum_m c(m, n) z^m q^n with integer coefficients.

Row n is a Laurent polynomial in z supported on |m| <= n.  Storage is an
object-dtype grid of shape (N + 1, 2N + 1) with column N holding z^0.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .cyclotomic import CycInt, degree
from .qseries import QSeries


class ZLaurentSeries:
    __slots__ = ("trunc", "_grid")

    def __init__(self, trunc: int, grid: np.ndarray | None = None, check: bool = True):
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        shape = (trunc + 1, 2 * trunc + 1)
        if grid is None:
            grid = np.zeros(shape, dtype=object)
        elif grid.shape != shape:
            raise ValueError(f"grid must have shape {shape}, got {grid.shape}")
        if check:
            _assert_support(grid, trunc)
        grid.setflags(write=False)
        self.trunc = trunc
        self._grid = grid

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, trunc: int) -> ZLaurentSeries:
        return cls(trunc)

    @classmethod
    def one(cls, trunc: int) -> ZLaurentSeries:
        grid = np.zeros((trunc + 1, 2 * trunc + 1), dtype=object)
        grid[0, trunc] = 1
        return cls(trunc, grid)

    @classmethod
    def from_terms(cls, trunc: int, terms: dict[tuple[int, int], int]) -> ZLaurentSeries:
        """terms maps (m, n) -> coefficient of z^m q^n."""
        grid = np.zeros((trunc + 1, 2 * trunc + 1), dtype=object)
        for (m, n), c in terms.items():
            if n <= trunc:
                if abs(m) > n:
                    raise ValueError(f"term z^{m} q^{n} violates |m| <= n")
                grid[n, trunc + m] += c
        return cls(trunc, grid)

    @classmethod
    def from_qseries(cls, s: QSeries) -> ZLaurentSeries:
        """An integer q-series viewed as constant in z."""
        grid = np.zeros((s.trunc + 1, 2 * s.trunc + 1), dtype=object)
        grid[:, s.trunc] = s.int_coeffs()
        return cls(s.trunc, grid)

    # -- access -------------------------------------------------------
    @property
    def grid(self) -> np.ndarray:
        return self._grid

    def coeff(self, m: int, n: int) -> int:
        if not 0 <= n <= self.trunc:
            raise IndexError(f"q^{n} outside truncation 0..{self.trunc}")
        if abs(m) > n:
            return 0
        return int(self._grid[n, self.trunc + m])

    def row(self, n: int) -> dict[int, int]:
        """Nonzero coefficients of z^m in row n."""
        return {m: self.coeff(m, n) for m in range(-n, n + 1) if self._grid[n, self.trunc + m]}

    def row_sums(self) -> list[int]:
        return [int(v) for v in self._grid.sum(axis=1)]

    def truncate(self, n: int) -> ZLaurentSeries:
        if n > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {n}")
        off = self.trunc
        return ZLaurentSeries(n, np.array(self._grid[: n + 1, off - n : off + n + 1]), check=False)

    # -- arithmetic ---------------------------------------------------
    def _common(self, other: ZLaurentSeries):
        if not isinstance(other, ZLaurentSeries):
            raise TypeError(f"expected ZLaurentSeries, got {type(other).__name__}")
        n = min(self.trunc, other.trunc)
        return n, self.truncate(n)._grid, other.truncate(n)._grid

    def __add__(self, other):
        n, a, b = self._common(other)
        return ZLaurentSeries(n, a + b, check=False)

    def __sub__(self, other):
        n, a, b = self._common(other)
        return ZLaurentSeries(n, a - b, check=False)

    def __neg__(self) -> ZLaurentSeries:
        return ZLaurentSeries(self.trunc, -self._grid, check=False)

    def scale(self, c: int) -> ZLaurentSeries:
        return ZLaurentSeries(self.trunc, int(c) * self._grid, check=False)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, QSeries):
            return self.mul_qseries(other)
        if isinstance(other, ZLaurentSeries):
            return self.mul_laurent(other)
        return NotImplemented

    __rmul__ = __mul__

    def mul_qseries(self, s: QSeries) -> ZLaurentSeries:
        """Multiply by an integer q-series (constant in z)."""
        coeffs = s.int_coeffs()
        n = min(self.trunc, s.trunc)
        src = self.truncate(n)._grid
        out = np.zeros_like(src)
        for j, c in enumerate(coeffs[: n + 1]):
            if c:
                out[j:] = out[j:] + c * src[: n + 1 - j]
        return ZLaurentSeries(n, out, check=False)

    def mul_laurent(self, other: ZLaurentSeries) -> ZLaurentSeries:
        n, a, b = self._common(other)
        out = np.zeros_like(a)
        for j in range(n + 1):
            row = b[j]
            for m in np.nonzero(row)[0]:
                shift = int(m) - n
                c = row[m]
                src = a[: n + 1 - j]
                if shift >= 0:
                    out[j:, shift:] = out[j:, shift:] + c * src[:, : 2 * n + 1 - shift]
                else:
                    out[j:, :shift] = out[j:, :shift] + c * src[:, -shift:]
        return ZLaurentSeries(n, out)

    def monomial_shift(self, a: int, k: int) -> ZLaurentSeries:
        """Multiply by z^a q^k with |a| <= k; the truncation is kept."""
        if abs(a) > k:
            raise ValueError("z-exponent must not exceed q-exponent in size")
        n = self.trunc
        out = np.zeros_like(self._grid)
        if k <= n:
            out[k:] = _zshift(self._grid[: n + 1 - k], a)
        return ZLaurentSeries(n, out, check=False)

    def mul_factor(self, c: int, a: int, k: int) -> ZLaurentSeries:
        """Multiply by (1 - c z^a q^k) with |a| <= k, k >= 1."""
        if k < 1 or abs(a) > k:
            raise ValueError("factor needs k >= 1 and |a| <= k")
        n = self.trunc
        out = np.array(self._grid)
        if k <= n:
            out[k:] = out[k:] - c * _zshift(self._grid[: n + 1 - k], a)
        return ZLaurentSeries(n, out, check=False)

    def div_factor(self, c: int, a: int, k: int) -> ZLaurentSeries:
        """Divide by (1 - c z^a q^k) with |a| <= k, k >= 1."""
        if k < 1 or abs(a) > k:
            raise ValueError("factor needs k >= 1 and |a| <= k")
        n = self.trunc
        out = np.array(self._grid)
        for start in range(k, n + 1, k):
            stop = min(start + k, n + 1)
            out[start:stop] = out[start:stop] + c * _zshift(out[start - k : stop - k], a)
        return ZLaurentSeries(n, out, check=False)

    # -- comparison ---------------------------------------------------
    def first_difference(self, other: ZLaurentSeries) -> tuple[int, int] | None:
        """(n, m) of the first differing coefficient: smallest n, then smallest |m|, then m."""
        n, a, b = self._common(other)
        diff = a != b
        rows = np.nonzero(diff.any(axis=1))[0]
        if not len(rows):
            return None
        r = int(rows[0])
        ms = [int(c) - n for c in np.nonzero(diff[r])[0]]
        return r, min(ms, key=lambda m: (abs(m), m))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZLaurentSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        rows = [f"q^{n}: {self.row(n)}" for n in range(min(self.trunc, 4) + 1)]
        return f"ZLaurentSeries(trunc={self.trunc}; " + "; ".join(rows) + ")"


def _zshift(block: np.ndarray, a: int) -> np.ndarray:
    # multiply every row by z^a (column offset a); entries pushed off the grid
    # would violate the support bound, so they must be zero
    if a == 0:
        return block
    out = np.zeros_like(block)
    if a > 0:
        out[:, a:] = block[:, :-a]
    else:
        out[:, :a] = block[:, -a:]
    return out


def _assert_support(grid: np.ndarray, trunc: int) -> None:
    cols = np.arange(2 * trunc + 1) - trunc
    rows = np.arange(trunc + 1)
    outside = np.abs(cols)[None, :] > rows[:, None]
    if np.any(grid[outside] != 0):
        bad = np.argwhere(outside & (grid != 0))[0]
        raise ValueError(f"support bound |m| <= n violated at n={bad[0]}, m={bad[1] - trunc}")


def lambert_laurent(
    numer_exp: Callable[[int], int],
    pole_exp: Callable[[int], int],
    sign: Callable[[int], int],
    trunc: int,
    extra_exp: Callable[[int], int] | None = None,
    start: int = 1,
) -> ZLaurentSeries:
    """Symbolic-z version of qseries.lambert_sum.

    Sum over n >= start of sign(n)(1 - z)(1 - 1/z) q^a(n) [1 + q^h(n)]
    / ((1 - z q^g(n))(1 - q^g(n)/z)), with every coefficient a Laurent
    polynomial in z.
    """
    grid = np.zeros((trunc + 1, 2 * trunc + 1), dtype=object)
    # W_k(z) = (2 - z - 1/z) * (z^k + z^(k-2) + ... + z^-k), as a dense row
    width = 2 * trunc + 3
    centre = trunc + 1
    w_rows = []
    for k in range(trunc + 1):
        u = np.zeros(width, dtype=object)
        u[centre - k : centre + k + 1 : 2] = 1
        w = 2 * u
        w[1:] = w[1:] - u[:-1]
        w[:-1] = w[:-1] - u[1:]
        w_rows.append(w)

    n = start
    last = None
    while True:
        a = numer_exp(n)
        if last is not None and a <= last:
            raise ValueError(f"numerator exponents must increase strictly (n={n})")
        if a > trunc:
            break
        g = pole_exp(n)
        if g < 1:
            raise ValueError("pole exponents must be positive")
        s = sign(n)
        bases = [a] + ([a + extra_exp(n)] if extra_exp is not None else [])
        for base in bases:
            k = 0
            while base + g * k <= trunc:
                e = base + g * k
                # support of W_k is |m| <= k + 1; the grid row spans |m| <= trunc
                w = w_rows[k][1:-1]
                if k + 1 > e:
                    raise ValueError("term violates the support bound |m| <= n")
                grid[e] = grid[e] + s * w
                k += 1
        last = a
        n += 1
    return ZLaurentSeries(trunc, grid)


def specialize_at_root(tab, t: int) -> QSeries:
    """Evaluate z = zeta_t: coefficient n becomes sum_m c(m, n) zeta_t^m."""
    series = getattr(tab, "series", tab)
    if not isinstance(series, ZLaurentSeries):
        raise TypeError("expected a ZLaurentSeries or a table wrapping one")
    n = series.trunc
    grid = series.grid
    d = degree(t)
    planes = np.zeros((d, n + 1), dtype=object)
    ms = np.arange(2 * n + 1) - n
    for k in range(t):
        cols = np.nonzero(ms % t == k)[0]
        if not len(cols):
            continue
        sums = grid[:, cols].sum(axis=1)
        vec = CycInt.zeta(t, k).coeffs
        for i, v in enumerate(vec):
            if v:
                planes[i] = planes[i] + v * sums
    return QSeries(t, n, planes)
