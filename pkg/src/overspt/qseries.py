"""Truncated power series in q over Z[zeta_t].

A series over Z[zeta_t] with truncation N is stored as an object-dtype
numpy array of shape (d, N + 1), one "plane" per power-basis coordinate
(d = phi(t)).  Object dtype keeps Python's arbitrary precision integers, so
nothing here can overflow.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from .cyclotomic import CycInt, cyclotomic_poly, degree

Scalar = Union[int, CycInt]


def _zeros(d: int, n: int) -> np.ndarray:
    return np.zeros((d, n), dtype=object)


def _scalar_matrix(t: int, c: Scalar) -> np.ndarray | int:
    """Integer c stays an int; a CycInt becomes its multiplication matrix."""
    if isinstance(c, CycInt):
        if c.order != t:
            raise ValueError(f"ring mismatch: Z[zeta_{c.order}] vs Z[zeta_{t}]")
        if c.is_integer():
            return c.coeffs[0]
        return np.array(c.mult_matrix(), dtype=object)
    return int(c)


def _apply(m, block: np.ndarray) -> np.ndarray:
    if isinstance(m, int):
        return m * block
    return m @ block


def _reduce_planes(t: int, raw: np.ndarray) -> np.ndarray:
    # raw has 2d-1 planes (coordinates of zeta^0..zeta^(2d-2)); fold with Phi_t
    phi = cyclotomic_poly(t)
    d = len(phi) - 1
    raw = raw.copy()
    for k in range(raw.shape[0] - 1, d - 1, -1):
        top = raw[k]
        for j in range(d):
            if phi[j]:
                raw[k - d + j] = raw[k - d + j] - phi[j] * top
    return raw[:d]


class QSeries:
    """Truncated q-series: coefficients of q^0..q^trunc in Z[zeta_ring]."""

    __slots__ = ("ring", "trunc", "_planes")

    def __init__(self, ring: int, trunc: int, planes: np.ndarray | None = None):
        if ring < 1:
            raise ValueError(f"ring order must be positive, got {ring}")
        if trunc < 0:
            raise ValueError(f"truncation order must be nonnegative, got {trunc}")
        d = degree(ring)
        if planes is None:
            planes = _zeros(d, trunc + 1)
        elif planes.shape != (d, trunc + 1):
            raise ValueError(f"planes must have shape {(d, trunc + 1)}, got {planes.shape}")
        planes.setflags(write=False)
        self.ring = ring
        self.trunc = trunc
        self._planes = planes

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, ring: int, trunc: int) -> QSeries:
        return cls(ring, trunc)

    @classmethod
    def one(cls, ring: int, trunc: int) -> QSeries:
        return cls.monomial(ring, 0, trunc)

    @classmethod
    def monomial(cls, ring: int, exp: int, trunc: int, coeff: Scalar = 1) -> QSeries:
        return cls.sparse(ring, {exp: coeff}, trunc)

    @classmethod
    def sparse(cls, ring: int, terms: Mapping[int, Scalar], trunc: int) -> QSeries:
        planes = _zeros(degree(ring), trunc + 1)
        for e, c in terms.items():
            if e < 0:
                raise ValueError("negative exponents are not power series")
            if e <= trunc:
                vec = CycInt.coerce(ring, c).coeffs
                for i, v in enumerate(vec):
                    planes[i, e] += v
        return cls(ring, trunc, planes)

    @classmethod
    def from_coeffs(cls, ring: int, coeffs: Sequence[Scalar], trunc: int | None = None) -> QSeries:
        if trunc is None:
            trunc = len(coeffs) - 1
        if len(coeffs) < trunc + 1:
            raise ValueError("not enough coefficients for the requested truncation")
        return cls.sparse(ring, {i: c for i, c in enumerate(coeffs[: trunc + 1]) if c != 0}, trunc)

    @classmethod
    def from_planes(cls, ring: int, planes: np.ndarray) -> QSeries:
        return cls(ring, planes.shape[1] - 1, np.array(planes, dtype=object))

    # -- access -------------------------------------------------------
    @property
    def planes(self) -> np.ndarray:
        return self._planes

    def __getitem__(self, n: int) -> CycInt:
        if not 0 <= n <= self.trunc:
            raise IndexError(f"coefficient q^{n} outside truncation 0..{self.trunc}")
        return CycInt(self.ring, tuple(int(v) for v in self._planes[:, n]))

    @property
    def coeffs(self) -> list[CycInt]:
        return [self[n] for n in range(self.trunc + 1)]

    def int_coeffs(self) -> list[int]:
        """Coefficients as Python ints; requires every coefficient to be rational."""
        if self._planes.shape[0] > 1 and np.any(self._planes[1:] != 0):
            raise ValueError("series has non-rational cyclotomic coefficients")
        return [int(v) for v in self._planes[0]]

    def __len__(self) -> int:
        return self.trunc + 1

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: QSeries) -> int:
        if not isinstance(other, QSeries):
            raise TypeError(f"expected QSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: Z[zeta_{self.ring}] vs Z[zeta_{other.ring}]")
        return min(self.trunc, other.trunc)

    def __add__(self, other):
        if isinstance(other, (int, CycInt)):
            other = QSeries.monomial(self.ring, 0, self.trunc, other)
        n = self._check(other)
        return QSeries(self.ring, n, self._planes[:, : n + 1] + other._planes[:, : n + 1])

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries(self.ring, self.trunc, -self._planes)

    def __sub__(self, other):
        if isinstance(other, (int, CycInt)):
            other = QSeries.monomial(self.ring, 0, self.trunc, other)
        n = self._check(other)
        return QSeries(self.ring, n, self._planes[:, : n + 1] - other._planes[:, : n + 1])

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> QSeries:
        return QSeries(self.ring, self.trunc, _apply(_scalar_matrix(self.ring, c), self._planes))

    def __mul__(self, other):
        if isinstance(other, (int, CycInt)):
            return self.scale(other)
        n = self._check(other)
        a = self._planes[:, : n + 1]
        b = other._planes[:, : n + 1]
        d = a.shape[0]
        raw = _zeros(2 * d - 1, n + 1)
        for i in range(d):
            if not a[i].any():
                continue
            for j in range(d):
                if not b[j].any():
                    continue
                raw[i + j] = raw[i + j] + np.convolve(a[i], b[j])[: n + 1]
        return QSeries(self.ring, n, _reduce_planes(self.ring, raw))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QSeries:
        if e < 0:
            return self.inverse() ** (-e)
        result = QSeries.one(self.ring, self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> QSeries:
        """Multiplicative inverse; the constant term must be +1 or -1."""
        c0 = self[0]
        if c0 not in (1, -1):
            raise ValueError("only series with constant term +-1 are inverted")
        inv = QSeries.monomial(self.ring, 0, 0, c0)
        prec = 0
        while prec < self.trunc:
            prec = min(2 * prec + 1, self.trunc)
            a = self.truncate(prec)
            inv = inv.extend(prec)
            inv = inv * (2 - a * inv)
        return inv

    def mul_factor(self, c: Scalar, k: int) -> QSeries:
        """Multiply by (1 - c q^k), k >= 1."""
        if k < 1:
            raise ValueError("factor exponent must be positive")
        planes = np.array(self._planes, dtype=object)
        if k <= self.trunc:
            m = _scalar_matrix(self.ring, c)
            planes[:, k:] = planes[:, k:] - _apply(m, self._planes[:, :-k])
        return QSeries(self.ring, self.trunc, planes)

    def div_factor(self, c: Scalar, k: int) -> QSeries:
        """Divide by (1 - c q^k), k >= 1, via its geometric expansion."""
        if k < 1:
            raise ValueError("factor exponent must be positive")
        planes = np.array(self._planes, dtype=object)
        m = _scalar_matrix(self.ring, c)
        n = self.trunc + 1
        for start in range(k, n, k):
            stop = min(start + k, n)
            planes[:, start:stop] = planes[:, start:stop] + _apply(
                m, planes[:, start - k : stop - k]
            )
        return QSeries(self.ring, self.trunc, planes)

    def shift(self, k: int) -> QSeries:
        """Multiply by q^k (k >= 0); the truncation grows by k."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        planes = _zeros(self._planes.shape[0], self.trunc + k + 1)
        planes[:, k:] = self._planes
        return QSeries(self.ring, self.trunc + k, planes)

    def dilate(self, k: int) -> QSeries:
        """Substitute q -> q^k."""
        if k < 1:
            raise ValueError("dilation factor must be positive")
        new_trunc = k * self.trunc + k - 1
        planes = _zeros(self._planes.shape[0], new_trunc + 1)
        planes[:, ::k] = self._planes
        return QSeries(self.ring, new_trunc, planes)

    def truncate(self, n: int) -> QSeries:
        if n > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {n}")
        return QSeries(self.ring, n, np.array(self._planes[:, : n + 1], dtype=object))

    def extend(self, n: int) -> QSeries:
        # zero-pad; only meaningful when the caller knows the tail is exact
        if n <= self.trunc:
            return self.truncate(n)
        planes = _zeros(self._planes.shape[0], n + 1)
        planes[:, : self.trunc + 1] = self._planes
        return QSeries(self.ring, n, planes)

    def lift(self, ring: int) -> QSeries:
        """Embed an integer series (ring 1) into Z[zeta_ring]."""
        if ring == self.ring:
            return self
        if self.ring != 1:
            raise ValueError("only rational series can be lifted to another ring")
        planes = _zeros(degree(ring), self.trunc + 1)
        planes[0] = self._planes[0]
        return QSeries(ring, self.trunc, planes)

    # -- comparison / display ----------------------------------------
    def first_difference(self, other: QSeries) -> int | None:
        """Smallest exponent where the series differ (up to the common order)."""
        n = self._check(other)
        diff = self._planes[:, : n + 1] != other._planes[:, : n + 1]
        cols = np.nonzero(diff.any(axis=0))[0]
        return int(cols[0]) if len(cols) else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return self.first_difference(other) is None

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        shown = []
        for n in range(min(self.trunc, 8) + 1):
            c = self[n]
            if not c.is_zero():
                shown.append(f"({c})q^{n}")
        body = " + ".join(shown) if shown else "0"
        return f"QSeries[t={self.ring}]({body} + O(q^{self.trunc + 1}))"


# -- builders --------------------------------------------------------------


def poch_inf(ring: int, scalar: Scalar, shift: int, step: int, trunc: int) -> QSeries:
    """(c q^s; q^d)_inf = prod_{k>=0} (1 - c q^(s + k d)) to order trunc."""
    if shift < 1:
        raise ValueError(f"Pochhammer shift must be >= 1, got {shift}")
    if step < 1:
        raise ValueError(f"Pochhammer step must be >= 1, got {step}")
    out = QSeries.one(ring, trunc)
    if scalar == 0:
        return out
    for e in range(shift, trunc + 1, step):
        out = out.mul_factor(scalar, e)
    return out


def poch_inf_inv(ring: int, scalar: Scalar, shift: int, step: int, trunc: int) -> QSeries:
    """1 / (c q^s; q^d)_inf to order trunc."""
    if shift < 1:
        raise ValueError(f"Pochhammer shift must be >= 1, got {shift}")
    if step < 1:
        raise ValueError(f"Pochhammer step must be >= 1, got {step}")
    out = QSeries.one(ring, trunc)
    if scalar == 0:
        return out
    for e in range(shift, trunc + 1, step):
        out = out.div_factor(scalar, e)
    return out


def poch_product(ring: int, trunc: int, factors: Iterable[tuple]) -> QSeries:
    """Product of powers of infinite Pochhammer symbols.

    Each factor is (scalar, shift, step, power): (scalar q^shift; q^step)_inf
    raised to the integer power (negative powers divide).
    """
    out = QSeries.one(ring, trunc)
    for scalar, shift, step, power in factors:
        if shift < 1 or step < 1:
            raise ValueError(f"invalid Pochhammer factor {(scalar, shift, step, power)}")
        if scalar == 0 or power == 0:
            continue
        for e in range(shift, trunc + 1, step):
            for _ in range(abs(power)):
                out = out.mul_factor(scalar, e) if power > 0 else out.div_factor(scalar, e)
    return out


def eta_quotient(ring: int, trunc: int, powers: Mapping[int, int]) -> QSeries:
    """prod_k (q^k; q^k)_inf ** powers[k]."""
    return poch_product(ring, trunc, [(1, k, k, p) for k, p in powers.items()])


def lambert_sum(
    ring: int,
    zeta: Scalar,
    numer_exp: Callable[[int], int],
    pole_exp: Callable[[int], int],
    sign: Callable[[int], int],
    trunc: int,
    extra_exp: Callable[[int], int] | None = None,
    start: int = 1,
) -> QSeries:
    """Sum over n >= start of

        sign(n) (1 - z)(1 - 1/z) q^a(n) [1 + q^h(n)] / ((1 - z q^g(n))(1 - q^g(n)/z))

    with z = zeta, a = numer_exp, g = pole_exp and h = extra_exp (if given).
    Terms are added while a(n) <= trunc; a must be strictly increasing.
    """
    zeta = CycInt.coerce(ring, zeta)
    zinv = zeta.conj() if ring > 1 else zeta
    if ring > 1 and zeta * zinv != 1:
        raise ValueError("zeta must be a root of unity")
    twice_real = zeta + zinv
    weight = 2 - twice_real  # (1 - z)(1 - 1/z)
    d = degree(ring)
    out = _zeros(d, trunc + 1)
    if weight.is_zero():
        return QSeries(ring, trunc, out)
    # 1/((1 - z x)(1 - x/z)) = sum_k U_k x^k with U_k = sum_{j=0..k} z^(k - 2j)
    u_prev, u = CycInt.from_int(ring, 0), CycInt.from_int(ring, 1)
    table = []
    for _ in range(trunc + 1):
        table.append((weight * u).coeffs)
        u_prev, u = u, twice_real * u - u_prev
    w = np.array(table, dtype=object).T  # shape (d, trunc + 1)

    n = start
    last = None
    while True:
        a = numer_exp(n)
        if last is not None and a <= last:
            raise ValueError(f"numerator exponents must increase strictly (n={n})")
        if a > trunc:
            break
        if a < 0:
            raise ValueError("numerator exponents must be nonnegative")
        g = pole_exp(n)
        if g < 1:
            raise ValueError("pole exponents must be positive")
        s = sign(n)
        shifts = [a]
        if extra_exp is not None:
            shifts.append(a + extra_exp(n))
        for base in shifts:
            if base > trunc:
                continue
            idx = np.arange(base, trunc + 1, g)
            out[:, idx] = out[:, idx] + s * w[:, : len(idx)]
        last = a
        n += 1
    return QSeries(ring, trunc, out)


def theta_phi(ring: int, sign: int, trunc: int, form: str = "sum") -> QSeries:
    """phi(sign * q) = sum_{k in Z} sign^(k^2) q^(k^2)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if form == "product":
        return theta_f(ring, 1, 1, trunc, a_sign=sign, b_sign=sign, form="product")
    if form != "sum":
        raise ValueError(f"unknown form {form!r}")
    terms: dict[int, int] = {0: 1}
    k = 1
    while k * k <= trunc:
        terms[k * k] = 2 * (sign if k % 2 else 1)
        k += 1
    return QSeries.sparse(ring, terms, trunc)


def theta_f(
    ring: int,
    a_exp: int,
    b_exp: int,
    trunc: int,
    a_sign: int = 1,
    b_sign: int = 1,
    form: str = "sum",
) -> QSeries:
    """Ramanujan's f(a, b) with a = a_sign q^a_exp and b = b_sign q^b_exp.

    Sum form: sum_{k in Z} a^(k(k+1)/2) b^(k(k-1)/2).
    Product form: (-a; ab)_inf (-b; ab)_inf (ab; ab)_inf.
    """
    if a_exp < 0 or b_exp < 0 or a_exp + b_exp < 1:
        raise ValueError("need a_exp, b_exp >= 0 with a_exp + b_exp >= 1")
    if form == "sum":
        terms: dict[int, int] = {}
        k = 0
        while True:
            added = False
            for kk in (k, -k - 1):
                ea, eb = kk * (kk + 1) // 2, kk * (kk - 1) // 2
                e = a_exp * ea + b_exp * eb
                if e <= trunc:
                    c = (a_sign ** (ea % 2)) * (b_sign ** (eb % 2))
                    terms[e] = terms.get(e, 0) + c
                    added = True
            # both exponent sequences are nondecreasing in k
            if not added:
                break
            k += 1
        return QSeries.sparse(ring, terms, trunc)
    if form != "product":
        raise ValueError(f"unknown form {form!r}")
    ab_exp, ab_sign = a_exp + b_exp, a_sign * b_sign
    out = QSeries.one(ring, trunc)
    for exp0, sgn0 in ((a_exp, a_sign), (b_exp, b_sign)):
        # (-x; ab)_inf = prod_k (1 + x (ab)^k)
        k = 0
        while exp0 + k * ab_exp <= trunc:
            c = sgn0 * ab_sign**k  # coefficient of q^(exp0 + k ab_exp) inside the factor
            e = exp0 + k * ab_exp
            if e == 0:
                out = out.scale(1 + c)
            else:
                out = out.mul_factor(-c, e)
            k += 1
    k = 1
    while k * ab_exp <= trunc:
        out = out.mul_factor(ab_sign**k, k * ab_exp)
        k += 1
    return out


def dissect(s: QSeries, t: int) -> list[QSeries]:
    """Split s = sum_r q^r S_r(q^t); component r has truncation (N - r) // t."""
    if t < 1:
        raise ValueError("dissection modulus must be positive")
    if s.trunc < t - 1:
        raise ValueError(f"series of order {s.trunc} is too short to {t}-dissect")
    return [
        QSeries(s.ring, (s.trunc - r) // t, np.array(s.planes[:, r::t], dtype=object))
        for r in range(t)
    ]


def reassemble(components: Sequence[QSeries], t: int | None = None) -> QSeries:
    """Inverse of dissect: sum_r q^r components[r](q^t)."""
    if t is None:
        t = len(components)
    if len(components) != t or t < 1:
        raise ValueError("need exactly t components")
    ring = components[0].ring
    order = min(t * (c.trunc + 1) + r for r, c in enumerate(components)) - 1
    planes = _zeros(degree(ring), order + 1)
    for r, c in enumerate(components):
        if c.ring != ring:
            raise ValueError("components live in different rings")
        count = len(range(r, order + 1, t))
        planes[:, r::t] = c.planes[:, :count]
    return QSeries(ring, order, planes)
