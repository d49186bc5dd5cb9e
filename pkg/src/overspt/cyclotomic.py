"""Exact arithmetic in the cyclotomic integers Z[zeta_t].

An element is stored as its coefficient vector in the power basis
1, zeta, ..., zeta^(d-1) where d = phi(t) is the degree of the t-th
cyclotomic polynomial.  Every public constructor returns the canonical
reduced representative, so structural equality is ring equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (coefficient lists, low degree first).
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(t: int) -> tuple[int, ...]:
    """Coefficients of Phi_t, lowest degree first."""
    if t < 1:
        raise ValueError(f"cyclotomic order must be positive, got {t}")
    poly = [-1] + [0] * (t - 1) + [1]  # x^t - 1
    for d in range(1, t):
        if t % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def degree(t: int) -> int:
    return len(cyclotomic_poly(t)) - 1


def _reduce_raw(t: int, raw: Sequence[int]) -> tuple[int, ...]:
    phi = cyclotomic_poly(t)
    d = len(phi) - 1
    # fold by zeta^t = 1 first so arbitrary long inputs stay cheap
    folded = [0] * max(t, d)
    for k, c in enumerate(raw):
        if c:
            folded[k % t] += c
    # Phi_t is monic: eliminate degrees >= d from the top down
    for k in range(len(folded) - 1, d - 1, -1):
        c = folded[k]
        if c:
            folded[k] = 0
            for j in range(d):
                folded[k - d + j] -= c * phi[j]
    return tuple(folded[:d])


@lru_cache(maxsize=None)
def _zeta_power_table(t: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_reduce_raw(t, [0] * k + [1]) for k in range(t))


IntLike = Union[int, "CycInt"]


@dataclass(frozen=True, eq=False)
class CycInt:
    """An element of Z[zeta_t] in canonical reduced form."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != degree(self.order):
            raise ValueError(
                f"Z[zeta_{self.order}] needs {degree(self.order)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    # -- constructors -------------------------------------------------
    @classmethod
    def from_int(cls, t: int, value: int) -> CycInt:
        d = degree(t)
        return cls(t, (int(value),) + (0,) * (d - 1))

    @classmethod
    def zeta(cls, t: int, k: int = 1) -> CycInt:
        return cls(t, _zeta_power_table(t)[k % t])

    @classmethod
    def coerce(cls, t: int, value: IntLike) -> CycInt:
        if isinstance(value, CycInt):
            if value.order != t:
                raise ValueError(f"ring mismatch: Z[zeta_{value.order}] vs Z[zeta_{t}]")
            return value
        return cls.from_int(t, value)

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    # -- arithmetic ---------------------------------------------------
    def _other(self, other) -> CycInt | None:
        if isinstance(other, CycInt):
            if other.order != self.order:
                raise ValueError(
                    f"ring mismatch: Z[zeta_{self.order}] vs Z[zeta_{other.order}]"
                )
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.order, other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycInt(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycInt(self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return CycInt(self.order, _reduce_raw(self.order, prod))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycInt:
        if e < 0:
            raise ValueError("negative powers are not ring elements in general")
        result = CycInt.from_int(self.order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> CycInt:
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        raw = [0] * self.order
        for k, c in enumerate(self.coeffs):
            raw[(-k) % self.order] += c
        return CycInt(self.order, _reduce_raw(self.order, raw))

    def mult_matrix(self) -> list[list[int]]:
        """Integer matrix M with M[i][j] = coefficient of zeta^i in self*zeta^j."""
        d = len(self.coeffs)
        cols = [(self * CycInt.zeta(self.order, j)).coeffs for j in range(d)]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    # -- comparison / display ----------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, CycInt):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_integer():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def to_json(self) -> dict:
        return {"t": self.order, "c": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> CycInt:
        return cls(int(obj["t"]), tuple(int(c) for c in obj["c"]))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mono = "ζ" if k == 1 else f"ζ^{k}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"CycInt({self.order}, {self.coeffs})"


def cyc_reduce(t: int, raw: Iterable[int]) -> CycInt:
    """Canonical element of Z[zeta_t] for the polynomial sum(raw[k] * zeta^k)."""
    if t < 1:
        raise ValueError(f"cyclotomic order must be positive, got {t}")
    return CycInt(t, _reduce_raw(t, list(raw)))


def zeta_sum(t: int, exponents: dict[int, int]) -> CycInt:
    """sum(c * zeta^k for k, c in exponents.items()); negative k allowed."""
    raw = [0] * t
    for k, c in exponents.items():
        raw[k % t] += c
    return cyc_reduce(t, raw)
