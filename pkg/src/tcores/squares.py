"""Sums of three squares.

r3 is counted by plain lattice enumeration here; the theta-series route
lives in ``qseries`` so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import isqrt
from typing import Union

import numpy as np

from .arith import kronecker
from .classnum import H

Rational = Union[int, Fraction]


class InconsistencyError(ArithmeticError):
    """A quantity that must be a non-negative integer came out otherwise."""


def _as_nonneg_int(m: Rational) -> int | None:
    m = Fraction(m)
    if m.denominator != 1 or m < 0:
        return None
    return m.numerator


@lru_cache(maxsize=1 << 16)
def _r3(m: int) -> int:
    count = 0
    for x in range(-isqrt(m), isqrt(m) + 1):
        rest = m - x * x
        for y in range(-isqrt(rest), isqrt(rest) + 1):
            z2 = rest - y * y
            z = isqrt(z2)
            if z * z == z2:
                count += 1 if z == 0 else 2
    return count


# r3 values below this come from a shared table; above it, direct enumeration
R3_TABLE_CAP = 1 << 20
_r3_shared: np.ndarray | None = None


def _table_r3(m: int) -> int:
    global _r3_shared
    if _r3_shared is None or m >= len(_r3_shared):
        _r3_shared = r3_table((1 << max(12, m.bit_length())) - 1)
    return int(_r3_shared[m])


def r3(m: Rational) -> int:
    """#{(x, y, z) in Z^3 : x^2 + y^2 + z^2 = m}; 0 off the non-negative integers."""
    mi = _as_nonneg_int(m)
    if mi is None:
        return 0
    return _table_r3(mi) if mi < R3_TABLE_CAP else _r3(mi)


def r3_direct(m: int) -> int:
    """r3 by a fresh double loop (no table), for cross-checks."""
    return _r3(m)


def r3_table(mmax: int) -> np.ndarray:
    """r3(0..mmax) by enumerating all triples of norm <= mmax."""
    out = np.zeros(mmax + 1, dtype=np.int64)
    b = isqrt(mmax)
    zs = np.arange(b + 1, dtype=np.int64)
    zmult = np.where(zs == 0, 1, 2)
    for x in range(b + 1):
        for y in range(isqrt(mmax - x * x) + 1):
            base = x * x + y * y
            mult = (1 if x == 0 else 2) * (1 if y == 0 else 2)
            k = isqrt(mmax - base) + 1
            out[base + zs[:k] ** 2] += mult * zmult[:k]
    return out


def gauss_r3(m: int) -> int:
    """r3 via class numbers: 12H(4m), 24H(m), r3(m/4) or 0 by residue of m."""
    if m < 1:
        raise ValueError("gauss_r3 needs m >= 1")
    while m % 4 == 0:
        m //= 4
    if m % 4 in (1, 2):
        return int(12 * H(4 * m))
    if m % 8 == 3:
        return int(24 * H(m))
    return 0


def _exact_count(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise InconsistencyError(f"{what} = {value} is not a non-negative integer")
    return value.numerator


def sc7_via_r3(n: int) -> int:
    """(r3(7n + 14) - r3((n + 2)/7)) / 48."""
    value = Fraction(r3(7 * n + 14) - r3(Fraction(n + 2, 7)), 48)
    return _exact_count(value, f"sc7 via r3 at n = {n}")


def sc7_via_r3_hecke(n: int, d_n: int) -> int:
    """The n = -2 (mod 7) variant, driven by r3((n+2)/7) and r3((n+2)/343).

    d_n is the discriminant-like integer attached to n (divisible by 49 here).
    """
    if (n + 2) % 7:
        raise ValueError("needs n = -2 (mod 7)")
    if d_n % 49:
        raise ValueError(f"d_n = {d_n} not divisible by 49")
    chi = kronecker(d_n // 49, 7)
    value = Fraction((7 + chi) * r3(Fraction(n + 2, 7)) - 7 * r3(Fraction(n + 2, 343)), 48)
    return _exact_count(value, f"sc7 via r3 (n = -2 mod 7) at n = {n}")


@dataclass(frozen=True, order=True)
class KClass:
    """Signed-permutation class of an integer triple, keyed by sorted |entries|."""

    rep: tuple[int, int, int]

    @classmethod
    def of(cls, w) -> "KClass":
        return cls(tuple(sorted(abs(int(x)) for x in w)))

    @property
    def norm(self) -> int:
        return sum(x * x for x in self.rep)

    def orbit_size(self) -> int:
        """Number of signed permutations of the representative."""
        signs = 2 ** sum(1 for x in self.rep if x)
        return signs * len(set(permutations(self.rep)))


def k_classes(n: int) -> list[KClass]:
    """Classes of triples with norm 7n + 14 and no entry divisible by 7."""
    m = 7 * n + 14
    out = []
    for x in range(1, isqrt(m // 3) + 1):
        for y in range(x, isqrt((m - x * x) // 2) + 1):
            z2 = m - x * x - y * y
            z = isqrt(z2)
            if z * z == z2 and z >= y and x % 7 and y % 7 and z % 7:
                out.append(KClass((x, y, z)))
    return out


def hecke_r3_recursion_check(m: int, p: int = 7) -> bool:
    """r3(p m) = (p+1) r3(m/p) - ((-m/p)/p) r3(m/p) - p r3(m/p^3) for p | m."""
    if m % p:
        raise ValueError(f"{p} must divide m")
    lhs = r3(p * m)
    rhs = (p + 1) * r3(m // p) - kronecker(-(m // p), p) * r3(m // p) - p * r3(Fraction(m, p**3))
    return lhs == rhs
