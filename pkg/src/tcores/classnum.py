"""Hurwitz class numbers and friends.

H(D) is the number of SL2(Z)-classes of positive definite forms
[a, b, c] with b^2 - 4ac = -D, counting the class of a multiple of
x^2 + y^2 with weight 1/2, a multiple of x^2 + xy + y^2 with weight 1/3,
and everything else with weight 1.  Internally we carry 12*H(D), which is
always an integer.

Two independent routes are provided: ``hurwitz`` enumerates the reduced
forms of one discriminant, ``HurwitzTable`` sweeps all reduced forms up to a
bound at once.  ``dirichlet_class_number`` and ``cohen_lift`` are analytic
formulas checked against both.
"""

from __future__ import annotations

import struct
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from pathlib import Path
from typing import Iterator, Union

import numpy as np

from .arith import divisors, is_fundamental, kronecker, kronecker_table, mobius, sigma

Rational = Union[int, Fraction]

# Constant term used for the class-number generating series.  Not a count.
HURWITZ_AT_ZERO = Fraction(-1, 12)


def _as_positive_int(D: Rational) -> int | None:
    """D as an int when it is a positive integer with -D a discriminant."""
    D = Fraction(D)
    if D.denominator != 1:
        return None
    D = D.numerator
    if D <= 0 or D % 4 not in (0, 3):
        return None
    return D


def reduced_forms(D: int) -> Iterator[tuple[int, int, int]]:
    """Reduced positive definite forms of discriminant -D, primitive or not.

    Reduced: |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    """
    if D <= 0 or D % 4 not in (0, 3):
        return
    for a in range(1, isqrt(D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (b < 0 and c == a):
                continue
            yield a, b, c


def _weight12(a: int, b: int, c: int) -> int:
    if a == b == c:
        return 4
    if b == 0 and a == c:
        return 6
    return 12


def hurwitz12(D: int, p: int | None = None) -> int:
    """12*H(D) by direct enumeration; restrict to p-primitive forms if p given."""
    total = 0
    for a, b, c in reduced_forms(D):
        if p is not None and gcd(gcd(a, b), c) % p == 0:
            continue
        total += _weight12(a, b, c)
    return total


def hurwitz(D: Rational) -> Fraction:
    """H(D); zero unless D is a positive integer with -D = 0, 1 (mod 4)."""
    Dint = _as_positive_int(D)
    if Dint is None:
        return Fraction(0)
    return Fraction(hurwitz12(Dint), 12)


def hurwitz_p_primitive(p: int, D: Rational) -> Fraction:
    Dint = _as_positive_int(D)
    if Dint is None:
        return Fraction(0)
    return Fraction(hurwitz12(Dint, p), 12)


class HurwitzTable:
    """12*H(D) (and optionally 12*H_p(D)) for all 0 <= D <= max_d.

    Built by sweeping every reduced form with 4ac - b^2 <= max_d: for fixed
    (a, b) the admissible c form an arithmetic progression, so each (a, b)
    is one strided numpy update.  Read-only after construction.
    """

    def __init__(self, max_d: int, primes: tuple[int, ...] = ()):
        self.max_d = max_d
        self.primes = tuple(primes)
        self.h12 = np.zeros(max_d + 1, dtype=np.int64)
        self.hp12 = {p: np.zeros(max_d + 1, dtype=np.int64) for p in self.primes}
        self._build()

    def _build(self):
        X = self.max_d
        for a in range(1, isqrt(X // 3) + 1):
            for b in range(-a + 1, a + 1):
                c_lo = a + 1 if b < 0 else a
                d_lo = 4 * a * c_lo - b * b
                if d_lo > X:
                    continue
                step = 4 * a
                self.h12[d_lo : X + 1 : step] += 12
                # the special forms only occur at c = a
                if c_lo == a and (b == 0 or b == a):
                    self.h12[d_lo] -= 12 - _weight12(a, b, a)
                for p in self.primes:
                    if a % p or b % p:
                        self.hp12[p][d_lo : X + 1 : step] += 12
                        if c_lo == a and (b == 0 or b == a):
                            self.hp12[p][d_lo] -= 12 - _weight12(a, b, a)
                        continue
                    # p | a, p | b: keep only c not divisible by p
                    self.hp12[p][d_lo : X + 1 : step] += 12
                    c0 = c_lo + (-c_lo) % p
                    d0 = 4 * a * c0 - b * b
                    if d0 <= X:
                        self.hp12[p][d0 : X + 1 : step * p] -= 12
                    if c_lo == a and (b == 0 or b == a):
                        # p | a so c = a is itself excluded; nothing to fix
                        pass

    def __contains__(self, D) -> bool:
        return 0 <= D <= self.max_d

    def h12_at(self, D: int) -> int:
        return int(self.h12[D])

    def H(self, D: Rational) -> Fraction:
        Dint = _as_positive_int(D)
        if Dint is None:
            return Fraction(0)
        if Dint > self.max_d:
            raise KeyError(f"D = {Dint} beyond table bound {self.max_d}")
        return Fraction(int(self.h12[Dint]), 12)

    def Hp(self, p: int, D: Rational) -> Fraction:
        Dint = _as_positive_int(D)
        if Dint is None:
            return Fraction(0)
        if Dint > self.max_d:
            raise KeyError(f"D = {Dint} beyond table bound {self.max_d}")
        return Fraction(int(self.hp12[p][Dint]), 12)


# On-disk cache: 8-byte magic, little-endian uint64 max_d, then max_d + 1
# little-endian int64 values of 12*H(D) for D = 0..max_d.
CACHE_MAGIC = b"HURW12\x00\x01"


def save_hurwitz_cache(path: str | Path, table: HurwitzTable) -> None:
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<Q", table.max_d))
        fh.write(table.h12.astype("<i8").tobytes())


def load_hurwitz_cache(path: str | Path) -> HurwitzTable:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != CACHE_MAGIC:
            raise ValueError(f"{path}: not a Hurwitz cache file")
        (max_d,) = struct.unpack("<Q", fh.read(8))
        data = np.frombuffer(fh.read(), dtype="<i8")
    if len(data) != max_d + 1:
        raise ValueError(f"{path}: expected {max_d + 1} entries, found {len(data)}")
    table = HurwitzTable.__new__(HurwitzTable)
    table.max_d, table.primes, table.hp12 = max_d, (), {}
    table.h12 = data.astype(np.int64)
    return table


_lock = threading.Lock()
_shared: HurwitzTable | None = None


def shared_table(max_d: int) -> HurwitzTable:
    """Process-wide table covering at least max_d (with H_7), grown by doubling."""
    global _shared
    table = _shared
    if table is not None and max_d <= table.max_d:
        return table
    with _lock:
        if _shared is None or max_d > _shared.max_d:
            size = 1 << max(12, max_d.bit_length())
            _shared = HurwitzTable(size, primes=(7,))
        return _shared


def H(D: Rational) -> Fraction:
    """Memoized H(D) through the shared table."""
    Dint = _as_positive_int(D)
    if Dint is None:
        return Fraction(0)
    return shared_table(Dint).H(Dint)


def H7(D: Rational) -> Fraction:
    Dint = _as_positive_int(D)
    if Dint is None:
        return Fraction(0)
    return shared_table(Dint).Hp(7, Dint)


# --- analytic formulas --------------------------------------------------------


def dirichlet_class_number(D: int) -> Fraction:
    """H(D) for fundamental -D via -(1/D) * sum_{m<D} (-D/m) m."""
    if D <= 0 or not is_fundamental(-D):
        raise ValueError(f"-{D} is not a fundamental discriminant")
    chi = kronecker_table(-D, D - 1)
    return Fraction(-int(np.dot(chi, np.arange(D, dtype=np.int64))), D)


def cohen_sum(D: int, f: int) -> int:
    """sum_{d | f} mu(d) (-D/d) sigma(f/d)."""
    return sum(mobius(d) * kronecker(-D, d) * sigma(f // d) for d in divisors(f))


def cohen_lift(D: int, f: int, h: Fraction | None = None) -> Fraction:
    """H(D f^2) from H(D) for fundamental -D."""
    if D <= 0 or not is_fundamental(-D):
        raise ValueError(f"-{D} is not a fundamental discriminant")
    if f < 1:
        raise ValueError("f must be >= 1")
    base = hurwitz(D) if h is None else h
    return base * cohen_sum(D, f)


@dataclass(frozen=True)
class CRDelta:
    r: int
    delta: int
    defining_sum: int
    closed_form: int

    @property
    def agrees(self) -> bool:
        return self.defining_sum == self.closed_form


def c_r_delta(r: int, delta: int) -> CRDelta:
    """Difference of consecutive 7-power divisor sums versus 7^(r-1) (7 + (delta/7))."""
    if r < 1:
        raise ValueError("r must be >= 1")
    defining = cohen_sum(delta, 7**r) - cohen_sum(delta, 7 ** (r - 1))
    closed = 7 ** (r - 1) * (7 + kronecker(delta, 7))
    return CRDelta(r, delta, defining, closed)
