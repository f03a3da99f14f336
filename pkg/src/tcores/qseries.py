"""Truncated q-series with exact rational coefficients.

A ``QSeries`` holds coefficients for exponents 0..precision as integer
numerators over one shared denominator.  Every operator states how it
moves the precision; nothing ever reads past it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Callable, Iterable, Sequence

import numpy as np

from .arith import kronecker
from .classnum import HURWITZ_AT_ZERO, shared_table

_INT64_SAFE = 1 << 62


def _to_array(values: Sequence[int]) -> np.ndarray:
    vals = [int(v) for v in values]
    if vals and max(abs(v) for v in vals) >= _INT64_SAFE:
        return np.array(vals, dtype=object)
    return np.array(vals, dtype=np.int64)


def _maxabs(a: np.ndarray) -> int:
    if len(a) == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


class QSeries:
    """sum_{k=0}^{precision} (num[k] / den) q^k."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = np.asarray(num)
        if num.dtype != object and num.dtype != np.int64:
            num = num.astype(np.int64)
        if num.ndim != 1 or len(num) == 0:
            raise ValueError("need at least the constant coefficient")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = reduce(gcd, (int(x) for x in num if x), den) if den != 1 else 1
        if g > 1:
            num = num // g
            den //= g
        if num.dtype == object and _maxabs(num) < _INT64_SAFE:
            num = num.astype(np.int64)
        self.num = num
        self.den = den

    # --- construction ---------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, precision: int | None = None) -> "QSeries":
        fr = [Fraction(c) for c in coeffs]
        if precision is not None:
            fr = (fr + [Fraction(0)] * (precision + 1))[: precision + 1]
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in fr), 1)
        return cls(_to_array([c.numerator * (den // c.denominator) for c in fr]), den)

    @classmethod
    def zero(cls, precision: int) -> "QSeries":
        return cls(np.zeros(precision + 1, dtype=np.int64))

    @classmethod
    def monomial(cls, k: int, precision: int, c=1) -> "QSeries":
        coeffs = [0] * (precision + 1)
        if k <= precision:
            coeffs[k] = c
        return cls.from_coeffs(coeffs)

    # --- access ---------------------------------------------------------------

    @property
    def precision(self) -> int:
        return len(self.num) - 1

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.precision:
            raise IndexError(f"exponent {k} beyond precision {self.precision}")
        return Fraction(int(self.num[k]), self.den)

    def coeffs(self) -> list[Fraction]:
        return [Fraction(int(x), self.den) for x in self.num]

    def is_integral(self) -> bool:
        return self.den == 1

    def truncate(self, precision: int) -> "QSeries":
        if precision > self.precision:
            raise ValueError(f"cannot raise precision {self.precision} to {precision}")
        return QSeries(self.num[: precision + 1].copy(), self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.den == other.den
            and len(self.num) == len(other.num)
            and all(int(a) == int(b) for a, b in zip(self.num, other.num))
        )

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs()[:8])
        return f"QSeries([{head}{', ...' if self.precision >= 8 else ''}], precision={self.precision})"

    def first_difference(self, other: "QSeries") -> int | None:
        """Smallest exponent where the two series differ (common precision only)."""
        n = min(self.precision, other.precision) + 1
        a = _wide(self.num[:n], other.den) * other.den
        b = _wide(other.num[:n], self.den) * self.den
        diff = np.flatnonzero(a != b)
        return int(diff[0]) if len(diff) else None

    # --- ring operations ------------------------------------------------------

    def _aligned(self, other: "QSeries"):
        n = min(self.precision, other.precision) + 1
        den = self.den * other.den // gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        a = _wide(self.num[:n], 2 * fa) * fa
        b = _wide(other.num[:n], 2 * fb) * fb
        return a, b, den

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return self + QSeries.monomial(0, self.precision, other)
        a, b, den = self._aligned(other)
        return QSeries(a + b, den)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries(_wide(self.num, c.numerator) * c.numerator, self.den * c.denominator)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        n = min(self.precision, other.precision)
        a, b = self.num[: n + 1], other.num[: n + 1]
        nz_a, nz_b = np.flatnonzero(a), np.flatnonzero(b)
        if len(nz_b) > len(nz_a):
            a, b, nz_a, nz_b = b, a, nz_b, nz_a
        bound = _maxabs(a) * _maxabs(b) * max(1, len(nz_b))
        dtype = np.int64 if bound < _INT64_SAFE and a.dtype != object and b.dtype != object else object
        a, b = a.astype(dtype), b.astype(dtype)
        if dtype == np.int64 and len(nz_b) > 64:
            out = np.convolve(a, b)[: n + 1]
        else:
            out = np.zeros(n + 1, dtype=dtype)
            for i in nz_b:
                out[i:] += b[i] * a[: n + 1 - i]
        return QSeries(out, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = QSeries.monomial(0, self.precision)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- dump -----------------------------------------------------------------

    def dump(self) -> str:
        """One line per exponent: ``exponent<TAB>numerator/denominator``."""
        lines = []
        for k, c in enumerate(self.coeffs()):
            lines.append(f"{k}\t{c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "QSeries":
        coeffs = []
        for k, line in enumerate(text.strip().splitlines()):
            exp, frac = line.split("\t")
            if int(exp) != k:
                raise ValueError(f"line {k}: exponent {exp} out of order")
            coeffs.append(Fraction(frac))
        return cls.from_coeffs(coeffs)


def _wide(a: np.ndarray, factor: int = 1) -> np.ndarray:
    """``a`` itself, or as Python ints if multiplying by ``factor`` could overflow."""
    if a.dtype == object or _maxabs(a) * abs(factor) < _INT64_SAFE:
        return a
    return a.astype(object)


# --- operators ----------------------------------------------------------------


def u_op(f: QSeries, d: int) -> QSeries:
    """f | U_d: coefficient n becomes c(dn).  Precision N -> N // d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return QSeries(f.num[:: d].copy(), f.den)


def v_op(f: QSeries, d: int, cap: int | None = None) -> QSeries:
    """f | V_d: c(n) moves to exponent dn.  Precision N -> N d (or ``cap`` if smaller)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    prec = f.precision * d
    if cap is not None:
        prec = min(prec, cap)
    out = np.zeros(prec + 1, dtype=f.num.dtype)
    src = f.num[: prec // d + 1]
    out[:: d] = src
    return QSeries(out, f.den)


def hecke_t_p2(f: QSeries, p: int, lam: int = 1) -> QSeries:
    """Weight lam + 1/2 Hecke operator T(p^2).  Precision N -> N // p^2.

    c(p^2 n) + (((-1)^lam n)/p) p^(lam-1) c(n) + p^(2 lam - 1) c(n/p^2)
    """
    p2 = p * p
    prec = f.precision // p2
    period = p if p % 2 else 8
    chi = np.array([kronecker(r, p) for r in range(period)], dtype=np.int64)
    ns = np.arange(prec + 1, dtype=np.int64)
    sgn = -1 if lam % 2 else 1
    num = _wide(f.num, 4 * p ** (2 * lam))
    out = num[:: p2][: prec + 1].copy()
    out = out + chi[(sgn * ns) % period] * p ** (lam - 1) * num[: prec + 1]
    tail = num[: prec // p2 + 1] * p ** (2 * lam - 1)
    out[:: p2] = out[:: p2] + tail
    return QSeries(out, f.den)


# --- eta quotients ------------------------------------------------------------


def _pentagonal(limit: int) -> list[tuple[int, int]]:
    """(exponent, sign) of prod_{n>=1}(1 - q^n) up to ``limit``."""
    out = [(0, 1)]
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 > limit:
            break
        s = -1 if k % 2 else 1
        out.append((e1, s))
        e2 = k * (3 * k + 1) // 2
        if e2 <= limit:
            out.append((e2, s))
        k += 1
    return out


@dataclass(frozen=True)
class EtaQuotient:
    """q^q_offset * prod eta(m tau)^e over ``factors`` = ((m, e), ...)."""

    factors: tuple[tuple[int, int], ...]
    q_offset: Fraction = Fraction(0)

    @property
    def total_offset(self) -> Fraction:
        return Fraction(self.q_offset) + sum((Fraction(m * e, 24) for m, e in self.factors), Fraction(0))


def eta_expand(eq: EtaQuotient, N: int) -> QSeries:
    """Exact expansion of an eta quotient to precision N.

    Positive powers multiply by the sparse pentagonal series at q^m, negative
    powers divide by it; both are O(N sqrt(N)) per factor.
    """
    off = eq.total_offset
    if off.denominator != 1:
        raise ValueError(f"eta quotient has non-integral q-offset {off}")
    shift = int(off)
    if shift < 0:
        raise ValueError(f"eta quotient starts at q^{shift}; negative exponents not supported")
    coeffs = [0] * (N + 1)
    if shift <= N:
        coeffs[shift] = 1
    for m, e in eq.factors:
        if m < 1:
            raise ValueError("eta multipliers must be positive")
        pent = [(m * x, s) for x, s in _pentagonal(N // m)]
        for _ in range(abs(e)):
            if e > 0:
                new = [0] * (N + 1)
                for x, s in pent:
                    for i in range(N + 1 - x):
                        c = coeffs[i]
                        if c:
                            new[i + x] += s * c
                coeffs = new
            else:
                for i in range(N + 1):
                    acc = coeffs[i]
                    for x, s in pent[1:]:
                        if x > i:
                            break
                        acc -= s * coeffs[i - x]
                    coeffs[i] = acc
    return QSeries(_to_array(coeffs))


# generating functions of 2-cores and self-conjugate 3-cores
C2_QUOTIENT = EtaQuotient(((2, 2), (1, -1)), Fraction(-1, 8))
SC3_QUOTIENT = EtaQuotient(((2, 2), (3, 1), (12, 1), (1, -1), (4, -1), (6, -1)), Fraction(-1, 3))


# --- theta and class-number series ------------------------------------------


def theta(N: int) -> QSeries:
    """sum over n in Z of q^(n^2)."""
    out = np.zeros(N + 1, dtype=np.int64)
    out[0] = 1
    k = np.arange(1, isqrt(N) + 1)
    out[k * k] = 2
    return QSeries(out)


def theta_cubed(N: int) -> QSeries:
    t = theta(N)
    return t * t * t


def hseries(N: int, table: Callable[[int], Fraction] | None = None) -> QSeries:
    """sum_D H(D) q^D with the constant term set to -1/12.

    ``table`` replaces H (used to inject faults in self-tests).
    """
    if table is None:
        h12 = shared_table(N).h12[: N + 1].copy()
        h12[0] = int(12 * HURWITZ_AT_ZERO)
        return QSeries(h12, 12)
    return QSeries.from_coeffs([HURWITZ_AT_ZERO] + [table(D) for D in range(1, N + 1)])


def h12_series(h: QSeries) -> QSeries:
    """H_{1,2} = H|U_2 - 2 H|V_2.  Precision N -> N // 2."""
    hu = u_op(h, 2)
    return hu - v_op(h, 2, cap=hu.precision).scale(2)


def central_rhs(h: QSeries) -> QSeries:
    """(1/4) H_{1,2} | (U_14 - U_2 V_7).  Needs h to precision 28 N for output N."""
    g = h12_series(h)
    a = u_op(g, 14)
    b = v_op(u_op(g, 2), 7, cap=a.precision)
    return (a - b).scale(Fraction(1, 4))


def sc7_series(N: int) -> QSeries:
    """S = sum sc_7(n) q^(n+2) from lattice counts."""
    from .abacus import sc_t_core_counts

    coeffs = [0] * (N + 1)
    if N >= 2:
        counts = sc_t_core_counts(N - 2, 7)
        for n in range(N - 1):
            coeffs[n + 2] = int(counts[n])
    return QSeries(_to_array(coeffs))


@dataclass(frozen=True)
class IdentityReport:
    name: str
    precision: int
    first_mismatch: int | None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None


def _compare(name: str, lhs: QSeries, rhs: QSeries, precision: int) -> IdentityReport:
    if lhs.precision < precision or rhs.precision < precision:
        raise ValueError(f"{name}: operands fall short of precision {precision}")
    k = lhs.truncate(precision).first_difference(rhs.truncate(precision))
    if k is None:
        return IdentityReport(name, precision, None)
    return IdentityReport(name, precision, k, lhs[k], rhs[k])


def verify_central_identity(N: int, table: Callable[[int], Fraction] | None = None) -> IdentityReport:
    """S against (1/4) H_{1,2}|(U_14 - U_2 V_7), exponents 0..N."""
    if N < 12:
        raise ValueError("precision must be at least 12")
    h = hseries(28 * N, table)
    return _compare("central", sc7_series(N), central_rhs(h), N)


def verify_theta_cubed(N: int) -> IdentityReport:
    """Theta^3 = 12 H_{1,2} | U_2 to precision N."""
    rhs = u_op(h12_series(hseries(4 * N)), 2).scale(12)
    return _compare("theta_cubed", theta_cubed(N), rhs, N)


def verify_hecke_eigen(p: int, N: int) -> IdentityReport:
    """Theta^3 | T(p^2) = (p + 1) Theta^3 to precision N."""
    t3 = theta_cubed(N * p * p)
    return _compare(f"hecke_{p}", hecke_t_p2(t3, p), t3.truncate(N).scale(p + 1), N)


def verify_three_square_coefficients(N: int) -> IdentityReport:
    """Coefficient k of the central right side equals (r3(7k) - r3(k/7)) / 48."""
    from .squares import r3_table

    rhs = central_rhs(hseries(28 * N))
    r = r3_table(7 * N)
    want = [Fraction(int(r[7 * k]) - (int(r[k // 7]) if k % 7 == 0 else 0), 48) for k in range(N + 1)]
    return _compare("three_squares", QSeries.from_coeffs(want), rhs, N)
