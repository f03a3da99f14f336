"""Closed forms for 2-, 3-, 5-cores and self-conjugate 3- and 9-cores.

sc_9 needs L-function coefficients of three elliptic curves of conductor
dividing 108; those come from point counts over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .abacus import sc_t_core_counts, t_core_counts
from .arith import factorize, is_prime, is_square, kronecker, primes_up_to, sigma, sigma5
from .squares import InconsistencyError


def c2_closed(n: int) -> int:
    """1 if n = j(j+1)/2 (j >= 0), else 0."""
    return int(n >= 0 and is_square(8 * n + 1))


def sc3_closed(n: int) -> int:
    """1 if n = j(3j +- 2) (j >= 0), else 0; equivalently 3n + 1 is a square."""
    return int(n >= 0 and is_square(3 * n + 1))


def c5_closed(n: int) -> int:
    return sigma5(n + 1)


@dataclass
class VanishingReport:
    bound: int
    sc3_4n3_zero: bool
    c2_3n2_zero: bool
    both_one: list[int]

    @property
    def passed(self) -> bool:
        return self.sc3_4n3_zero and self.c2_3n2_zero


def c2_sc3_vanishing_progressions(bound: int = 10_000) -> VanishingReport:
    """sc_3(4n+3) = c_2(3n+2) = 0 for n <= bound, plus the n where both are 1."""
    sc3_zero = all(sc3_closed(4 * n + 3) == 0 for n in range(bound + 1))
    c2_zero = all(c2_closed(3 * n + 2) == 0 for n in range(bound + 1))
    both = [n for n in range(bound + 1) if c2_closed(n) and sc3_closed(n)]
    return VanishingReport(bound, sc3_zero, c2_zero, both)


# --- elliptic curves ------------------------------------------------------------


@dataclass(frozen=True)
class EllipticCurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    label: str
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def c4(self) -> int:
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    def bad_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in factorize(self.discriminant))

    def equation_mod(self, x, y, p):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p


CURVES = {
    "36a": EllipticCurveModel("36a", 0, 0, 0, 0, 1),
    "54a": EllipticCurveModel("54a", 1, -1, 0, 12, 8),
    "108a": EllipticCurveModel("108a", 0, 0, 0, 0, 4),
}


def _curve(curve) -> EllipticCurveModel:
    return CURVES[curve] if isinstance(curve, str) else curve


@lru_cache(maxsize=None)
def point_count(curve: EllipticCurveModel, p: int) -> int:
    """#E(F_p) on the given model, point at infinity included."""
    xs = np.arange(p, dtype=np.int64)
    total = 1
    # one y-row at a time keeps memory at O(p)
    for y in range(p):
        total += int(np.count_nonzero(curve.equation_mod(xs, np.int64(y), p) == 0))
    return total


def singular_points(curve: EllipticCurveModel, p: int) -> list[tuple[int, int]]:
    a1, a2, a3, a4 = curve.a1, curve.a2, curve.a3, curve.a4
    out = []
    for x in range(p):
        for y in range(p):
            if curve.equation_mod(x, y, p):
                continue
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
            fy = (2 * y + a1 * x + a3) % p
            if fx == 0 and fy == 0:
                out.append((x, y))
    return out


def reduction_type(curve, p: int) -> str:
    """'good', 'additive', 'split' or 'nonsplit' for the model at p.

    At a node the tangent cone is Y^2 + a1 XY - (3 x0 + a2) X^2; it splits
    over F_p iff T^2 + a1 T - (3 x0 + a2) has a root mod p.
    """
    E = _curve(curve)
    if E.discriminant % p:
        return "good"
    if E.c4 % p == 0:
        return "additive"
    (x0, _), = singular_points(E, p)
    split = any((t * t + E.a1 * t - 3 * x0 - E.a2) % p == 0 for t in range(p))
    return "split" if split else "nonsplit"


_BAD_AP = {"additive": 0, "split": 1, "nonsplit": -1}


def ap(curve, p: int) -> int:
    """a_p = p + 1 - #E(F_p); at bad p this is checked against the reduction type."""
    E = _curve(curve)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    value = p + 1 - point_count(E, p)
    kind = reduction_type(E, p)
    if kind != "good" and value != _BAD_AP[kind]:
        raise InconsistencyError(f"{E.label} at {p}: {kind} reduction but a_p = {value}")
    return value


def an(curve, n: int) -> int:
    """Dirichlet coefficient a_n(E), extended multiplicatively."""
    E = _curve(curve)
    if n < 1:
        raise ValueError("n must be >= 1")
    bad = set(E.bad_primes())
    out = 1
    for p, k in factorize(n) if n > 1 else ():
        a = ap(E, p)
        if p in bad:
            out *= a**k
            continue
        prev, cur = 1, a
        for _ in range(k - 1):
            prev, cur = cur, a * cur - p * prev
        out *= cur
    return out


def sc9_closed(n: int, corrected: bool = False) -> int:
    """sc_9(n) from the three-branch formula for 27 sc_9(n).

    As stated, the n = 2 (mod 4) branch uses sigma(k) and disagrees with the
    lattice counts (it gives -2 at n = 2).  ``corrected=True`` uses 3 sigma(k)
    there, which matches; note 3 sigma(k) = sigma(3n + 10) when 4 does not
    divide 3n + 10, so the corrected third branch extends the second.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    N = 3 * n + 10
    assert N % 3, "3n + 10 is never divisible by 3"
    k = N
    while k % 2 == 0:
        k //= 2
    a36, a54, a108 = an("36a", N), an("54a", N), an("108a", N)
    if n % 4 in (1, 3):
        total = sigma(N) + a36 - a54 - a108
    elif n % 4 == 0:
        total = sigma(N) + a36 - 3 * a54 - a108
    else:
        total = (3 if corrected else 1) * sigma(k) + a36 - 3 * a54 - a108
    if total % 27 or total < 0:
        raise InconsistencyError(f"27 sc_9({n}) evaluates to {total}")
    return total // 27


# --- the sigma / sigma_5 ratio along progressions ----------------------------


@dataclass(frozen=True)
class RatioWitness:
    ell: int
    p: int
    n: int
    ratio: Fraction
    predicted: Fraction


@dataclass
class ProbeReport:
    M: int
    m: int
    bound: int
    witnesses: list[RatioWitness] = field(default_factory=list)
    limits: dict[int, Fraction] = field(default_factory=dict)

    @property
    def distinct_limits(self) -> int:
        return len({self.limits[w.ell] for w in self.witnesses})

    @property
    def conclusive(self) -> bool:
        return self.distinct_limits >= 2

    @property
    def formula_holds(self) -> bool:
        return all(w.ratio == w.predicted for w in self.witnesses)


def sigma_ratio(k: int) -> Fraction:
    return Fraction(sigma(k), sigma5(k))


def sigma5_nonconstancy_probe(M: int, m: int, bound: int = 10_000, max_ells: int = 6) -> ProbeReport:
    """Witnesses that sigma / sigma_5 at 3n + 10 is not constant on n = m (mod M).

    For a prime ell with (ell/5) = -1 and primes p = ell^-1 (mod 3M), the
    index n(p) with 3n(p) + 10 = (3m + 10) p ell stays in the progression and
    sigma/sigma_5 there equals
    r(3m + 10) * (1 + p)/(p + (p/5)) * (1 + ell)/(ell - 1),
    which tends to a limit depending on ell.
    """
    K0 = 3 * m + 10
    rep = ProbeReport(M, m, bound)
    base = sigma_ratio(K0)
    limit_k = (3 * bound + 10) // K0
    ells = [
        ell
        for ell in primes_up_to(limit_k)
        if kronecker(ell, 5) == -1 and (K0 * M) % ell and gcd(ell, 3 * M) == 1
    ][:max_ells]
    for ell in ells:
        rep.limits[ell] = base * Fraction(1 + ell, ell - 1)
        inv = pow(ell, -1, 3 * M)
        for p in primes_up_to(limit_k // ell):
            if p == ell or p % (3 * M) != inv or gcd(p, 5 * K0) != 1:
                continue
            N = K0 * p * ell
            n = (N - 10) // 3
            if n > bound:
                break
            assert (N - 10) % 3 == 0 and n % M == m % M
            predicted = rep.limits[ell] * Fraction(1 + p, p + kronecker(p, 5))
            rep.witnesses.append(RatioWitness(ell, p, n, sigma_ratio(N), predicted))
    return rep


# --- c_3 and sc_5 -------------------------------------------------------------


def c3_sc5_counts(n: int) -> tuple[int, int]:
    return t_core_counts(n, 3)[n], sc_t_core_counts(n, 5)[n]


@dataclass(frozen=True)
class ProgressionSurvivor:
    M: int
    m: int
    relation: str
    k: int

    @property
    def trivial(self) -> bool:
        """k = 0: one side vanishes on the whole progression."""
        return self.k == 0


def c3_sc5_falsification(max_modulus: int = 24, nmax: int = 5000) -> list[ProgressionSurvivor]:
    """Progressions n = m (mod M) on which c_3 is a fixed integer multiple of sc_5
    (or the reverse).

    Progressions where one side vanishes identically come back with k = 0;
    the claim is that no survivor has k != 0.
    """
    c3 = np.array(t_core_counts(nmax, 3), dtype=object)
    s5 = np.array(sc_t_core_counts(nmax, 5), dtype=object)
    survivors = []
    for M in range(1, max_modulus + 1):
        for m in range(M):
            a, b = c3[m::M], s5[m::M]
            for name, x, y in (("c3 = k sc5", a, b), ("sc5 = k c3", b, a)):
                k = _fixed_multiple(x, y)
                if k is not None:
                    survivors.append(ProgressionSurvivor(M, m, name, k))
    return survivors


def _fixed_multiple(x, y) -> int | None:
    """k with x = k y throughout, if one exists."""
    k = None
    for u, v in zip(x, y):
        if v == 0:
            if u != 0:
                return None
            continue
        if u % v:
            return None
        q = u // v
        if k is None:
            k = q
        elif q != k:
            return None
    return 0 if k is None else k
