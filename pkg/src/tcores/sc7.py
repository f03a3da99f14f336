"""Closed forms for sc_7(n), the number of self-conjugate 7-cores of n.

Every formula here has an evaluator; the lattice count from ``abacus`` is
the reference they are compared against (``sc7_lattice``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .abacus import count_sc_t_cores_lattice, count_t_cores_lattice, sc_t_core_counts
import numpy as np

from .arith import (
    divisors,
    is_squarefree,
    kronecker,
    kronecker_table,
    mobius,
    num_prime_divisors,
    sigma,
)
from .classnum import H, H7
from .squares import sc7_via_r3


def sc7_lattice(n: int) -> int:
    return count_sc_t_cores_lattice(n, 7) if n >= 0 else 0


def c4_lattice(n: int) -> int:
    return count_t_cores_lattice(n, 4) if n >= 0 else 0


@dataclass(frozen=True)
class DnNu:
    """Resolved discriminant D_n and weight nu_n for sc_7(n).

    ``ell`` is maximal with n = -2 (mod 4^ell); ``base`` is (n+2)/4^ell - 2,
    the index the n = 2 (mod 4) case reduces to.  ``domain_gap`` marks
    n + 2 a power of 4, where that base is -1 rather than a natural number;
    the formulas are then evaluated at -1 literally (it lands in the
    nu = 0 branch).
    """

    n: int
    D: int
    nu: Fraction
    ell: int
    base: int
    r_count: int
    domain_gap: bool


def dn_nu(n: int) -> DnNu:
    if n < 0:
        raise ValueError("n must be non-negative")
    m, ell = n + 2, 0
    if n % 4 == 2:
        while m % 4 == 0:
            m //= 4
            ell += 1
    base = m - 2
    if base % 4 in (0, 1):
        D, nu = 28 * m, Fraction(1, 4)
    elif base % 8 == 3:
        D, nu = 7 * m, Fraction(1, 2)
    else:
        D, nu = 7 * m, Fraction(0)
    return DnNu(n, D, nu, ell, base, num_prime_divisors(7 * m), base < 0)


def sc7_odd_branches(n: int) -> Fraction:
    """Three-branch class-number formula for odd n not = -2 (mod 7)."""
    if n < 1 or n % 2 == 0 or (n + 2) % 7 == 0:
        raise ValueError("needs odd positive n with n != -2 (mod 7)")
    if n % 4 == 1:
        return H(28 * n + 56) / 4
    if n % 8 == 3:
        return H(7 * n + 14) / 2
    return Fraction(0)


def thm_many_h(n: int) -> Fraction:
    """sc_7 as a combination of four class numbers (H of non-integers is 0)."""
    return (
        H(28 * n + 56)
        - H(Fraction(4 * n + 8, 7))
        - 2 * H(7 * n + 14)
        + 2 * H(Fraction(n + 2, 7))
    ) / 4


def cor_counting(n: int) -> Fraction:
    """nu_n * H_7(D_n)."""
    d = dn_nu(n)
    return d.nu * H7(d.D)


def cor_one_h(n: int) -> Fraction:
    """Single-class-number case split; the 2 (mod 4) and -2 (mod 343) cases recurse.

    Recursion can step to n = -1 (from n + 2 a power of 4); sc_7 of a
    negative number is 0.
    """
    if n < 0:
        return Fraction(0)
    if n % 4 == 2:
        return cor_one_h((n + 2) // 4 - 2)
    d = dn_nu(n)
    if (n + 2) % 7:
        return d.nu * H(d.D)
    if (n + 2) % 343:
        return (7 + kronecker(d.D // 49, 7)) * d.nu * H(Fraction(d.D, 49))
    return 7 * cor_one_h((n + 2) // 49 - 2)


def dirichlet_sum(D: int) -> int:
    """sum_{m=1}^{D-1} (-D/m) m."""
    if D < 2:
        return 0
    chi = kronecker_table(-D, D - 1)
    return int(np.dot(chi, np.arange(D, dtype=np.int64)))


def cor2_dirichlet(n: int) -> Fraction:
    """sc_7(n) for squarefree n + 2 from character sums."""
    if not is_squarefree(n + 2):
        raise ValueError(f"n + 2 = {n + 2} is not squarefree")
    d = dn_nu(n)
    if (n + 2) % 7:
        return -d.nu / d.D * dirichlet_sum(d.D)
    D0 = d.D // 49
    return -d.nu / d.D * 49 * (7 + kronecker(D0, 7)) * dirichlet_sum(D0)


def lift_factor(n: int, f: int) -> int:
    """sum_{d | f} mu(d) (-D_n/d) sigma(f/d)."""
    D = dn_nu(n).D
    return sum(mobius(d) * kronecker(-D, d) * sigma(f // d) for d in divisors(f))


def lifted_index(n: int, ell: int, r: int, f: int) -> int:
    return (n + 2) * 4**ell * f * f * 49**r - 2


def cor3_lift(n: int, ell: int, r: int, f: int) -> Fraction:
    """Closed form for sc_7((n+2) 4^ell f^2 49^r - 2) from sc_7(n)."""
    if not is_squarefree(n + 2):
        raise ValueError(f"n + 2 = {n + 2} is not squarefree")
    if f < 1 or ell < 0 or r < 0:
        raise ValueError("need ell, r >= 0 and f >= 1")
    if f % 2 == 0 or f % 7 == 0:
        raise ValueError(f"gcd(f, 14) must be 1, got f = {f}")
    return 7**r * cor_counting(n) * lift_factor(n, f)


def c4_class_number(n: int) -> Fraction:
    """c_4(n) = H(32n + 20)/2 when 8n + 5 is squarefree."""
    if not is_squarefree(8 * n + 5):
        raise ValueError(f"8n + 5 = {8 * n + 5} is not squarefree")
    return H(32 * n + 20) / 2


@dataclass(frozen=True)
class ProgressionResult:
    n: int
    lhs: int  # 2 sc_7(8n + 1)
    rhs: int  # c_4(7n + 2)
    hypotheses: bool  # n != 4 (mod 7) and 56n + 21 squarefree

    @property
    def holds(self) -> bool:
        return not self.hypotheses or self.lhs == self.rhs


def progression_identity(n: int) -> ProgressionResult:
    hyp = n % 7 != 4 and is_squarefree(56 * n + 21)
    return ProgressionResult(n, 2 * sc7_lattice(8 * n + 1), c4_lattice(7 * n + 2), hyp)


def lemma_div4(n: int, ell: int, which: str) -> bool:
    """sc_7((n+2) 4^ell - 2) = sc_7(n), or with 49^ell and factor 7^ell."""
    if which == "two":
        return sc7_lattice((n + 2) * 4**ell - 2) == sc7_lattice(n)
    if which == "seven":
        return sc7_lattice((n + 2) * 49**ell - 2) == 7**ell * sc7_lattice(n)
    raise ValueError(f"which must be 'two' or 'seven', got {which!r}")


# --- sweeps -------------------------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    n: int
    expected: object
    got: object


def sweep(evaluate, ns, reference=None) -> list[Mismatch]:
    """Compare ``evaluate(n)`` with the lattice sc_7(n) (or ``reference``)."""
    ns = list(ns)
    if reference is None and ns:
        table = sc_t_core_counts(max(ns), 7)
        reference = table.__getitem__
    bad = []
    for n in ns:
        want, got = reference(n), evaluate(n)
        if got != want:
            bad.append(Mismatch(n, want, got))
    return bad


ALL_SC7_FORMULAS = {
    "thm_many_h": thm_many_h,
    "cor_counting": cor_counting,
    "cor_one_h": cor_one_h,
    "sc7_via_r3": sc7_via_r3,
}
