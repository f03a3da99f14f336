"""Positive definite binary quadratic forms, genera, and the map phi.

phi sends a self-conjugate 7-core of n to a form of discriminant
-28n - 56 via residue list -> triple (x, y, z) -> vectors (m, n) with
m x n = (x, y, z) -> the form |m u + n v|^2.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from .abacus import list_from_partition, sc7_list_to_triple
from .arith import factorize, fundamental_part, valuation
from .classnum import reduced_forms
from .partitions import PartitionLike, as_partition, is_t_core


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 or (abs(b) != a and a != c)

    def primitive_part(self) -> "QuadForm":
        g = self.content
        return QuadForm(self.a // g, self.b // g, self.c // g)

    def scaled(self, g: int) -> "QuadForm":
        return QuadForm(g * self.a, g * self.b, g * self.c)

    def __call__(self, u: int, v: int) -> int:
        return self.a * u * u + self.b * u * v + self.c * v * v

    def transform(self, p: int, q: int, r: int, s: int) -> "QuadForm":
        """f(p u + q v, r u + s v)."""
        a, b, c = self.a, self.b, self.c
        return QuadForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


def reduce(f: QuadForm) -> QuadForm:
    """Reduced representative of the SL2(Z)-class of a positive definite form."""
    if not f.is_positive_definite():
        raise ValueError(f"{f} is not positive definite")
    a, b, c = f.a, f.b, f.c
    while True:
        if not -a < b <= a:
            # translate u -> u + k v so that b lands in (-a, a]
            k = -((a - b) // (2 * a))
            c = c - k * b + k * k * a
            b = b - 2 * k * a
            continue
        if a > c:
            a, b, c = c, -b, a
            continue
        if b < 0 and (-b == a or a == c):
            b = -b
        return QuadForm(a, b, c)


def class_list(D: int) -> list[QuadForm]:
    """All reduced forms of discriminant D < 0, primitive or not."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    return [QuadForm(a, b, c) for a, b, c in reduced_forms(-D)]


def primitive_class_list(D: int) -> list[QuadForm]:
    return [f for f in class_list(D) if f.content == 1]


def principal_form(D: int) -> QuadForm:
    """[1, 0, -D/4] or [1, 1, (1 - D)/4]."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


# --- genera -------------------------------------------------------------------


def _represented_units_mod(f: QuadForm, q: int, k: int) -> tuple[int, ...]:
    mod = q**k
    u = np.arange(mod, dtype=np.int64)
    U, V = np.meshgrid(u, u, indexing="ij")
    vals = (f.a % mod * U % mod * U + f.b % mod * U % mod * V + f.c % mod * V % mod * V) % mod
    vals = np.unique(vals)
    return tuple(int(x) for x in vals if x % q)


@dataclass(frozen=True)
class GenusLabel:
    """Units mod |D| represented by a form, stored one prime power at a time.

    For a form with content g the label is that of its primitive part
    (discriminant D / g^2) together with g.
    """

    disc: int
    content: int
    fingerprint: tuple[tuple[int, tuple[int, ...]], ...]

    def digest(self) -> str:
        return hashlib.sha256(repr((self.disc, self.content, self.fingerprint)).encode()).hexdigest()[:16]

    def residues(self) -> set[int]:
        """The represented units mod |disc / content^2| as one set (CRT)."""
        acc = [(0, 1)]
        for m, units in self.fingerprint:
            acc = [(_crt(x, M, y, m), M * m) for x, M in acc for y in units]
        return {x for x, _ in acc}


def _crt(x: int, M: int, y: int, m: int) -> int:
    # x mod M, y mod m, coprime moduli
    t = ((y - x) * pow(M, -1, m)) % m
    return x + M * t


@lru_cache(maxsize=1 << 14)
def genus_of(f: QuadForm) -> GenusLabel:
    """Exact represented-unit fingerprint, via CRT over prime powers of |D|."""
    g = f.content
    p = f.primitive_part()
    D = p.disc
    fp = tuple((q**k, _represented_units_mod(p, q, k)) for q, k in factorize(D))
    return GenusLabel(f.disc, g, fp)


def represented_units_box(f: QuadForm) -> set[int]:
    """Units mod |D| hit by f(u, v), 0 <= u, v <= |D| (slow reference)."""
    D = abs(f.disc)
    u = np.arange(D + 1, dtype=np.int64)
    U, V = np.meshgrid(u, u, indexing="ij")
    vals = np.unique((f.a * U * U + f.b * U * V + f.c * V * V) % D)
    return {int(x) for x in vals if gcd(int(x), D) == 1}


def genera(D: int) -> dict[GenusLabel, list[QuadForm]]:
    """Primitive classes of discriminant D grouped by genus."""
    out: dict[GenusLabel, list[QuadForm]] = {}
    for f in primitive_class_list(D):
        out.setdefault(genus_of(f), []).append(f)
    return out


# --- primitivity ----------------------------------------------------------------


def conductor(D: int) -> int:
    """f with D = Delta f^2, Delta a fundamental discriminant."""
    return fundamental_part(D)[1]


def p_primitive(f: QuadForm, p: int) -> bool:
    return f.content % p != 0


def p_totally_imprimitive(f: QuadForm, p: int) -> bool:
    """p-part of the content equals the p-part of the conductor of disc(f)."""
    return valuation(f.content, p) == valuation(conductor(f.disc), p)


# --- triples to forms -----------------------------------------------------------


def _cross(m: Sequence[int], n: Sequence[int]) -> tuple[int, int, int]:
    return (
        m[1] * n[2] - m[2] * n[1],
        m[2] * n[0] - m[0] * n[2],
        m[0] * n[1] - m[1] * n[0],
    )


@dataclass(frozen=True)
class VectorPair:
    m: tuple[int, int, int]
    n: tuple[int, int, int]

    def cross(self) -> tuple[int, int, int]:
        return _cross(self.m, self.n)


def complete_primitive_vector(w: Sequence[int]) -> VectorPair:
    """(m, n) with m x n = w for primitive w.

    Column operations (extended Euclid) turn w into (1, 0, 0) while
    building a unimodular U with w U = e_1; columns 2 and 3 of U span the
    lattice orthogonal to w, and their cross product is +-w.
    """
    w = [int(x) for x in w]
    if len(w) != 3 or gcd(gcd(w[0], w[1]), w[2]) != 1:
        raise ValueError(f"{tuple(w)} is not a primitive integer 3-vector")
    U = [[int(i == j) for j in range(3)] for i in range(3)]
    r = list(w)

    def colop(dst, src, k):
        # column dst -= k * column src
        r[dst] -= k * r[src]
        for row in U:
            row[dst] -= k * row[src]

    def swap(i, j):
        r[i], r[j] = r[j], r[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    while sum(1 for x in r if x) > 1 or r[0] == 0:
        nz = [i for i in range(3) if r[i]]
        piv = min(nz, key=lambda i: (abs(r[i]), i))
        if piv != 0:
            swap(0, piv)
        for j in (1, 2):
            if r[j]:
                colop(j, 0, r[j] // r[0])
    m = tuple(U[i][1] for i in range(3))
    n = tuple(U[i][2] for i in range(3))
    pair = VectorPair(m, n)
    if pair.cross() != tuple(w):
        pair = VectorPair(n, m)
    assert pair.cross() == tuple(w), (w, pair)
    return pair


def pair_to_form(pair: VectorPair) -> QuadForm:
    m, n = pair.m, pair.n
    return QuadForm(sum(x * x for x in m), 2 * sum(x * y for x, y in zip(m, n)), sum(y * y for y in n))


def triple_to_form(w: Sequence[int]) -> QuadForm:
    """Reduced form of discriminant -4|w|^2 attached to the triple w.

    An imprimitive w = g w' maps to g times the form of w' (this keeps the
    discriminant at -4|w|^2).
    """
    g = gcd(gcd(int(w[0]), int(w[1])), int(w[2]))
    if g == 0:
        raise ValueError("zero triple")
    prim = [int(x) // g for x in w]
    return reduce(pair_to_form(complete_primitive_vector(prim))).scaled(g)


def phi(p: PartitionLike) -> QuadForm:
    lam = as_partition(p)
    if not lam.is_self_conjugate() or not is_t_core(lam, 7):
        raise ValueError(f"{lam.parts} is not a self-conjugate 7-core")
    return triple_to_form(sc7_list_to_triple(list_from_partition(lam, 7)))


@dataclass(frozen=True)
class PhiRecord:
    partition: tuple[int, ...]
    abacus: tuple[int, ...]
    residue_list: tuple[int, ...]
    triple: tuple[int, int, int]
    form: QuadForm


def phi_records(n: int) -> list[PhiRecord]:
    """Every stage of phi for each self-conjugate 7-core of n."""
    from .abacus import abacus_from_list, partition_from_list, sc_residue_lists

    out = []
    for N in sorted(sc_residue_lists(n, 7)):
        lam = partition_from_list(N)
        w = sc7_list_to_triple(N)
        out.append(PhiRecord(lam.parts, abacus_from_list(N).counts, tuple(N), w, triple_to_form(w)))
    return out


# --- the main theorem ---------------------------------------------------------


@dataclass
class MainTheoremReport:
    n: int
    disc: int
    sc7: int
    vacuous: bool
    class_count: int
    image_count: int
    genus_hashes: list[str]
    fibers: dict[str, int]
    nu: str
    r_statement: int
    expected_fiber: str
    r_genus: int | None
    proof_fiber: str | None
    single_genus: bool
    non_principal: bool
    no_zero_coordinate: bool
    seven_primitive: bool
    two_totally_imprimitive: bool
    fibers_equal: bool
    fiber_matches_statement: bool
    fiber_matches_proof: bool
    surjective: bool
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if self.vacuous:
            return True
        return (
            self.single_genus
            and self.non_principal
            and self.seven_primitive
            and self.two_totally_imprimitive
            and self.fibers_equal
            and self.fiber_matches_statement
        )

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def verify_theorem_main(n: int) -> MainTheoremReport:
    """Check the genus / primitivity / fiber description of phi at n."""
    from .abacus import sc_residue_lists
    from .sc7 import dn_nu

    D = -28 * n - 56
    lists = sc_residue_lists(n, 7)
    triples = [sc7_list_to_triple(N) for N in lists]
    images = Counter(triple_to_form(w) for w in triples)
    classes = class_list(D)
    info = dn_nu(n)
    expected = info.nu * 2**info.r_count
    notes = []
    if info.domain_gap:
        notes.append("n + 2 is a power of 4")

    labels = {genus_of(f) for f in images}
    single = len(labels) == 1
    principal = genus_of(principal_form(D))
    non_principal = True
    for lab in labels:
        prim_disc = lab.disc // lab.content**2
        if lab == principal or lab.fingerprint == genus_of(principal_form(prim_disc)).fingerprint:
            non_principal = False

    # genus count of the primitive discriminant that the images live in
    r_genus, proof_fiber, surjective = None, None, False
    if single and images:
        lab = next(iter(labels))
        g = lab.content
        gen = genera(lab.disc // g**2)
        r_genus = len(gen).bit_length()  # 2^(r-1) genera
        proof_fiber = Fraction(2) ** (r_genus - 2)
        same = {f.scaled(g) for f in gen.get(GenusLabel(lab.disc // g**2, 1, lab.fingerprint), [])}
        surjective = same == set(images)

    fibers = sorted(set(images.values()))
    return MainTheoremReport(
        n=n,
        disc=D,
        sc7=len(lists),
        vacuous=not lists,
        class_count=len(classes),
        image_count=len(images),
        genus_hashes=sorted(lab.digest() for lab in labels),
        fibers={str(f): k for f, k in sorted(images.items())},
        nu=str(info.nu),
        r_statement=info.r_count,
        expected_fiber=str(expected),
        r_genus=r_genus,
        proof_fiber=None if proof_fiber is None else str(proof_fiber),
        single_genus=single,
        non_principal=non_principal,
        no_zero_coordinate=all(all(x % 7 for x in w) for w in triples),
        seven_primitive=all(p_primitive(f, 7) for f in images),
        two_totally_imprimitive=all(p_totally_imprimitive(f, 2) for f in images),
        fibers_equal=len(fibers) <= 1,
        fiber_matches_statement=all(k == expected for k in fibers),
        fiber_matches_proof=proof_fiber is not None and all(k == proof_fiber for k in fibers),
        surjective=surjective,
        notes=notes,
    )
