"""Abaci, residue lists and lattice counts of t-cores.

A t-core is encoded three ways here:

* its abacus: bead counts (m_0, ..., m_{t-1}) on t rods, beads top-justified;
* its residue list N = [n_0, ..., n_{t-1}] with sum 0, read off the
  extended t-residue diagram;
* the partition itself.

The list side turns counting into a lattice-point problem, since
``|p| = t|N|^2/2 + B.N`` with ``B = [0, 1, ..., t-1]``.

Bead convention: structure number ``B_j = lam_j - j + s`` sits in row
``B_j // t + 1`` (1-indexed) and column ``B_j % t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from .partitions import Partition, PartitionLike, as_partition, is_t_core


class NotACoreError(ValueError):
    pass


# --- abaci -----------------------------------------------------------------


def structure_numbers(p: PartitionLike) -> list[int]:
    parts = as_partition(p).parts
    s = len(parts)
    return [lam - j + s for j, lam in enumerate(parts, start=1)]


def bead_positions(p: PartitionLike, t: int) -> list[tuple[int, int]]:
    """(row, column) of the bead for each structure number, rows from 1."""
    return [(b // t + 1, b % t) for b in structure_numbers(p)]


def is_top_justified(p: PartitionLike, t: int) -> bool:
    """Every rod holds its beads in rows 1..m_j with no gaps."""
    rows: dict[int, set[int]] = {}
    for r, c in bead_positions(p, t):
        rows.setdefault(c, set()).add(r)
    return all(occupied == set(range(1, len(occupied) + 1)) for occupied in rows.values())


@dataclass(frozen=True)
class Abacus:
    t: int
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(m) for m in self.counts)
        if self.t < 2 or len(counts) != self.t:
            raise ValueError(f"abacus needs t >= 2 rods and t counts, got {self.t}, {counts}")
        if any(m < 0 for m in counts):
            raise ValueError(f"negative bead count in {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def beads(self) -> int:
        return sum(self.counts)

    def is_canonical(self) -> bool:
        return self.counts[0] == 0


def rotate(a: Abacus) -> Abacus:
    """(m_0, ..., m_{t-1}) -> (m_{t-1} + 1, m_0, ..., m_{t-2}).

    Adds one bead; the encoded partition is unchanged (an extra zero part).
    """
    c = a.counts
    return Abacus(a.t, (c[-1] + 1,) + c[:-1])


def unrotate(a: Abacus) -> Abacus:
    c = a.counts
    if c[0] == 0:
        raise ValueError("cannot unrotate an abacus with an empty rod 0")
    return Abacus(a.t, c[1:] + (c[0] - 1,))


def canonical(a: Abacus) -> Abacus:
    while a.counts[0]:
        a = unrotate(a)
    return a


def abacus_from_partition(p: PartitionLike, t: int, canonicalize: bool = True) -> Abacus:
    """Bead counts per rod.  Only meaningful as an encoding when p is a t-core."""
    counts = [0] * t
    for _, c in bead_positions(p, t):
        counts[c] += 1
    a = Abacus(t, tuple(counts))
    return canonical(a) if canonicalize else a


def partition_from_abacus(a: Abacus) -> Partition:
    """Read back the t-core whose top-justified abacus has these counts."""
    t, s = a.t, a.beads
    positions = sorted((t * row + col for col, m in enumerate(a.counts) for row in range(m)), reverse=True)
    return Partition(tuple(b + j - s for j, b in enumerate(positions, start=1)))


# --- residue lists -----------------------------------------------------------


def list_size(N: Sequence[int]) -> int:
    """t|N|^2/2 + B.N; integral because sum(N) = 0 makes |N|^2 even."""
    t = len(N)
    sq = sum(x * x for x in N)
    return (t * sq) // 2 + sum(j * x for j, x in enumerate(N))


def is_valid_list(N: Sequence[int]) -> bool:
    return len(N) >= 2 and sum(N) == 0


def list_from_partition(p: PartitionLike, t: int) -> tuple[int, ...]:
    """Residue list of a t-core from its extended t-residue diagram.

    Row j ends in the exposed cell (j, lam_j), with lam_j = 0 for rows past
    the partition (the column-0 cells).  That cell carries label
    (lam_j - j) mod t and lies in region (lam_j - j) // t + 1; n_l is the
    largest region holding an exposed cell labelled l.  Rows s+1..s+t
    already expose every label, and regions only drop further down.
    """
    p = as_partition(p)
    if not is_t_core(p, t):
        raise NotACoreError(f"{p} is not a {t}-core")
    parts = p.parts
    best: dict[int, int] = {}
    for j in range(1, len(parts) + t + 1):
        lam = parts[j - 1] if j <= len(parts) else 0
        label, region = (lam - j) % t, (lam - j) // t + 1
        if label not in best or region > best[label]:
            best[label] = region
    return tuple(best[l] for l in range(t))


def abacus_from_list(N: Sequence[int], s: int | None = None) -> Abacus:
    """Abacus with s beads: rod beta_l holds n_l + alpha_l beads, l + s = alpha_l t + beta_l.

    With s = None the smallest s avoiding negative counts is used and the
    result is then canonicalized.
    """
    t = len(N)
    if not is_valid_list(N):
        raise ValueError(f"residue list must have t >= 2 entries summing to 0: {N}")

    def counts_for(s):
        counts = [0] * t
        for l, n in enumerate(N):
            alpha, beta = divmod(l + s, t)
            counts[beta] = n + alpha
        return counts

    if s is None:
        s = t * max(0, -min(N))
        return canonical(Abacus(t, tuple(counts_for(s))))
    counts = counts_for(s)
    if any(m < 0 for m in counts):
        raise ValueError(f"{s} beads are too few for list {tuple(N)}")
    return Abacus(t, tuple(counts))


def list_from_abacus(a: Abacus) -> tuple[int, ...]:
    t, s = a.t, a.beads
    N = [0] * t
    for l in range(t):
        alpha, beta = divmod(l + s, t)
        N[l] = a.counts[beta] - alpha
    return tuple(N)


def partition_from_list(N: Sequence[int]) -> Partition:
    return partition_from_abacus(abacus_from_list(N))


def is_antisymmetric(N: Sequence[int]) -> bool:
    t = len(N)
    return all(N[l] == -N[t - 1 - l] for l in range(t))


def sc_list_from_free(free: Sequence[int], t: int) -> tuple[int, ...]:
    """Antisymmetric list from its first floor(t/2) entries."""
    half = t // 2
    if len(free) != half:
        raise ValueError(f"need {half} free entries for t = {t}")
    middle = (0,) if t % 2 else ()
    return tuple(free) + middle + tuple(-x for x in reversed(free))


# --- lattice enumeration -------------------------------------------------------
#
# With s_j = t n_j + j the size form becomes sum(s_j^2) = 2t|p| + sum(j^2),
# which gives exact integer pruning bounds for every coordinate.


def iter_lists(nmax: int, t: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (N, size) for every residue list with size <= nmax."""
    budget = 2 * t * nmax + sum(j * j for j in range(t))
    N = [0] * t

    def rec(j, used, partial):
        if j == t - 1:
            last = -partial
            s = t * last + j
            if used + s * s <= budget:
                N[j] = last
                yield tuple(N), (used + s * s - (budget - 2 * t * nmax)) // (2 * t)
            return
        # every remaining coordinate contributes at least 0; the last one is
        # forced, so only the running total is pruned here
        room = budget - used
        r = isqrt(room)
        lo = -((r + j) // t)
        hi = (r - j) // t
        for x in range(lo, hi + 1):
            s = t * x + j
            if s * s <= room:
                N[j] = x
                yield from rec(j + 1, used + s * s, partial + x)

    yield from rec(0, 0, 0)


def residue_lists(n: int, t: int) -> list[tuple[int, ...]]:
    return sorted(N for N, size in iter_lists(n, t) if size == n)


def _sc_weights(t: int) -> list[int]:
    # size of an antisymmetric list = sum_j (t x_j^2 - (t - 1 - 2j) x_j)
    return [t - 1 - 2 * j for j in range(t // 2)]


def _sc_term_range(t: int, w: int, nmax: int) -> range:
    # t x^2 - w x <= nmax
    r = isqrt(4 * t * nmax + w * w) + 1
    return range(-(r // (2 * t)) - 1, r // (2 * t) + 2)


def iter_sc_lists(nmax: int, t: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (N, size) for every antisymmetric residue list with size <= nmax."""
    weights = _sc_weights(t)
    options = []
    for w in weights:
        opts = [(x, t * x * x - w * x) for x in _sc_term_range(t, w, nmax)]
        options.append([(x, q) for x, q in opts if q <= nmax])
    free = [0] * len(weights)

    def rec(j, total):
        if j == len(weights):
            yield sc_list_from_free(free, t), total
            return
        for x, q in options[j]:
            if total + q <= nmax:
                free[j] = x
                yield from rec(j + 1, total + q)

    yield from rec(0, 0)


def sc_residue_lists(n: int, t: int) -> list[tuple[int, ...]]:
    return sorted(N for N, size in iter_sc_lists(n, t) if size == n)


@lru_cache(maxsize=64)
def _core_counts(nmax: int, t: int) -> tuple[int, ...]:
    counts = [0] * (nmax + 1)
    for _, size in iter_lists(nmax, t):
        counts[size] += 1
    return tuple(counts)


@lru_cache(maxsize=64)
def _sc_counts(nmax: int, t: int) -> tuple[int, ...]:
    # antisymmetric lists have independent free coordinates, so the size
    # histogram is the truncated convolution of one histogram per coordinate
    acc = np.zeros(nmax + 1, dtype=np.int64)
    acc[0] = 1
    for w in _sc_weights(t):
        xs = np.array(list(_sc_term_range(t, w, nmax)), dtype=np.int64)
        q = t * xs * xs - w * xs
        q = q[q <= nmax]
        nxt = np.zeros_like(acc)
        for shift in np.unique(q):
            mult = int(np.count_nonzero(q == shift))
            nxt[shift:] += mult * acc[: nmax + 1 - shift]
        acc = nxt
    return tuple(int(x) for x in acc)


def _rounded(n: int) -> int:
    # share cache entries between nearby requests
    return max(64, 1 << (max(n, 1) - 1).bit_length())


def t_core_counts(nmax: int, t: int) -> list[int]:
    """[c_t(0), ..., c_t(nmax)] from the residue-list lattice."""
    if t < 2:
        raise ValueError("t must be >= 2")
    return list(_core_counts(_rounded(nmax), t)[: nmax + 1])


def sc_t_core_counts(nmax: int, t: int) -> list[int]:
    """[sc_t(0), ..., sc_t(nmax)] from antisymmetric residue lists."""
    if t < 2:
        raise ValueError("t must be >= 2")
    return list(_sc_counts(_rounded(nmax), t)[: nmax + 1])


def count_t_cores_lattice(n: int, t: int) -> int:
    return t_core_counts(n, t)[n] if n >= 0 else 0


def count_sc_t_cores_lattice(n: int, t: int) -> int:
    return sc_t_core_counts(n, t)[n] if n >= 0 else 0


# --- self-conjugate 7-core families --------------------------------------------

FAMILY_TYPES = ("I", "II", "III", "IV", "V", "VI")


def _family_counts(kind: str, a: int, b: int, r: int) -> tuple[int, ...]:
    table = {
        "I": (0, a, b, r, 2 * r - b, 2 * r - a, 2 * r),
        "II": (0, 2 * r + 1, a, b, r, 2 * r - b, 2 * r - a),
        "III": (0, a, 2 * r + 1 - a, 2 * r + 1, b, r, 2 * r - b),
        "IV": (0, a, b, 2 * r + 1 - b, 2 * r + 1 - a, 2 * r + 1, r),
        "V": (0, r + 1, 2 * r + 2, a, b, 2 * r + 1 - b, 2 * r + 1 - a),
        "VI": (0, a, r + 1, 2 * r + 2 - a, 2 * r + 2, b, 2 * r + 1 - b),
    }
    return table[kind]


# upper bounds (a_max, b_max) keeping every rod non-negative
_FAMILY_RANGES = {
    "I": lambda r: (2 * r, 2 * r),
    "II": lambda r: (2 * r, 2 * r),
    "III": lambda r: (2 * r + 1, 2 * r),
    "IV": lambda r: (2 * r + 1, 2 * r + 1),
    "V": lambda r: (2 * r + 1, 2 * r + 1),
    "VI": lambda r: (2 * r + 2, 2 * r + 1),
}

# (x, y, z) with x^2 + y^2 + z^2 = 7n + 14, one formula per family
_FAMILY_TRIPLES = {
    "I": lambda a, b, r: (7 * r + 3, 7 * r + 2 - 7 * a, 7 * r + 1 - 7 * b),
    "II": lambda a, b, r: (7 * r + 4, 7 * r + 2 - 7 * a, 7 * r + 1 - 7 * b),
    "III": lambda a, b, r: (7 * r + 5, 7 * r + 4 - 7 * a, 7 * r + 1 - 7 * b),
    "IV": lambda a, b, r: (7 * r + 6, 7 * r + 5 - 7 * a, 7 * r + 4 - 7 * b),
    "V": lambda a, b, r: (7 * r + 8, 7 * r + 5 - 7 * a, 7 * r + 4 - 7 * b),
    "VI": lambda a, b, r: (7 * r + 9, 7 * r + 8 - 7 * a, 7 * r + 4 - 7 * b),
}


@dataclass(frozen=True)
class ScAbacusFamily:
    """One abacus from the six parametrized shapes of self-conjugate 7-cores."""

    kind: str
    a: int
    b: int
    r: int

    def __post_init__(self):
        if self.kind not in FAMILY_TYPES:
            raise ValueError(f"unknown family type {self.kind!r}")
        a_max, b_max = _FAMILY_RANGES[self.kind](self.r)
        if self.r < 0 or not (0 <= self.a <= a_max and 0 <= self.b <= b_max):
            raise ValueError(f"parameters out of range for type {self.kind}: {self}")

    def abacus(self) -> Abacus:
        return Abacus(7, _family_counts(self.kind, self.a, self.b, self.r))

    def residue_list(self) -> tuple[int, ...]:
        return list_from_abacus(self.abacus())

    def partition(self) -> Partition:
        return partition_from_abacus(self.abacus())

    @property
    def size(self) -> int:
        return list_size(self.residue_list())


def iter_sc7_families(nmax: int) -> Iterator[ScAbacusFamily]:
    """All family instances whose partition has size <= nmax."""
    for kind in FAMILY_TYPES:
        r = 0
        # the leading triple entry 7r + c (c >= 3) alone bounds r
        while (7 * r + 3) ** 2 <= 7 * nmax + 14:
            a_max, b_max = _FAMILY_RANGES[kind](r)
            for a, b in product(range(a_max + 1), range(b_max + 1)):
                fam = ScAbacusFamily(kind, a, b, r)
                if fam.size <= nmax:
                    yield fam
            r += 1


def sc7_families(n: int) -> list[ScAbacusFamily]:
    return [fam for fam in iter_sc7_families(n) if fam.size == n]


def family_to_triple(fam: ScAbacusFamily) -> tuple[int, int, int]:
    return _FAMILY_TRIPLES[fam.kind](fam.a, fam.b, fam.r)


def sc7_list_to_triple(N: Sequence[int]) -> tuple[int, int, int]:
    """(7n_0 - 3, 7n_1 - 2, 7n_2 - 1) for an antisymmetric 7-list.

    Squares sum to 7|p| + 14 because 3^2 + 2^2 + 1^2 = 14 completes the
    square in the size form.
    """
    if len(N) != 7 or not is_antisymmetric(N):
        raise ValueError(f"not an antisymmetric 7-list: {N}")
    return (7 * N[0] - 3, 7 * N[1] - 2, 7 * N[2] - 1)


def sc7_triple_to_list(w: Sequence[int]) -> tuple[int, ...]:
    """Inverse of sc7_list_to_triple up to signs and order of the triple."""
    slots: dict[int, int] = {}
    for x in w:
        for idx, c in enumerate((3, 2, 1)):
            if (x + c) % 7 == 0:
                slots[idx] = (x + c) // 7
            elif (-x + c) % 7 == 0:
                slots[idx] = (-x + c) // 7
    if sorted(slots) != [0, 1, 2]:
        raise ValueError(f"triple {tuple(w)} does not have residues +-3, +-2, +-1 mod 7")
    return sc_list_from_free([slots[0], slots[1], slots[2]], 7)
