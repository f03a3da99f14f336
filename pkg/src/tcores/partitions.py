"""Partitions, hook lengths and brute-force core counts.

This is the ground-truth layer: counts here come from literally walking
every partition of n and checking hook lengths, so it is kept deliberately
small (see ``ORACLE_BOUND``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

ORACLE_BOUND = 70


class OracleBoundError(ValueError):
    """Raised when a brute-force request exceeds the configured bound."""


@dataclass(frozen=True, order=True)
class Partition:
    """A partition as a weakly decreasing tuple of positive parts.

    Zero parts are accepted on input and stripped.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        object.__setattr__(self, "parts", tuple(x for x in parts if x > 0))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __repr__(self):
        return f"Partition{self.parts}"

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells (j, k) of the Ferrers-Young diagram, 1-indexed, row-major."""
        for j, lam in enumerate(self.parts, start=1):
            for k in range(1, lam + 1):
                yield j, k

    def is_self_conjugate(self) -> bool:
        return conjugate(self) == self


PartitionLike = Union[Partition, Sequence[int]]


def as_partition(p: PartitionLike) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


def conjugate(p: PartitionLike) -> Partition:
    """Transpose: part k of the result is the number of cells in column k."""
    parts = as_partition(p).parts
    if not parts:
        return Partition()
    return Partition(tuple(sum(1 for lam in parts if lam >= k) for k in range(1, parts[0] + 1)))


def hook_table(p: PartitionLike) -> dict[tuple[int, int], int]:
    """Map each cell (j, k) to lam_j + lam'_k - k - j + 1."""
    p = as_partition(p)
    col = conjugate(p).parts
    return {(j, k): p.parts[j - 1] + col[k - 1] - k - j + 1 for j, k in p.cells()}


def hook_lengths(p: PartitionLike) -> list[int]:
    return list(hook_table(p).values())


def is_t_core(p: PartitionLike, t: int) -> bool:
    if t < 1:
        raise ValueError("t must be >= 1")
    return all(h % t for h in hook_table(p).values())


def _check_bound(n: int, bound: int | None):
    bound = ORACLE_BOUND if bound is None else bound
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > bound:
        raise OracleBoundError(f"n = {n} exceeds the brute-force oracle bound {bound}")


def _partition_tuples(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partition_tuples(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int, bound: int | None = None) -> Iterator[Partition]:
    """Yield every partition of n once, in lexicographically descending order."""
    _check_bound(n, bound)
    for parts in _partition_tuples(n, n):
        yield Partition(parts)


def partition_count_euler(n: int) -> int:
    """p(n) by Euler's pentagonal recurrence; used only as a self-check."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def count_t_cores_brute(n: int, t: int, bound: int | None = None) -> int:
    return sum(1 for p in enumerate_partitions(n, bound) if is_t_core(p, t))


def count_sc_t_cores_brute(n: int, t: int, bound: int | None = None) -> int:
    return sum(
        1 for p in enumerate_partitions(n, bound) if p.is_self_conjugate() and is_t_core(p, t)
    )


def brute_core_table(nmax: int, ts: Iterable[int], bound: int | None = None) -> dict:
    """Counts c_t(n) and sc_t(n) for all n <= nmax and t in ts in one pass.

    Returns ``{"core": {t: [..]}, "sc": {t: [..]}}``.  Each partition's hook
    lengths are computed once and reused for every t.
    """
    ts = list(ts)
    core = {t: [0] * (nmax + 1) for t in ts}
    sc = {t: [0] * (nmax + 1) for t in ts}
    for n in range(nmax + 1):
        for p in enumerate_partitions(n, bound):
            hooks = set(hook_table(p).values())
            selfconj = conjugate(p) == p
            for t in ts:
                if all(h % t for h in hooks):
                    core[t][n] += 1
                    if selfconj:
                        sc[t][n] += 1
    return {"core": core, "sc": sc}
