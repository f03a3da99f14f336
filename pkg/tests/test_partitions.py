import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcores.partitions import (
    OracleBoundError,
    Partition,
    conjugate,
    count_sc_t_cores_brute,
    count_t_cores_brute,
    enumerate_partitions,
    hook_lengths,
    hook_table,
    is_t_core,
    partition_count_euler,
)

STAIR = Partition((3, 2, 1))


def test_conjugate_examples():
    assert conjugate(STAIR) == STAIR
    assert conjugate(Partition()) == Partition()
    assert conjugate(Partition((4, 1))) == Partition((2, 1, 1, 1))


def test_zero_parts_are_stripped():
    assert Partition((2, 1, 0, 0)).parts == (2, 1)


@pytest.mark.parametrize("bad", [(1, 2), (2, -1)])
def test_rejects_malformed(bad):
    with pytest.raises(ValueError):
        Partition(bad)


def test_hook_tables():
    assert hook_table(STAIR) == {(1, 1): 5, (1, 2): 3, (1, 3): 1, (2, 1): 3, (2, 2): 1, (3, 1): 1}
    assert hook_table((1,)) == {(1, 1): 1}
    assert hook_table((2, 2)) == {(1, 1): 3, (1, 2): 2, (2, 1): 2, (2, 2): 1}


def test_staircase_cores():
    assert [t for t in range(1, 10) if not is_t_core(STAIR, t)] == [1, 3, 5]
    assert all(is_t_core((), t) for t in range(1, 8))


def test_enumeration_counts():
    assert list(enumerate_partitions(0)) == [Partition()]
    assert sum(1 for _ in enumerate_partitions(4)) == 5
    assert sum(1 for _ in enumerate_partitions(10)) == 42
    for n in range(25):
        assert sum(1 for _ in enumerate_partitions(n)) == partition_count_euler(n)


def test_brute_counts():
    assert count_sc_t_cores_brute(1, 7) == 1
    assert all(count_t_cores_brute(0, t) == 1 for t in range(2, 8))
    assert count_t_cores_brute(2, 4) == 2


def test_oracle_bound_enforced():
    with pytest.raises(OracleBoundError):
        count_t_cores_brute(500, 3)


@settings(max_examples=200)
@given(st.lists(st.integers(1, 15), max_size=12))
def test_hook_multiset_transpose_invariant(parts):
    p = Partition(tuple(sorted(parts, reverse=True)))
    assert sorted(hook_lengths(p)) == sorted(hook_lengths(conjugate(p)))
    assert conjugate(conjugate(p)) == p
    assert len(hook_lengths(p)) == p.size
