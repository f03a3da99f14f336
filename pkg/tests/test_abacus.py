from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcores.abacus import (
    Abacus,
    FAMILY_TYPES,
    ScAbacusFamily,
    abacus_from_list,
    abacus_from_partition,
    canonical,
    count_sc_t_cores_lattice,
    count_t_cores_lattice,
    family_to_triple,
    is_antisymmetric,
    iter_sc7_families,
    list_from_abacus,
    list_from_partition,
    list_size,
    partition_from_abacus,
    partition_from_list,
    rotate,
    sc7_families,
    sc7_list_to_triple,
    sc7_triple_to_list,
    sc_residue_lists,
    sc_t_core_counts,
    structure_numbers,
)
from tcores.arith import sigma5
from tcores.partitions import enumerate_partitions, is_t_core


def test_structure_numbers():
    assert structure_numbers((3, 2, 1)) == [5, 3, 1]
    assert structure_numbers((1,)) == [1]  # with s = length
    assert structure_numbers((4, 4, 2, 1)) == [7, 6, 3, 1]


def test_abacus_of_staircase():
    assert abacus_from_partition((3, 2, 1), 4, canonicalize=False).counts == (0, 2, 0, 1)
    assert abacus_from_partition((), 5).counts == (0,) * 5


def test_rotate():
    a = Abacus(7, (0, 1, 2, 3, 4, 5, 6))
    assert rotate(a).counts == (7, 0, 1, 2, 3, 4, 5)
    assert rotate(Abacus(7, (0,) * 7)).counts == (1, 0, 0, 0, 0, 0, 0)
    assert canonical(rotate(a)) == a


def test_residue_lists_small():
    assert 1 in list_from_partition((3, 2, 1), 4)
    assert list_from_partition((), 6) == (0,) * 6
    assert list_size(list_from_partition((1,), 7)) == 1


def test_round_trip_all_four_cores():
    for n in range(26):
        for p in enumerate_partitions(n):
            if is_t_core(p, 4):
                N = list_from_partition(p, 4)
                assert list_size(N) == n
                assert partition_from_list(N) == p
                assert partition_from_abacus(abacus_from_list(N)) == p


def test_lattice_counts():
    assert count_t_cores_lattice(0, 5) == 1
    assert count_t_cores_lattice(2, 4) == 2
    assert [count_t_cores_lattice(n, 5) for n in range(201)] == [sigma5(n + 1) for n in range(201)]
    assert count_sc_t_cores_lattice(1, 7) == 1
    assert count_sc_t_cores_lattice(0, 9) == 1


def test_sc_lists_are_antisymmetric():
    for n in range(40):
        for N in sc_residue_lists(n, 7):
            assert is_antisymmetric(N) and list_size(N) == n
            assert partition_from_list(N).is_self_conjugate()


def test_families_cover_lattice():
    counts = [0] * 201
    for fam in iter_sc7_families(200):
        counts[fam.size] += 1
    assert counts == sc_t_core_counts(200, 7)
    assert len(sc7_families(1)) == 1


def test_family_base_cases():
    first = ScAbacusFamily(FAMILY_TYPES[0], 0, 0, 0)
    second = ScAbacusFamily(FAMILY_TYPES[1], 0, 0, 0)
    assert sorted(abs(x) for x in family_to_triple(first)) == [1, 2, 3]
    assert first.size == 0
    assert sorted(abs(x) for x in family_to_triple(second)) == [1, 2, 4]
    assert second.size == 1


def test_no_family_has_beads_four_mod_seven():
    assert all(fam.abacus().beads % 7 != 4 for fam in iter_sc7_families(150))


def test_family_rejects_out_of_range():
    with pytest.raises(ValueError):
        ScAbacusFamily(FAMILY_TYPES[0], 99, 0, 0)


def test_triple_round_trip():
    for n in range(60):
        for N in sc_residue_lists(n, 7):
            w = sc7_list_to_triple(N)
            assert sum(x * x for x in w) == 7 * n + 14
            assert sc7_triple_to_list(w) == tuple(N)


@settings(max_examples=200)
@given(st.integers(2, 9), st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_rotation_is_invisible(t, raw):
    a = canonical(Abacus(t, tuple(raw[:t])))
    assert a.is_canonical()
    assert partition_from_abacus(rotate(a)) == partition_from_abacus(a)
    assert canonical(rotate(rotate(a))) == a
    N = list_from_abacus(a)
    assert sum(N) == 0 and list_size(N) == partition_from_abacus(a).size
