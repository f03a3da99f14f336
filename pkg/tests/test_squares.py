from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcores.abacus import sc_t_core_counts
from tcores.sc7 import dn_nu
from tcores.squares import (
    KClass,
    gauss_r3,
    hecke_r3_recursion_check,
    k_classes,
    r3,
    r3_direct,
    r3_table,
    sc7_via_r3,
    sc7_via_r3_hecke,
)

SC7 = sc_t_core_counts(2000, 7)


def test_r3_values():
    assert r3(0) == 1 and r3(1) == 6 and r3(21) == 48
    assert r3(Fraction(3, 7)) == 0 and r3(-1) == 0
    assert r3(7) == 0 and r3(14) == 48


def test_gauss_small():
    assert gauss_r3(1) == 6
    assert gauss_r3(3) == 8
    assert gauss_r3(7) == 0


def test_table_matches_direct():
    tab = r3_table(3000)
    assert all(int(tab[m]) == r3_direct(m) for m in range(3001))


@settings(max_examples=150)
@given(st.integers(1, 200_000))
def test_gauss_random(m):
    assert gauss_r3(m) == r3(m)


def test_sc7_from_three_squares():
    assert sc7_via_r3(0) == 1 and sc7_via_r3(1) == 1
    assert [sc7_via_r3(n) for n in range(2001)] == SC7


def test_hecke_branch_agrees():
    ns = [n for n in range(2001) if (n + 2) % 7 == 0]
    assert ns[0] == 5
    for n in ns:
        assert sc7_via_r3_hecke(n, dn_nu(n).D) == sc7_via_r3(n)


def test_hecke_branch_preconditions():
    with pytest.raises(ValueError):
        sc7_via_r3_hecke(4, 84)


def test_k_classes():
    assert k_classes(1) == [KClass((1, 2, 4))]
    assert [len(k_classes(n)) for n in range(301)] == SC7[:301]
    assert KClass.of((-4, 1, 2)) == KClass((1, 2, 4))
    assert KClass((1, 2, 4)).orbit_size() == 48


@pytest.mark.parametrize("m", [7, 21, 7**3, 7 * 50, 7**2 * 11])
def test_hecke_recursion(m):
    assert hecke_r3_recursion_check(m)
