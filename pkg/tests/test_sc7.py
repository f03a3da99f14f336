from fractions import Fraction

import pytest

from tcores.abacus import sc_t_core_counts
from tcores.classnum import H
from tcores.sc7 import (
    ALL_SC7_FORMULAS,
    c4_lattice,
    cor2_dirichlet,
    cor3_lift,
    cor_counting,
    cor_one_h,
    dn_nu,
    lemma_div4,
    lifted_index,
    sc7_odd_branches,
    c4_class_number,
    progression_identity,
    sc7_lattice,
    sweep,
    thm_many_h,
)

SC7 = sc_t_core_counts(600, 7)


def test_dn_nu_examples():
    d = dn_nu(1)
    assert (d.D, d.nu, d.ell) == (84, Fraction(1, 4), 0)
    d = dn_nu(3)
    assert (d.D, d.nu) == (35, Fraction(1, 2))
    assert dn_nu(2).domain_gap and dn_nu(2).nu == 0
    assert all(dn_nu(n).nu == 0 for n in range(7, 600, 8))


def test_base_values():
    assert sc7_lattice(0) == 1 and sc7_lattice(1) == 1 and sc7_lattice(2) == 0
    assert thm_many_h(1) == Fraction(1, 4) * (H(84) - 2 * H(21)) == 1
    assert cor_counting(1) == 1 and cor2_dirichlet(1) == 1
    assert c4_class_number(0) == 1 == c4_lattice(0)
    assert c4_class_number(2) == 2 == c4_lattice(2)


def test_every_formula_matches_lattice():
    for name, fn in ALL_SC7_FORMULAS.items():
        assert sweep(fn, range(601), SC7.__getitem__) == [], name


def test_odd_formula_zero_branch():
    assert all(sc7_odd_branches(n) == 0 for n in range(7, 600, 8) if (n + 2) % 7)


def test_case_split_rules():
    for n in range(2, 600, 4):
        assert cor_one_h(n) == sc7_lattice((n + 2) // 4 - 2)
    for n in range(47, 600, 49):
        assert cor_one_h(n) == 7 * sc7_lattice((n + 2) // 49 - 2)
    assert cor_one_h(96) == 7


def test_lifts():
    assert cor3_lift(4, 0, 0, 1) == SC7[4]
    assert lifted_index(1, 1, 0, 1) == 10 and cor3_lift(1, 1, 0, 1) == SC7[1]
    m = lifted_index(1, 0, 1, 3)
    assert m == 3 * 9 * 49 - 2
    assert cor3_lift(1, 0, 1, 3) == sc7_lattice(m)


def test_lemma_div4():
    assert lemma_div4(1, 1, "two") and lemma_div4(1, 1, "seven")
    assert all(lemma_div4(n, 0, w) for n in range(20) for w in ("two", "seven"))
    with pytest.raises(ValueError):
        lemma_div4(1, 1, "three")


def test_progression():
    r = progression_identity(0)
    assert (r.lhs, r.rhs, r.hypotheses) == (2, 2, True)
    gated = progression_identity(4)
    assert not gated.hypotheses and gated.holds


def test_four_core_hypothesis_gate():
    with pytest.raises(ValueError):
        c4_class_number(5)
