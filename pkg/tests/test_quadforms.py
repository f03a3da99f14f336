import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcores.abacus import sc_t_core_counts
from tcores.quadforms import (
    QuadForm,
    class_list,
    complete_primitive_vector,
    genera,
    genus_of,
    p_primitive,
    p_totally_imprimitive,
    phi,
    phi_records,
    primitive_class_list,
    principal_form,
    reduce,
    represented_units_box,
    triple_to_form,
    verify_theorem_main,
)


def test_reduction_examples():
    assert reduce(QuadForm(1, 0, 21)) == QuadForm(1, 0, 21)
    assert reduce(QuadForm(21, 0, 1)) == QuadForm(1, 0, 21)
    assert reduce(QuadForm(2, 2, 11)) == QuadForm(2, 2, 11)
    assert reduce(QuadForm(2, -2, 2)) == QuadForm(2, 2, 2)


def test_reduce_rejects_indefinite():
    with pytest.raises(ValueError):
        reduce(QuadForm(1, 3, 1))


def test_class_lists():
    assert len(primitive_class_list(-84)) == 4
    assert class_list(-3) == [QuadForm(1, 1, 1)]
    assert class_list(-4) == [QuadForm(1, 0, 1)]
    assert principal_form(-84) == QuadForm(1, 0, 21)
    assert principal_form(-3) == QuadForm(1, 1, 1)


def test_genus_labels():
    g = genera(-84)
    assert len(g) == 4 and all(len(v) == 1 for v in g.values())
    assert genus_of(QuadForm(2, 2, 11)) != genus_of(QuadForm(1, 0, 21))
    assert represented_units_box(QuadForm(2, 2, 11)) != represented_units_box(QuadForm(1, 0, 21))
    assert genus_of(QuadForm(3, 0, 7)) not in {genus_of(f) for f in primitive_class_list(-84) if f != QuadForm(3, 0, 7)}


@pytest.mark.parametrize("D", [-84, -56, -140, -231, -420, -1092, -23, -47])
def test_fingerprint_matches_box(D):
    for f in primitive_class_list(D):
        assert genus_of(f).residues() == represented_units_box(f)


def test_primitivity():
    assert p_primitive(QuadForm(1, 0, 21), 7)
    doubled = QuadForm(2, 2, 2).scaled(2)  # disc -48 = -3 * 4^2
    assert p_totally_imprimitive(doubled, 2)
    assert not p_totally_imprimitive(QuadForm(1, 0, 3), 2)  # disc -12, conductor 2


@pytest.mark.parametrize("w", [(1, 0, 0), (1, 2, 4), (3, 1, 5), (-7, 12, 30), (0, 5, 7)])
def test_completion(w):
    pair = complete_primitive_vector(w)
    assert pair.cross() == w


def test_completion_rejects_imprimitive():
    with pytest.raises(ValueError):
        complete_primitive_vector((2, 4, 6))


def test_triple_form_stable():
    f = triple_to_form((1, 2, 4))
    assert f.disc == -84 and f.is_reduced()
    assert triple_to_form((-1, 2, 4)) in (f, QuadForm(f.a, -f.b, f.c))
    assert triple_to_form((-1, -2, 4)) == f
    rng = random.Random(0)
    for _ in range(20):
        w = [1, 2, 4]
        rng.shuffle(w)
        s = [rng.choice((1, -1)) for _ in range(3)]
        g = triple_to_form([a * b for a, b in zip(w, s)])
        assert g.disc == -84 and g in (f, QuadForm(f.a, -f.b, f.c))


def test_phi_pipeline():
    assert phi((1,)).disc == -84
    assert phi(()).disc == -56
    assert [r.form.disc for r in phi_records(1)] == [-84]
    assert phi_records(7) == []
    with pytest.raises(ValueError):
        phi((2,))


@settings(max_examples=150)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(-60, 60))
def test_reduce_properties(a, c, b):
    if b * b >= 4 * a * c:
        return
    f = QuadForm(a, b, c)
    r = reduce(f)
    assert r.is_reduced() and r.disc == f.disc and r.content == f.content
    assert reduce(r) == r


def test_main_theorem_partial_claims():
    # the unconditional pieces hold everywhere checked
    for n in range(0, 120):
        rep = verify_theorem_main(n)
        assert rep.sc7 == sc_t_core_counts(n, 7)[n]
        if rep.vacuous:
            continue
        assert rep.non_principal and rep.seven_primitive and rep.two_totally_imprimitive
        assert rep.image_count <= rep.class_count


def test_main_theorem_first_instance():
    rep = verify_theorem_main(1)
    assert rep.passed and rep.expected_fiber == "1"


def test_main_theorem_known_counterexample():
    rep = verify_theorem_main(16)
    assert not rep.single_genus
