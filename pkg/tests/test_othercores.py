import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcores.abacus import sc_t_core_counts, t_core_counts
from tcores.arith import is_prime, primes_up_to
from tcores.othercores import (
    CURVES,
    an,
    ap,
    c2_closed,
    c2_sc3_vanishing_progressions,
    c3_sc5_counts,
    c3_sc5_falsification,
    c5_closed,
    point_count,
    reduction_type,
    sc3_closed,
    sc9_closed,
    sigma5_nonconstancy_probe,
)
from tcores.partitions import count_sc_t_cores_brute
from tcores.squares import InconsistencyError

SC9 = sc_t_core_counts(400, 9)


def test_indicators():
    assert c2_closed(3) == 1 and c2_closed(2) == 0
    assert sc3_closed(5) == 1 and sc3_closed(0) == 1
    assert c2_closed(1) == sc3_closed(1) == 1
    assert [sc3_closed(n) for n in range(13)] == [count_sc_t_cores_brute(n, 3) for n in range(13)]


def test_vanishing_progressions():
    rep = c2_sc3_vanishing_progressions(10_000)
    assert rep.passed
    assert rep.both_one == [0, 1, 21, 120, 2080]


def test_five_cores():
    assert c5_closed(0) == c5_closed(1) == 1
    assert [c5_closed(n) for n in range(501)] == t_core_counts(500, 5)


def test_curve_coefficients():
    assert point_count(CURVES["36a"], 5) == 6
    assert ap("36a", 5) == 0
    assert ap("36a", 7) == -4
    assert an("36a", 1) == 1
    assert an("36a", 6) == an("36a", 2) * an("36a", 3)
    assert an("36a", 35) == ap("36a", 5) * ap("36a", 7)


def test_bad_reduction_types():
    assert reduction_type("54a", 2) == "nonsplit"
    assert reduction_type("54a", 3) == "additive"
    assert ap("54a", 2) == -1
    assert reduction_type("36a", 2) == "additive"
    assert reduction_type("36a", 5) == "good"


@pytest.mark.parametrize("label", sorted(CURVES))
def test_hasse_bound(label):
    for p in primes_up_to(400):
        if reduction_type(label, p) == "good":
            assert ap(label, p) ** 2 <= 4 * p


@settings(max_examples=120)
@given(st.sampled_from(sorted(CURVES)), st.integers(2, 60), st.integers(2, 4))
def test_prime_power_recursion(label, p, k):
    if not is_prime(p):
        return
    E = CURVES[label]
    if p in E.bad_primes():
        assert an(label, p**k) == ap(label, p) ** k
    else:
        a = ap(label, p)
        assert an(label, p**k) == a * an(label, p ** (k - 1)) - p * an(label, p ** (k - 2))


def test_sc9_small():
    assert sc9_closed(0) == 1 and sc9_closed(1) == 1


def test_sc9_as_stated_fails_on_two_mod_four():
    with pytest.raises(InconsistencyError):
        sc9_closed(2)
    good = [n for n in range(401) if n % 4 != 2]
    assert all(sc9_closed(n) == SC9[n] for n in good)


def test_sc9_corrected_branch():
    assert [sc9_closed(n, corrected=True) for n in range(401)] == SC9


def test_sigma5_probe():
    rep = sigma5_nonconstancy_probe(1, 0, bound=10_000)
    assert rep.conclusive and rep.formula_holds
    assert all(w.n <= 10_000 and w.n >= 0 for w in rep.witnesses)


def test_sigma5_probe_other_progression():
    rep = sigma5_nonconstancy_probe(4, 1, bound=10_000)
    assert rep.formula_holds


def test_c3_sc5():
    assert c3_sc5_counts(0) == (1, 1)
    assert c3_sc5_counts(2)[0] == 2
    survivors = c3_sc5_falsification(12, 2000)
    assert survivors and all(s.trivial for s in survivors)
