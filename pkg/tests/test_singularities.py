import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tsing.exactmath import hj_evaluate, hj_expand, mod_inverse
from tsing.singularities import (DuValA, DuValD, DuValE, OtherCyclic, QuotSing,
                                 Smooth, Tclass, are_conjugate,
                                 boundary_pullback_selfint, classify,
                                 classify_string, conjugate_string, d_value,
                                 discrepancies, generate_t_strings, is_t_string,
                                 lemma_T1_check, lemma_T2_check, milnor_number,
                                 multiset, s_string, t_fibre_partitions, t_seed,
                                 t_steps, t_strings_in_box,
                                 t_strings_in_box_exact)


def divisor_search(n, a):
    """Classification by trying every n0 with n0^2 | n on both representatives."""
    if n == 1:
        return Smooth()
    if a == n - 1:
        return DuValA(n - 1)
    for q in (a, mod_inverse(a, n)):
        for n0 in range(2, math.isqrt(n) + 1):
            if n % (n0 * n0):
                continue
            d = n // (n0 * n0)
            if (q + 1) % (d * n0) == 0:
                a0 = (q + 1) // (d * n0)
                if math.gcd(a0, n0) == 1:
                    return Tclass(d, n0, a0)
    return OtherCyclic(n, min(a, mod_inverse(a, n)))


@st.composite
def coprime_pair(draw, max_n=5000):
    n = draw(st.integers(2, max_n))
    a = draw(st.integers(1, n - 1).filter(lambda a: math.gcd(a, n) == 1))
    return n, a


@pytest.mark.parametrize("n, a, expected", [
    (1, 0, Smooth()),
    (2, 1, DuValA(1)),
    (6, 5, DuValA(5)),
    (4, 1, Tclass(1, 2, 1)),
    (9, 2, Tclass(1, 3, 1)),
    (25, 9, Tclass(1, 5, 2)),
    (25, 14, Tclass(1, 5, 2)),
    (20, 9, Tclass(5, 2, 1)),
    (8, 3, Tclass(2, 2, 1)),
    (12, 5, Tclass(3, 2, 1)),
    (18, 5, Tclass(2, 3, 1)),
    (7, 3, OtherCyclic(7, 3)),
])
def test_classify_examples(n, a, expected):
    assert classify(n, a) == expected


def test_classify_matches_divisor_search_exhaustively():
    for n in range(2, 400):
        for a in range(1, n):
            if math.gcd(a, n) == 1:
                assert classify(n, a) == divisor_search(n, a), (n, a)


@given(coprime_pair())
def test_classify_duality(pair):
    n, a = pair
    assert classify(n, a) == classify(n, mod_inverse(a, n))
    assert QuotSing.make(n, a) == QuotSing.make(n, mod_inverse(a, n))


@given(st.integers(1, 9), st.integers(2, 40), st.integers(1, 39))
def test_t_normal_form_is_recognised(d, n0, a0):
    if a0 >= n0 or math.gcd(a0, n0) != 1:
        return
    c = classify(d * n0 * n0, d * n0 * a0 - 1)
    assert c == Tclass(d, n0, a0)
    assert (c.order, c.weight) in {(d * n0 * n0, d * n0 * a0 - 1),
                                   (d * n0 * n0, d * n0 * (n0 - a0) - 1)}


def test_tclass_canonical_and_validation():
    assert Tclass(1, 5, 3) == Tclass(1, 5, 2)
    assert str(Tclass(1, 5, 2)) == "1/25(1,9)"
    with pytest.raises(ValueError):
        Tclass(1, 1, 0)
    with pytest.raises(ValueError):
        Tclass(1, 4, 2)
    with pytest.raises(ValueError):
        DuValE(5)
    with pytest.raises(ValueError):
        DuValD(3)


def test_milnor_and_d():
    assert milnor_number(Smooth()) == 0
    assert milnor_number(DuValA(4)) == 4
    assert milnor_number(DuValD(5)) == 5
    assert milnor_number(DuValE(8)) == 8
    assert milnor_number(Tclass(1, 5, 2)) == 0
    assert milnor_number(Tclass(5, 2, 1)) == 4
    assert d_value(DuValA(3)) == 4
    assert d_value(Tclass(3, 2, 1)) == 3
    with pytest.raises(ValueError):
        milnor_number(OtherCyclic(7, 3))
    with pytest.raises(ValueError):
        d_value(OtherCyclic(7, 3))


def test_t_strings_generation_examples():
    assert t_seed(1) == (4,)
    assert t_seed(2) == (3, 3)
    assert t_seed(4) == (3, 2, 2, 3)
    assert t_steps((4,)) == ((5, 2), (2, 5))
    assert generate_t_strings(1, 3) == {(4,), (5, 2), (2, 5), (6, 2, 2), (2, 5, 3),
                                        (3, 5, 2), (2, 2, 6)}
    assert generate_t_strings(2, 3) == {(3, 3), (4, 3, 2), (2, 3, 4)}
    assert generate_t_strings(3, 2) == set()


def test_is_t_string():
    assert is_t_string([4]) == 1
    assert is_t_string([3, 5, 2]) == 1
    assert is_t_string([3, 2, 2, 3]) == 4
    assert is_t_string([2, 2]) is None      # Du Val, not a T_d-string
    assert is_t_string([3, 2, 2]) is None   # 1/7(1,3)
    assert classify_string([2, 2]) == DuValA(2)


@pytest.mark.parametrize("d", range(1, 6))
def test_generated_strings_classify_as_t(d):
    for s in generate_t_strings(d, 7):
        c = classify_string(s)
        assert isinstance(c, Tclass) and c.d == d
        # Milnor number d - 1, entries sum to 3r + 2 - d
        assert milnor_number(c) == d - 1
        assert sum(s) == 3 * len(s) + 2 - d


@given(coprime_pair())
def test_conjugate_string(pair):
    n, a = pair
    s = hj_expand(n, a)
    c = conjugate_string(s)
    assert c == hj_expand(n, n - a)
    assert conjugate_string(c) == s
    assert are_conjugate(s, c)


def test_are_conjugate_edge_cases():
    assert are_conjugate((2,), (2,))
    assert are_conjugate((3,), (2, 2))
    assert not are_conjugate((3,), (3,))
    assert not are_conjugate((), (2,))


def test_s_string():
    assert s_string((2,), (2,), 0) == (2, 2, 2)
    assert s_string((3,), (2, 2), 1) == (3, 3, 2, 2)
    with pytest.raises(ValueError):
        s_string((3,), (3,), 0)


@given(coprime_pair(max_n=200), st.integers(0, 4), st.integers(2, 6))
def test_lemma_checks_random(pair, t, b):
    n, a = pair
    left, right = hj_expand(n, a), hj_expand(n, n - a)
    assert lemma_T1_check(left, right, t)
    assert lemma_T2_check(left, right, t, b)


def _discrepancy_oracle(s):
    """Cramer's rule on K.E_j = b_j - 2 for chains of length 1 and 2."""
    if len(s) == 1:
        return [Fraction(2, s[0]) - 1]
    b1, b2 = s
    # a1 * (-b1) + a2 = b1 - 2 ;  a1 - a2 * b2 = b2 - 2
    det = b1 * b2 - 1
    a1 = Fraction(-(b1 - 2) * b2 - (b2 - 2), det)
    a2 = Fraction(-(b2 - 2) * b1 - (b1 - 2), det)
    return [a1, a2]


@pytest.mark.parametrize("s", [(2,), (3,), (4,), (7,), (2, 2), (3, 3), (5, 2), (2, 5), (4, 7)])
def test_discrepancies_small_oracle(s):
    assert discrepancies(s) == _discrepancy_oracle(s)


def test_discrepancy_range_on_t_strings():
    for d in range(1, 5):
        for s in generate_t_strings(d, 6):
            assert all(-1 < x < 0 for x in discrepancies(s))
    assert discrepancies((2, 2, 2)) == [0, 0, 0]


def test_boundary_selfint():
    for s in [(4,), (5, 2), (3, 3), (3, 2, 2, 3), (2, 5, 3)]:
        assert boundary_pullback_selfint(s) == -1
    with pytest.raises(ValueError):
        boundary_pullback_selfint((3, 2, 2))


def test_t_fibre_partitions():
    got = t_fibre_partitions(2, 2, 1)
    assert got == {(DuValA(1),), (Smooth(), Smooth()),
                   (Smooth(), Tclass(1, 2, 1)), (Tclass(2, 2, 1),)}
    # every fibre has total Milnor number at most d - 1
    for p in t_fibre_partitions(5, 3, 1):
        assert sum(milnor_number(c) for c in p) <= 4
    with pytest.raises(ValueError):
        t_fibre_partitions(2, 4, 2)


def test_multiset_order_is_canonical():
    items = [Tclass(1, 2, 1), DuValA(2), Smooth(), DuValA(1)]
    assert multiset(items) == multiset(reversed(items))
    assert str(QuotSing.make(25, 14)) == "1/25(1,9)"
    assert hj_evaluate(hj_expand(25, 9)) == Fraction(25, 9)


@pytest.mark.parametrize("max_len, max_entry", [(1, 30), (3, 12), (4, 10), (5, 8)])
def test_box_scan_matches_exact_scan(max_len, max_entry):
    assert t_strings_in_box(max_len, max_entry) == t_strings_in_box_exact(max_len, max_entry)


def test_box_scan_small():
    assert t_strings_in_box(2, 5) == {(4,): 1, (3, 3): 2, (5, 2): 1, (2, 5): 1}
    assert t_strings_in_box(0, 5) == {}
