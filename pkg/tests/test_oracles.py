from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bohemian import constructions as C
from bohemian import oracles as O
from bohemian.hessenberg import Binary, HessMatrix, num_slots, path_coefficients
from bohemian.oracles import Regime
from bohemian.search import SearchSpec, build_template, search_max

F = Fraction
pos = st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8)


def test_negative_s_examples():
    assert O.max_negative_s(1, -5, F(2, 3)) == F(2, 3)
    assert O.max_negative_s(3, -1, 1) == 4
    assert O.max_negative_s(4, -2, 3) == 375
    assert search_max(SearchSpec(4, F(-2), Binary(3))).max_abs == 375
    with pytest.raises(O.OracleDomainError):
        O.max_negative_s(3, 0, 1)


def test_case_i_examples():
    assert [O.max_case_i(n, 1, 1) for n in range(1, 7)] == [1, 1, 2, 3, 5, 8]
    assert [O.max_case_i(n, 1, 2) for n in range(1, 6)] == [2, 4, 10, 24, 58]
    for d in (3, 4, 7):
        K = [O.max_case_i(n, 1, d) for n in range(1, 8)]
        assert all(K[i] == d * K[i - 1] + K[i - 2] for i in range(2, 7))
    with pytest.raises(O.OracleDomainError):
        O.max_case_i(3, 2, 1)


def test_case_ii_examples():
    assert O.max_case_ii(4, 1, 1) == 3
    assert O.max_case_ii(5, 1, 1) == 5
    s = F(101, 100)
    assert O.max_case_ii(6, s, 1) == O.max_case_ii(5, s, 1) + s**2 * O.max_case_ii(4, s, 1)
    assert O.max_case_ii(6, s, 1) == search_max(SearchSpec(6, s, Binary(1))).max_abs
    with pytest.raises(O.OracleDomainError):
        O.max_case_ii(3, 1, 1)


def test_case_iii_examples():
    assert O.max_case_iii(6, 100, 1) == 10006000000
    assert O.max_case_iii(4, 100, 1) == 1000200
    assert search_max(SearchSpec(4, F(100), Binary(1))).max_abs == 1000200
    assert O.max_case_iii(2, 100, 1) == 100
    with pytest.raises(O.OracleDomainError):
        O.max_case_iii(4, 12, 1)
    assert O.max_case_iii(4, 12, 1, force=True) == 12**3 + 2 * 12


def test_counting_examples():
    assert [O.chessboard_min_black(n) for n in (9, 8, 3)] == [12, 9, 0]
    assert [O.coeff_bound_s3(n) for n in (9, 8, 3)] == [16, 12, 1]


def test_classify():
    assert O.classify(6, 1, 1) == {Regime.CASE_I, Regime.CASE_II}
    assert O.classify(3, 1, 1) == {Regime.CASE_I}
    assert O.classify(6, F(1, 2), 1) == {Regime.CASE_I}
    assert O.classify(6, 2, 1) == {Regime.OPEN}
    assert O.classify(6, 2, 1, certified_ratio=F(5, 2)) == {Regime.CASE_II}
    assert O.classify(6, F(144, 5), 1) == {Regime.OPEN}
    assert O.classify(6, F(145, 5), 1) == {Regime.CASE_III}
    assert O.classify(6, 0, 1) == {Regime.NEGATIVE_S}
    assert O.classify(6, -3, 1) == {Regime.NEGATIVE_S}
    assert O.LARGE_RATIO_STRICT < O.LARGE_RATIO


def test_inequality_examples():
    assert O.regime_inequalities(5, 21).holds[:4] == (True,) * 4
    assert O.regime_inequalities(2, 4).all()
    r = O.regime_inequalities(6, 6)
    # exact evaluation at x = n = 6
    assert r.holds[4] and r.holds[0]
    assert r.sides[0] == (F(9072), F(6841))
    # the fifth inequality taken literally fails at x = n from n = 7 on
    assert O.regime_inequalities(7, 7).sides[4] == (F(343), F(736))


def test_growth_check():
    c = path_coefficients(C.family_pattern("W", 9))
    assert all(cl == 0 for l, cl in enumerate(c, 1) if l not in (1, 3))
    assert O.lemma59_check(c, 9)
    assert O.lemma59_check([0] * 9, 9)
    t9 = build_template(9)
    fills = list(t9.fills())
    assert len(fills) == 2**12
    assert all(O.lemma59_check(path_coefficients(p), 9) for p in fills[::97])
    assert not O.lemma59_check([1, 0, 2, 1, 9, 0, 0], 7)


@given(st.integers(1, 12), pos, st.fractions(min_value=Fraction(1, 16), max_value=1, max_denominator=16))
def test_case_i_equals_u(n, t, r):
    s = t * r
    assert O.max_case_i(n, s, t) == abs(C.det_u(n, s, t))


@given(st.integers(4, 12), pos, st.fractions(min_value=1, max_value=5, max_denominator=16))
def test_case_ii_equals_urc(n, t, r):
    assert O.max_case_ii(n, t * r, t) == abs(C.det_urc(n, t * r, t))


@given(st.integers(3, 12), pos, st.fractions(min_value=Fraction(1, 16), max_value=50, max_denominator=16))
def test_case_iii_equals_w(n, t, extra):
    s = t * (O.large_ratio_threshold(n) + extra)
    assert O.max_case_iii(n, s, t) == abs(C.det_w(n, s, t))


def _search_maxima(n_max, s, t):
    return [F(1)] + [search_max(SearchSpec(n, s, Binary(t))).max_abs for n in range(1, n_max + 1)]


@pytest.mark.parametrize("s, t", [(F(1), F(1)), (F(1, 2), F(1)), (F(3, 7), F(5, 4)), (F(2), F(2))])
def test_small_ratio_bounds_on_searched_maxima(s, t):
    M = _search_maxima(6, s, t)
    assert O.lower_growth_holds(M, t)
    for n in range(2, 7):
        assert M[n] <= O.split_bound(M, n, s, t)


@given(st.integers(2, 6), st.data())
def test_paired_bound_random_matrices(n, data):
    t = data.draw(st.sampled_from([F(1), F(3, 2)]))
    s = t * data.draw(st.sampled_from([F(1), F(1, 2), F(1, 3)]))
    M = O.k_sequence(6, s, t)
    up = data.draw(st.lists(st.sampled_from([F(0), t / 3, t / 2, t]), min_size=num_slots(n), max_size=num_slots(n)))
    assert O.pair_bound_holds(HessMatrix(n, s, tuple(up)), t, M)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_chessboard_bound_exhaustive(n):
    from bohemian.search import c3_when_c2_vanishes
    best, hits, _ = c3_when_c2_vanishes(n)
    assert best == O.coeff_bound_s3(n) and hits > 0


@pytest.mark.parametrize("n", [5, 7])
def test_single_question_mark_raises_a_coefficient(n):
    # setting any one open slot of the template lifts c_3 above W's or makes b_4 nonzero
    tpl = build_template(n)
    base = path_coefficients(C.family_pattern("W", n))
    for k in range(len(tpl.free)):
        bits = [0] * len(tpl.free)
        bits[k] = 1
        c = path_coefficients(tpl.fill(bits))
        assert c[2] > base[2] or c[3] != 0


@pytest.mark.parametrize("n", range(4, 11))
def test_pathway_scan(n):
    r = O.pathway_scan(n)
    assert r.ok and r.c2_zero
