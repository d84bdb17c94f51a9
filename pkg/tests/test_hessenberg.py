from fractions import Fraction

import pytest
from brute import leibniz_det
from hypothesis import given, strategies as st

from bohemian.exact import UniPoly
from bohemian.hessenberg import (Binary, EntryPattern, HessMatrix, MatrixFormatError, Range,
                                 coefficient_bound, det_exact, det_polynomial, format_matrix,
                                 num_slots, parse_matrix, path_coefficients, realize_matrix,
                                 slot_index, slot_position, trailing_minors)

small = st.fractions(min_value=-6, max_value=6, max_denominator=7)


@st.composite
def hess(draw, n_max=5):
    n = draw(st.integers(1, n_max))
    s = draw(small)
    up = draw(st.lists(small, min_size=num_slots(n), max_size=num_slots(n)))
    return HessMatrix(n, s, tuple(up))


@st.composite
def binary_patterns(draw, n_max=6):
    n = draw(st.integers(1, n_max))
    t = draw(st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=5))
    return EntryPattern(n, Binary(t), draw(st.integers(0, 2 ** num_slots(n) - 1)))


def test_slot_layout():
    n = 4
    seen = [slot_index(n, i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    assert seen == list(range(num_slots(n)))
    assert all(slot_position(n, k) == divmod_pos for k, divmod_pos in
               enumerate((i, j) for i in range(1, n + 1) for j in range(i, n + 1)))
    with pytest.raises(IndexError):
        slot_index(3, 2, 1)


def test_det_examples():
    m = HessMatrix.from_rows([[1, 2], [1, 1]])
    assert det_exact(m) == -1
    assert trailing_minors(m) == [-1, 1, 1]
    t = Fraction(7, 3)
    assert det_exact(HessMatrix(1, Fraction(5), (t,))) == t
    assert det_exact(HessMatrix(3, Fraction(1), (Fraction(1),) * 6)) == 0
    diag = HessMatrix.from_rows([[t, 0, 0], [1, t, 0], [0, 1, t]])
    assert trailing_minors(diag) == [t**3, t**2, t, 1]


@given(hess())
def test_det_matches_leibniz(m):
    assert det_exact(m) == leibniz_det(m.rows())


@given(hess(6))
def test_trailing_minors_are_block_determinants(m):
    H = trailing_minors(m)
    assert H[0] == det_exact(m) and H[-1] == 1
    for k in range(1, m.n + 1):
        assert H[k - 1] == det_exact(m.bottom_right(m.n + 1 - k))


@given(hess(6), st.data())
def test_det_is_affine_in_each_entry(m, data):
    i = data.draw(st.integers(1, m.n))
    j = data.draw(st.integers(i, m.n))
    a, b, c = (data.draw(small) for _ in range(3))
    da, db, dc = (det_exact(m.with_entry(i, j, v)) for v in (a, b, c))
    # three points on a line: (db - da)(c - a) == (dc - da)(b - a)
    assert (db - da) * (c - a) == (dc - da) * (b - a)


def test_realize_examples():
    z = realize_matrix(EntryPattern(3, Binary(1), 0), 2)
    assert z.count_nonzero_upper() == 0
    full = realize_matrix(EntryPattern(3, Binary(Fraction(1, 2)), 2**6 - 1), 2)
    assert set(full.upper) == {Fraction(1, 2)}
    assert realize_matrix(EntryPattern(1, Range(2), 2), 1).rows() == [[2]]
    with pytest.raises(ValueError):
        EntryPattern(1, Range(2), 3)


def test_path_coefficient_examples():
    assert path_coefficients(EntryPattern(3, Binary(1), 2**6 - 1)) == (1, 2, 1)
    assert path_coefficients(EntryPattern(4, Binary(1), 0)) == (0, 0, 0, 0)
    q = det_polynomial(EntryPattern(3, Binary(1), 2**6 - 1))
    assert q == UniPoly([1, -2, 1])
    with pytest.raises(TypeError):
        path_coefficients(EntryPattern(2, Range(2), 5))


def test_det_polynomial_examples():
    # n = 2: slots (1,1), (1,2), (2,2) are bits 0, 1, 2
    assert det_polynomial(EntryPattern(2, Binary(1), 0b101)) == UniPoly([1])
    assert det_polynomial(EntryPattern(2, Binary(1), 0b010)) == UniPoly([0, -1])


@given(binary_patterns(), st.fractions(min_value=-5, max_value=5, max_denominator=9))
def test_polynomial_reconstruction(p, s):
    q = det_polynomial(p)
    t = p.population.t
    assert q(s / t) * t**p.n == det_exact(realize_matrix(p, s))
    c = path_coefficients(p)
    assert c[0] in (0, 1)
    assert all(cl <= coefficient_bound(p.n, l) for l, cl in enumerate(c, start=1))


@given(binary_patterns(5))
def test_pattern_round_trip(p):
    m = realize_matrix(p, 3)
    assert EntryPattern.from_matrix(m, p.population) == p
    assert EntryPattern.from_digits(p.n, p.population, p.digits()) == p


def test_text_format_round_trip():
    m = HessMatrix.from_rows([[1, Fraction(1, 2), 0], [Fraction(-2, 3), 0, 4], [0, Fraction(-2, 3), 1]])
    assert parse_matrix(format_matrix(m)) == m


@pytest.mark.parametrize("text, line, col", [
    ("2 1\n1 2\n2 1\n", 3, 1),            # subdiagonal differs from s
    ("3 1\n1 1 1\n1 1 1\n1 1 1\n", 4, 1),  # below the subdiagonal
    ("2 1\n1 2\n", 2, 1),                  # missing row
    ("2 1\n1 x\n1 1\n", 2, 2),             # bad token
    ("2 0.5\n1 1\n1 1\n", 1, 1),           # float header
])
def test_parse_errors(text, line, col):
    with pytest.raises(MatrixFormatError) as exc:
        parse_matrix(text)
    assert (exc.value.line, exc.value.column) == (line, col)
