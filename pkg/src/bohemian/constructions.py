"""Named matrix families and the closed forms of their determinants.

Families (tags accepted by :func:`build`):

``U``      t on every even offset j - i >= 0, zero on odd offsets
``Ur``     U with its first two rows rearranged (n >= 4)
``Uc``     U with its last two columns rearranged (n >= 4)
``Urc``    both rearrangements (n >= 4)
``V``      a row of t's over an empty block, last column of t's (n >= 2)
``W``      the large-ratio maximizer with a k x k (odd n) or k x (k+1)
           (even n) block of t's (n >= 3)
``Wprime`` even n only: the (k+1) x k block variant of ``W``

All determinant helpers return signed values.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import Rational, as_fraction
from .hessenberg import Binary, EntryPattern, HessMatrix, det_exact

FAMILIES = ("U", "Ur", "Uc", "Urc", "V", "W", "Wprime")
_MIN_N = {"U": 1, "Ur": 4, "Uc": 4, "Urc": 4, "V": 2, "W": 3, "Wprime": 3}


class FamilyError(ValueError):
    pass


def _check(family: str, n: int) -> None:
    if family not in _MIN_N:
        raise FamilyError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if n < _MIN_N[family]:
        raise FamilyError(f"family {family} requires n >= {_MIN_N[family]}")
    if family == "Wprime" and n % 2:
        raise FamilyError("family Wprime requires even n")


def _u_rows(n, s, t):
    z = Fraction(0)
    return [[t if j >= i and (j - i) % 2 == 0 else (s if i == j + 1 else z)
             for j in range(n)] for i in range(n)]


def _w_rows(n, s, t, prime=False):
    z = Fraction(0)
    rows = [[s if i == j + 1 else z for j in range(n)] for i in range(n)]
    k = (n - 1) // 2
    if n % 2:
        top, block_rows, block_cols = k, range(1, k + 1), range(k, 2 * k)
    elif not prime:
        top, block_rows, block_cols = k, range(1, k + 1), range(k, 2 * k + 1)
    else:
        top, block_rows, block_cols = k + 1, range(1, k + 2), range(k + 1, 2 * k + 1)
    for j in range(top):
        rows[0][j] = t
    rows[0][n - 1] = t
    for i in block_rows:
        for j in block_cols:
            rows[i][j] = t
    for i in range(block_rows.stop, n):
        rows[i][n - 1] = t
    return rows


def build(family: str, n: int, s: Rational, t: Rational) -> HessMatrix:
    """Realize a named family exactly; every entry is 0, s or t."""
    _check(family, n)
    s, t = as_fraction(s), as_fraction(t)
    z = Fraction(0)
    if family == "U":
        rows = _u_rows(n, s, t)
    elif family in ("Ur", "Uc", "Urc"):
        # start from the displayed (pre-permuted) array, then undo the swaps
        rows = _u_rows(n, s, t)
        if family in ("Ur", "Urc"):
            rows[0][0], rows[1][0] = s, t
        if family in ("Uc", "Urc"):
            rows[n - 1][n - 2], rows[n - 1][n - 1] = t, s
        if family in ("Ur", "Urc"):
            rows[0], rows[1] = rows[1], rows[0]
        if family in ("Uc", "Urc"):
            for r in rows:
                r[n - 2], r[n - 1] = r[n - 1], r[n - 2]
    elif family == "V":
        rows = [[s if i == j + 1 else z for j in range(n)] for i in range(n)]
        for j in range(n - 1):
            rows[0][j] = t
        for i in range(1, n):
            rows[i][n - 1] = t
    else:
        rows = _w_rows(n, s, t, prime=(family == "Wprime"))
    return HessMatrix.from_rows(rows, subdiag=s)


def family_pattern(family: str, n: int, t: Rational = 1) -> EntryPattern:
    """The Binary pattern code of a family (the upper part never holds s)."""
    t = as_fraction(t)
    m = build(family, n, 2 * t + 1, t)
    return EntryPattern.from_matrix(m, Binary(t))


def det_u(n: int, s: Rational, t: Rational) -> Fraction:
    """U_0 = 0, U_1 = t, U_2 = t^2, U_n = t U_{n-1} + s^2 U_{n-2}."""
    s, t = as_fraction(s), as_fraction(t)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(0)
    prev, cur = Fraction(0), t
    # U_2 = t*U_1 + s^2*U_0 = t^2 holds with U_0 = 0
    for _ in range(n - 1):
        prev, cur = cur, t * cur + s * s * prev
    return cur


def _rearranged_abs(n, s, t):
    return abs(s * det_u(n - 1, s, t) + t * s * det_u(n - 2, s, t))


def det_ur(n: int, s: Rational, t: Rational) -> Fraction:
    s, t = as_fraction(s), as_fraction(t)
    d = det_exact(build("Ur", n, s, t))
    assert abs(d) == _rearranged_abs(n, s, t), "row-swapped identity failed"
    return d


def det_uc(n: int, s: Rational, t: Rational) -> Fraction:
    s, t = as_fraction(s), as_fraction(t)
    d = det_exact(build("Uc", n, s, t))
    assert abs(d) == _rearranged_abs(n, s, t), "column-swapped identity failed"
    return d


def urc_closed_form(n: int, s: Rational, t: Rational) -> Fraction:
    """s^2 U_{n-2} + 2 t s^2 U_{n-3} + t^2 s^2 U_{n-4} (with U_0 = 0)."""
    s, t = as_fraction(s), as_fraction(t)
    if n < 4:
        raise FamilyError("family Urc requires n >= 4")
    s2 = s * s
    return s2 * det_u(n - 2, s, t) + 2 * t * s2 * det_u(n - 3, s, t) + t * t * s2 * det_u(n - 4, s, t)


def urc_recurrence(n: int, s: Rational, t: Rational) -> Fraction:
    """Seeds 3 s^2 t^2, s^4 t + 4 s^2 t^3 then X_n = t X_{n-1} + s^2 X_{n-2}."""
    s, t = as_fraction(s), as_fraction(t)
    if n < 4:
        raise FamilyError("family Urc requires n >= 4")
    a, b = 3 * s**2 * t**2, s**4 * t + 4 * s**2 * t**3
    if n == 4:
        return a
    for _ in range(n - 5):
        a, b = b, t * b + s * s * a
    return b


def det_urc(n: int, s: Rational, t: Rational) -> Fraction:
    s, t = as_fraction(s), as_fraction(t)
    d = det_exact(build("Urc", n, s, t))
    closed = urc_closed_form(n, s, t)
    assert abs(d) == abs(closed), "both-swapped identity failed"
    assert closed == urc_recurrence(n, s, t), "seeded recurrence disagrees with closed form"
    return d


def det_v(n: int, s: Rational, t: Rational) -> Fraction:
    """(-1)^n (n-1) t^2 s^(n-2)."""
    if n < 2:
        raise FamilyError("family V requires n >= 2")
    s, t = as_fraction(s), as_fraction(t)
    val = (-1) ** n * (n - 1) * t * t * s ** (n - 2)
    assert val == det_exact(build("V", n, s, t)), "closed form for V disagrees with the matrix"
    return val


def w_closed_form(n: int, s: Rational, t: Rational) -> Fraction:
    """(-1)^(n-1) (s^(n-1) t + floor(n/2) floor((n-1)/2) s^(n-3) t^3), n >= 2."""
    s, t = as_fraction(s), as_fraction(t)
    f = (n // 2) * ((n - 1) // 2)
    val = s ** (n - 1) * t
    if f:
        val += f * s ** (n - 3) * t**3
    return (-1) ** (n - 1) * val


def w_step(n: int, s: Rational, t: Rational, prev: Fraction) -> Fraction:
    """floor((n-1)/2) (-s)^(n-3) t^3 - s * prev, prev the (n-1) value."""
    s, t = as_fraction(s), as_fraction(t)
    return ((n - 1) // 2) * (-s) ** (n - 3) * t**3 - s * prev


def det_w(n: int, s: Rational, t: Rational) -> Fraction:
    if n < 3:
        raise FamilyError("family W requires n >= 3")
    s, t = as_fraction(s), as_fraction(t)
    val = w_closed_form(n, s, t)
    assert val == det_exact(build("W", n, s, t)), "closed form for W disagrees with the matrix"
    assert val == w_step(n, s, t, w_closed_form(n - 1, s, t)), "W recurrence link failed"
    if n % 2 == 0:
        assert det_exact(build("Wprime", n, s, t)) == val, "W and Wprime determinants differ"
    return val
