"""Closed-form maxima for the solved regimes, regime labels and the
standalone counting bounds and inequalities used to justify them.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exact import Rational, as_fraction
from .hessenberg import HessMatrix, trailing_minors

LARGE_RATIO = Fraction(4, 5)
# rational lower bracket for 1/arccosh(2); documentation only, never used to classify
LARGE_RATIO_STRICT = Fraction(19, 25)


class Regime(enum.Enum):
    NEGATIVE_S = "NegativeS"
    CASE_I = "CaseI"
    CASE_II = "CaseII"
    CASE_III = "CaseIII"
    OPEN = "Open"


class OracleDomainError(ValueError):
    pass


def large_ratio_threshold(n: int) -> Fraction:
    return LARGE_RATIO * n * n


def classify(n: int, s: Rational, t: Rational, certified_ratio: Rational | None = None) -> frozenset[Regime]:
    """Regime tags of (n, s, t).

    The ratio s/t = 1 belongs to both CaseI and (for n >= 4) CaseII.  Ratios
    above 1 are CaseII only when ``certified_ratio`` (a ratio up to which the
    both-swapped U has been verified maximal, e.g. by the envelope sweep)
    covers them; otherwise they are Open until the large-ratio threshold.
    """
    s, t = as_fraction(s), as_fraction(t)
    if t <= 0:
        raise OracleDomainError("t must be positive")
    if s <= 0:
        return frozenset({Regime.NEGATIVE_S})
    x = s / t
    tags = set()
    if x <= 1:
        tags.add(Regime.CASE_I)
    if n >= 4 and x >= 1 and (x == 1 or (certified_ratio is not None and x < as_fraction(certified_ratio))):
        tags.add(Regime.CASE_II)
    if x > large_ratio_threshold(n):
        tags.add(Regime.CASE_III)
    return frozenset(tags or {Regime.OPEN})


def max_negative_s(n: int, s: Rational, t: Rational) -> Fraction:
    """t (t - s)^(n-1) for s < 0 (also right at s = 0, where it is t^n)."""
    s, t = as_fraction(s), as_fraction(t)
    if s >= 0:
        raise OracleDomainError("this formula needs s < 0")
    if t <= 0 or n < 1:
        raise OracleDomainError("need t > 0 and n >= 1")
    return t * (t - s) ** (n - 1)


def k_sequence(N: int, s: Rational, t: Rational) -> list[Fraction]:
    """K_0..K_N: 1, t, t^2, then K_n = t K_{n-1} + s^2 K_{n-2}."""
    s, t = as_fraction(s), as_fraction(t)
    K = [Fraction(1), t, t * t][:N + 1]
    while len(K) <= N:
        K.append(t * K[-1] + s * s * K[-2])
    return K


def max_case_i(n: int, s: Rational, t: Rational) -> Fraction:
    s, t = as_fraction(s), as_fraction(t)
    if not 0 < s <= t:
        raise OracleDomainError("needs 0 < s <= t")
    return k_sequence(n, s, t)[n]


def max_case_ii(n: int, s: Rational, t: Rational) -> Fraction:
    """Seeds 3 s^2 t^2 and s^4 t + 4 s^2 t^3 at n = 4, 5, then the K recurrence.

    Only certified maximal for s/t in [1, 1 + eps(n)] with eps(n) unknown;
    see :func:`bohemian.transitions.epsilon_of_n` for a measured value.
    """
    s, t = as_fraction(s), as_fraction(t)
    if n < 4:
        raise OracleDomainError("needs n >= 4")
    if not s >= t > 0:
        raise OracleDomainError("needs s >= t > 0")
    a, b = 3 * s**2 * t**2, s**4 * t + 4 * s**2 * t**3
    if n == 4:
        return a
    for _ in range(n - 5):
        a, b = b, t * b + s * s * a
    return b


def floor_product(n: int) -> int:
    """floor(n/2) * floor((n-1)/2)."""
    return (n // 2) * ((n - 1) // 2)


def max_case_iii(n: int, s: Rational, t: Rational, force: bool = False) -> Fraction:
    """s^(n-1) t + floor(n/2) floor((n-1)/2) s^(n-3) t^3 for s/t > (4/5) n^2.

    ``force`` evaluates the formula below the threshold (for experiments).
    """
    s, t = as_fraction(s), as_fraction(t)
    if n < 2 or t <= 0:
        raise OracleDomainError("needs n >= 2 and t > 0")
    if not force and not s / t > large_ratio_threshold(n):
        raise OracleDomainError(f"s/t = {s / t} is not above (4/5) n^2 = {large_ratio_threshold(n)}")
    val = s ** (n - 1) * t
    f = floor_product(n)
    if f:
        val += f * s ** (n - 3) * t**3
    return val


def chessboard_min_black(n: int) -> int:
    """Fewest vanishing three-factor chains forced by a zero s^(n-2) coefficient."""
    if n < 3:
        raise ValueError("needs n >= 3")
    return (n * n - 4 * n + 3) // 4 if n % 2 else (n * n - 4 * n + 4) // 4


def coeff_bound_s3(n: int) -> int:
    if n < 3:
        raise ValueError("needs n >= 3")
    b = comb(n - 1, 2) - chessboard_min_black(n)
    assert b == floor_product(n)
    return b


@dataclass(frozen=True)
class InequalityReport:
    """Truth values of the five large-ratio inequalities at (n, x), plus both sides."""

    n: int
    x: Fraction
    sides: tuple[tuple[Fraction, Fraction], ...]

    @property
    def holds(self) -> tuple[bool, ...]:
        return tuple(lhs > rhs for lhs, rhs in self.sides)

    def __getitem__(self, i: int) -> bool:
        return self.holds[i]

    def all(self) -> bool:
        return all(self.holds)


def _binom_tail(n: int, x: Fraction, start: int) -> Fraction:
    """sum over j = start, start+2, ... <= n-1 of C(n-1, j) x^(n-1-j)."""
    return sum((comb(n - 1, j) * x ** (n - 1 - j) for j in range(start, n, 2)), Fraction(0))


def regime_inequalities(n: int, x: Rational) -> InequalityReport:
    """Exact evaluation of the five inequalities that make W the maximizer at ratio x.

    Index 0: x^(n-1) + F x^(n-3) > sum_{j odd}  C(n-1, j) x^(n-1-j)
    Index 1: x^(n-1) + F x^(n-3) > sum_{j even >= 2} C(n-1, j) x^(n-1-j)
    Index 2: x^(n-2) + F x^(n-3) > sum_{j even >= 2} ...
    Index 3: x^(n-3) > sum_{j even >= 4} ...
    Index 4: x^(n-4) > sum_{j even >= 4} ...
    with F = floor(n/2) floor((n-1)/2).
    """
    x = as_fraction(x)
    if n < 2 or x <= 0:
        raise ValueError("needs n >= 2 and x > 0")
    F = floor_product(n)
    lead1 = x ** (n - 1) + F * x ** (n - 3)
    lead2 = x ** (n - 2) + F * x ** (n - 3)
    odd = _binom_tail(n, x, 1)
    even2 = _binom_tail(n, x, 2)
    even4 = _binom_tail(n, x, 4)
    sides = ((lead1, odd), (lead1, even2), (lead2, even2), (x ** (n - 3), even4), (x ** (n - 4), even4))
    return InequalityReport(n, x, sides)


def lemma59_check(c: Sequence[int], n: int) -> bool:
    """b_m * n >= b_{m+1} for m = 4..n-1, where b_m = c_m (1-based)."""
    return all(c[m - 1] * n >= c[m] for m in range(4, n))


def signed_tail(c: Sequence[int], n: int, x: Rational) -> Fraction:
    """sum_{m >= 4} (-1)^(m+1) c_m x^(n-m): the part of |det|/t^n beyond the x^(n-3) term."""
    x = as_fraction(x)
    return sum(((-1) ** (m + 1) * c[m - 1] * x ** (n - m) for m in range(4, n + 1)), Fraction(0))


def tail_closes(c: Sequence[int], n: int, x: Rational) -> bool:
    """Whether the coefficient-growth route bounds the tail by 0 at ratio x.

    Pairs (x b_m - b_{m+1}) for even m are nonnegative when x >= n and
    b_{m+1} <= n b_m, so the tail is <= 0.  Checked exactly.
    """
    x = as_fraction(x)
    pairs_ok = all(x * c[m - 1] >= (c[m] if m < n else 0) for m in range(4, n + 1, 2))
    return pairs_ok and signed_tail(c, n, x) <= 0


# --------------------------------------------------------------------------
# small-ratio inequalities (checked against searched maxima)


def lower_growth_holds(M: Sequence[Rational], t: Rational) -> bool:
    """M_n >= t M_{n-1} for every consecutive pair."""
    t = as_fraction(t)
    return all(as_fraction(M[k]) >= t * as_fraction(M[k - 1]) for k in range(1, len(M)))


def split_bound(M: Sequence[Rational], n: int, s: Rational, t: Rational) -> Fraction:
    """t^2 M_{n-2} + t s^2 M_{n-3} + t^2 s^2 M_{n-4} + t s^4 M_{n-5} + ..."""
    s, t = as_fraction(s), as_fraction(t)
    total = Fraction(0)
    for j in range(2, n + 1):
        coef = t * t * s ** (j - 2) if j % 2 == 0 else t * s ** (j - 1)
        total += coef * as_fraction(M[n - j])
    return total


def pair_bound_holds(m: HessMatrix, t: Rational, M: Sequence[Rational]) -> bool:
    """Paired-term bound on the first-column/first-row expansion of det(m).

    For k = 2..n-1:
      |(a11 a2k - s a1k) H_{k+1} - (a11 a2(k+1) - s a1(k+1)) s H_{k+2}|
          <= t^2 M_{n-k} + t s^2 M_{n-k-1},
    and for even n also |(a11 a2n - s a1n) H_{n+1}| <= t^2 M_0.
    ``M`` holds the maxima M_0..M_n for the same (s, t).
    """
    t = as_fraction(t)
    n, s = m.n, m.subdiag
    H = [None] + trailing_minors(m)  # H[k] for k = 1..n+1
    a = m.entry
    for k in range(2, n):
        lhs = abs((a(1, 1) * a(2, k) - s * a(1, k)) * H[k + 1]
                  - (a(1, 1) * a(2, k + 1) - s * a(1, k + 1)) * s * H[k + 2])
        if lhs > t * t * M[n - k] + t * s * s * M[n - k - 1]:
            return False
    if n % 2 == 0 and n >= 2:
        if abs((a(1, 1) * a(2, n) - s * a(1, n)) * H[n + 1]) > t * t * M[0]:
            return False
    return True


def k_expansion_odd(K: Sequence[Fraction], n: int, s: Rational, t: Rational) -> Fraction:
    """t K_{n-1} + t s^2 K_{n-3} + t s^4 K_{n-5} + ... (negative indices vanish)."""
    s, t = as_fraction(s), as_fraction(t)
    return sum((t * s ** (2 * j) * K[n - 1 - 2 * j] for j in range(n) if n - 1 - 2 * j >= 0), Fraction(0))


def k_expansion_paired(K: Sequence[Fraction], n: int, s: Rational, t: Rational) -> Fraction:
    """t^2 K_{n-2} + t s^2 K_{n-3} + t^2 s^2 K_{n-4} + t s^4 K_{n-5} + ..."""
    return split_bound(K, n, s, t)


# --------------------------------------------------------------------------
# large-ratio pathway over template fills


@dataclass(frozen=True)
class PathwayResult:
    n: int
    x: Fraction
    fills: int
    growth_ok: bool   # b_m n >= b_(m+1) on every fill
    tail_ok: bool     # signed tail <= 0 at x on every fill
    c2_zero: bool     # every fill has a vanishing s^(n-2) coefficient

    @property
    def ok(self) -> bool:
        return self.growth_ok and self.tail_ok


def _template_blocks(template, max_free: int):
    """Split a template into sub-templates with at most ``max_free`` open slots."""
    from .search import Template

    extra = template.free[:max(0, len(template.free) - max_free)]
    rest = template.free[len(extra):]
    for bits in itertools.product((0, 1), repeat=len(extra)):
        fixed = tuple(sorted(template.fixed + tuple(zip(extra, bits))))
        yield Template(template.n, fixed, rest, template.prime)


def pathway_scan(n: int, x: Rational | None = None, max_free: int = 20) -> PathwayResult:
    """Check the coefficient-growth route on every fill of the large-ratio templates.

    Fills are enumerated exhaustively (both templates for even n).  Below
    n = 5 the only candidate is W itself.
    """
    import numpy as np

    from .constructions import family_pattern
    from .hessenberg import path_coefficients
    from .search import build_template, enumerate_polynomials

    x = as_fraction(n if x is None else x)
    if n < 5:
        c = path_coefficients(family_pattern("W", n))
        return PathwayResult(n, x, 1, lemma59_check(c, n), tail_closes(c, n, x), c[1] == 0)
    growth = tail = c2 = True
    fills = 0
    xn, xd = x.numerator, x.denominator
    small = comb(n - 1, (n - 1) // 2) * n * max(xn, xd) ** n < 2**62
    for prime in ((False, True) if n % 2 == 0 else (False,)):
        for block in _template_blocks(build_template(n, prime), max_free):
            _, co = enumerate_polynomials(n, block)
            c = np.abs(co[:, ::-1])  # c[:, l-1] = c_l
            if not small:
                c = c.astype(object)
            fills += len(c)
            growth &= bool(np.all(c[:, 3:n - 1] * n >= c[:, 4:n]))
            # xd^(n-4) * tail, pairs (x b_m - b_(m+1)) for even m
            w = np.array([(-1) ** (m + 1) * xn ** (n - m) * xd ** (m - 4) for m in range(4, n + 1)],
                         dtype=c.dtype)
            scaled = c[:, 3:n] @ w
            pairs = all(np.all(xn * c[:, m - 1] >= xd * (c[:, m] if m < n else 0)) for m in range(4, n + 1, 2))
            tail &= pairs and bool(np.all(scaled <= 0))
            c2 &= bool(np.all(c[:, 1] == 0))
    return PathwayResult(n, x, fills, growth, tail, c2)
