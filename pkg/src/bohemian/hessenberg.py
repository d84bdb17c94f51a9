"""Upper Hessenberg matrices with a constant subdiagonal.

Upper-triangular entries are stored row-major over ``(i, j)`` with
``j >= i`` (1-based), so slot ``k`` of an ``EntryPattern`` code is

    k = (i-1)*n - (i-1)*(i-2)/2 + (j-i)

and Binary codes put slot ``k`` in bit ``k`` (least significant first);
Range codes put it in base-(d+1) digit ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exact import Rational, UniPoly, as_fraction, format_rational, parse_rational


def num_slots(n: int) -> int:
    return n * (n + 1) // 2


def slot_index(n: int, i: int, j: int) -> int:
    """Position of entry (i, j), 1-based with j >= i, in the upper storage."""
    if not 1 <= i <= j <= n:
        raise IndexError(f"({i}, {j}) is not an upper-triangular position for n={n}")
    return (i - 1) * n - (i - 1) * (i - 2) // 2 + (j - i)


def slot_position(n: int, k: int) -> tuple[int, int]:
    """Inverse of :func:`slot_index`."""
    i = 1
    while k >= n - i + 1:
        k -= n - i + 1
        i += 1
    return i, i + k


@dataclass(frozen=True)
class HessMatrix:
    """n x n upper Hessenberg matrix whose subdiagonal is constantly ``subdiag``."""

    n: int
    subdiag: Fraction
    upper: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        if len(self.upper) != num_slots(self.n):
            raise ValueError(f"expected {num_slots(self.n)} upper entries, got {len(self.upper)}")
        object.__setattr__(self, "subdiag", as_fraction(self.subdiag))
        object.__setattr__(self, "upper", tuple(as_fraction(a) for a in self.upper))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rational]], subdiag: Rational | None = None) -> "HessMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        s = as_fraction(rows[1][0]) if subdiag is None and n > 1 else as_fraction(subdiag or 0)
        for i in range(n):
            for j in range(n):
                v = as_fraction(rows[i][j])
                if i == j + 1 and v != s:
                    raise ValueError(f"subdiagonal entry ({i + 1}, {j + 1}) = {v} differs from s = {s}")
                if i > j + 1 and v != 0:
                    raise ValueError(f"entry ({i + 1}, {j + 1}) below the subdiagonal must be 0")
        upper = [as_fraction(rows[i][j]) for i in range(n) for j in range(i, n)]
        return cls(n, s, tuple(upper))

    def entry(self, i: int, j: int) -> Fraction:
        """1-based access to any position."""
        if j >= i:
            return self.upper[slot_index(self.n, i, j)]
        if i == j + 1:
            return self.subdiag
        return Fraction(0)

    def rows(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def bottom_right(self, size: int) -> "HessMatrix":
        """Trailing ``size x size`` block."""
        off = self.n - size
        upper = [self.entry(off + i, off + j) for i in range(1, size + 1) for j in range(i, size + 1)]
        return HessMatrix(size, self.subdiag, tuple(upper))

    def with_entry(self, i: int, j: int, value: Rational) -> "HessMatrix":
        up = list(self.upper)
        up[slot_index(self.n, i, j)] = as_fraction(value)
        return HessMatrix(self.n, self.subdiag, tuple(up))

    def count_nonzero_upper(self) -> int:
        return sum(1 for a in self.upper if a)


def _integerized(m: HessMatrix):
    """(s, entries, scale) with all values multiplied by a common denominator."""
    den = m.subdiag.denominator
    for a in m.upper:
        den = den * a.denominator // _gcd(den, a.denominator)
    return int(m.subdiag * den), [int(a * den) for a in m.upper], den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def leading_minors(m: HessMatrix) -> list[Fraction]:
    """p_0..p_n, p_k the determinant of the leading k x k block.

    p_k = sum_{i<=k} (-s)^(k-i) a_ik p_{i-1}; scalars are scaled to
    integers first so the inner loop runs on ints.
    """
    n = m.n
    s, up, den = _integerized(m)
    p = [1]
    for k in range(1, n + 1):
        acc = 0
        spow = 1
        for i in range(k, 0, -1):
            a = up[(i - 1) * n - (i - 1) * (i - 2) // 2 + (k - i)]
            if a:
                acc += a * spow * p[i - 1]
            spow *= -s
        p.append(acc)
    return [Fraction(v, den**k) for k, v in enumerate(p)]


def det_exact(m: HessMatrix) -> Fraction:
    """Exact determinant in O(n^2) via the leading-minor recurrence."""
    return leading_minors(m)[-1]


def trailing_minors(m: HessMatrix) -> list[Fraction]:
    """H_1..H_{n+1}: H_k is the determinant of the trailing (n+1-k)-block, H_{n+1} = 1."""
    n = m.n
    s, up, den = _integerized(m)
    # expand along the first row of each trailing block:
    # T_r = sum_{j>=r} (-s)^(j-r) a_rj T_{j+1}, T_{n+1} = 1
    T = [0] * (n + 2)
    T[n + 1] = 1
    for r in range(n, 0, -1):
        acc = 0
        spow = 1
        for j in range(r, n + 1):
            a = up[(r - 1) * n - (r - 1) * (r - 2) // 2 + (j - r)]
            if a:
                acc += a * spow * T[j + 1]
            spow *= -s
        T[r] = acc
    return [Fraction(T[k], den ** (n + 1 - k)) for k in range(1, n + 2)]


@dataclass(frozen=True)
class Binary:
    """Entries drawn from {0, t}."""

    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))

    @property
    def base(self) -> int:
        return 2

    def values(self) -> list[Fraction]:
        return [Fraction(0), self.t]

    def __str__(self) -> str:
        return f"binary t={format_rational(self.t)}"


@dataclass(frozen=True)
class Range:
    """Entries drawn from {0, 1, ..., d}."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive integer")

    @property
    def base(self) -> int:
        return self.d + 1

    def values(self) -> list[Fraction]:
        return [Fraction(v) for v in range(self.d + 1)]

    def __str__(self) -> str:
        return f"range d={self.d}"


Population = Binary | Range


@dataclass(frozen=True)
class EntryPattern:
    n: int
    population: Population
    code: int

    def __post_init__(self):
        if self.code < 0 or self.code >= self.population.base ** num_slots(self.n):
            raise ValueError(f"code {self.code} out of range for n={self.n}, {self.population}")

    def digits(self) -> list[int]:
        b = self.population.base
        c = self.code
        out = []
        for _ in range(num_slots(self.n)):
            c, r = divmod(c, b)
            out.append(r)
        return out

    @classmethod
    def from_digits(cls, n: int, population: Population, digits: Sequence[int]) -> "EntryPattern":
        b = population.base
        code = 0
        for d in reversed(list(digits)):
            code = code * b + d
        return cls(n, population, code)

    @classmethod
    def from_matrix(cls, m: HessMatrix, population: Population) -> "EntryPattern":
        vals = population.values()
        try:
            digits = [vals.index(a) for a in m.upper]
        except ValueError:
            raise ValueError(f"matrix entries are not all in {population}") from None
        return cls.from_digits(m.n, population, digits)

    def t_count(self) -> int:
        return sum(1 for d in self.digits() if d)


def realize_matrix(p: EntryPattern, s: Rational) -> HessMatrix:
    vals = p.population.values()
    return HessMatrix(p.n, as_fraction(s), tuple(vals[d] for d in p.digits()))


def path_coefficients(p: EntryPattern) -> tuple[int, ...]:
    """c_1..c_n for a Binary pattern.

    c_l counts the splittings of rows 1..n into l consecutive blocks
    [r, i] whose corner entries a_ri are all nonzero; then
    det = sum_l (-1)^(n-l) c_l s^(n-l) t^l.
    """
    if not isinstance(p.population, Binary):
        raise TypeError("path coefficients are defined for Binary populations only")
    n = p.n
    bits = p.digits()
    nz = [[False] * (n + 2) for _ in range(n + 2)]
    for k, b in enumerate(bits):
        if b:
            i, j = slot_position(n, k)
            nz[i][j] = True
    # ways[r][l]: splittings of rows r..n into l blocks
    ways = [[0] * (n + 2) for _ in range(n + 2)]
    ways[n + 1][0] = 1
    for r in range(n, 0, -1):
        for i in range(r, n + 1):
            if nz[r][i]:
                nxt = ways[i + 1]
                row = ways[r]
                for l in range(1, n - r + 2):
                    row[l] += nxt[l - 1]
    return tuple(ways[1][1:n + 1])


def coefficient_bound(n: int, l: int) -> int:
    return comb(n - 1, l - 1)


def det_polynomial(p: EntryPattern) -> UniPoly:
    """q with q(s/t) * t^n = det(realize_matrix(p, s)) for a Binary pattern."""
    c = path_coefficients(p)
    n = p.n
    coeffs = [0] * n
    for l, cl in enumerate(c, start=1):
        coeffs[n - l] = (-1) ** (n - l) * cl
    q = UniPoly(coeffs)
    # homogeneity spot check at x = 2 (t from the pattern)
    t = p.population.t
    if t:
        lhs = q(2) * t**n
        assert lhs == det_exact(realize_matrix(p, 2 * t)), "determinant is not homogeneous"
    return q


def parse_matrix(text: str) -> HessMatrix:
    """Read the shared matrix text format.

    First line ``n s``; then n rows of n rationals.  Entries below the
    subdiagonal must be 0 and subdiagonal entries must equal s.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixFormatError("empty input", 1, 1)
    head = lines[0].split()
    if len(head) != 2:
        raise MatrixFormatError("header must be 'n s'", 1, 1)
    try:
        n = int(head[0])
        s = parse_rational(head[1])
    except ValueError as exc:
        raise MatrixFormatError(str(exc), 1, 1) from None
    if n < 1:
        raise MatrixFormatError("n must be positive", 1, 1)
    if len(lines) - 1 != n:
        raise MatrixFormatError(f"expected {n} matrix rows, found {len(lines) - 1}", len(lines), 1)
    rows = []
    for r, ln in enumerate(lines[1:], start=1):
        toks = ln.split()
        if len(toks) != n:
            raise MatrixFormatError(f"row {r} has {len(toks)} entries, expected {n}", r + 1, 1)
        row = []
        for c, tok in enumerate(toks, start=1):
            try:
                v = parse_rational(tok)
            except ValueError as exc:
                raise MatrixFormatError(str(exc), r + 1, c) from None
            if r > c + 1 and v != 0:
                raise MatrixFormatError(f"entry ({r}, {c}) below the subdiagonal must be 0", r + 1, c)
            if r == c + 1 and v != s:
                raise MatrixFormatError(
                    f"subdiagonal entry ({r}, {c}) is {format_rational(v)}, expected s = {format_rational(s)}",
                    r + 1, c)
            row.append(v)
        rows.append(row)
    return HessMatrix.from_rows(rows, subdiag=s)


def format_matrix(m: HessMatrix) -> str:
    out = [f"{m.n} {format_rational(m.subdiag)}"]
    for row in m.rows():
        out.append(" ".join(format_rational(v) for v in row))
    return "\n".join(out) + "\n"


class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
