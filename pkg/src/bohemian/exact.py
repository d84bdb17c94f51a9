"""Exact scalars, integer polynomials and Sturm-sequence root isolation.

Scalars are :class:`fractions.Fraction` throughout; nothing in this module
touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal; decimal points are refused."""
    text = text.strip()
    if not text or "." in text:
        raise ValueError(f"not an exact rational: {text!r}")
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class UniPoly:
    """Univariate polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable[Rational]) -> "UniPoly":
        """Primitive integer polynomial whose roots are the given rationals."""
        p = cls([1])
        for r in roots:
            r = Fraction(r)
            p = p * cls([-r.numerator, r.denominator])
        return p

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x: Rational) -> Fraction:
        return poly_eval(self, x)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("x" if i == 1 else f"x^{i}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, int):
            return UniPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "UniPoly":
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return UniPoly(c // g for c in self.coeffs)

    def sign_at(self, x: Rational) -> int:
        """Sign of p(x), computed with integers only."""
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        if not self.coeffs:
            return 0
        # b^d * p(a/b) by Horner; b > 0 keeps the sign
        acc = self.coeffs[-1]
        bpow = 1
        for c in reversed(self.coeffs[:-1]):
            bpow *= b
            acc = acc * a + c * bpow
        return (acc > 0) - (acc < 0)

    def sign_at_inf(self, direction: int = 1) -> int:
        if not self.coeffs:
            return 0
        s = 1 if self.lead > 0 else -1
        if direction < 0 and self.degree % 2:
            s = -s
        return s


def poly_eval(p: UniPoly, x: Rational) -> Fraction:
    """Exact value of ``p`` at ``x`` by Horner's rule."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_divmod(f: UniPoly, g: UniPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Division over the rationals; returns coefficient lists (quotient, remainder)."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in f.coeffs]
    dg = g.degree
    lg = g.lead
    quot = [Fraction(0)] * max(len(rem) - dg, 0)
    for k in range(len(rem) - dg - 1, -1, -1):
        c = rem[k + dg] / lg
        quot[k] = c
        if c:
            for j, gc in enumerate(g.coeffs):
                rem[k + j] -= c * gc
    rem = rem[:dg]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def _integral(cs: Sequence[Fraction]) -> UniPoly:
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    return UniPoly(int(c * den) for c in cs)


def exact_quotient(f: UniPoly, g: UniPoly) -> UniPoly:
    quot, rem = poly_divmod(f, g)
    if rem:
        raise ArithmeticError(f"{g} does not divide {f}")
    if any(c.denominator != 1 for c in quot):
        # g not primitive; quotient is still a valid rational multiple
        return _integral(quot).primitive()
    return UniPoly(int(c) for c in quot)


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Primitive gcd over Z[x], leading coefficient positive."""
    a, b = f.primitive(), g.primitive()
    while not b.is_zero():
        _, rem = poly_divmod(a, b)
        a, b = b, _integral(rem).primitive() if rem else UniPoly()
    return a.primitive()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree < 1:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return exact_quotient(p.primitive(), g).primitive()


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain p, p', -rem(p, p'), ... with positive rescaling only."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        _, rem = poly_divmod(seq[-2], seq[-1])
        if not rem:
            break
        r = _integral(rem)
        # _integral scales by a positive denominator; content division keeps sign
        c = r.content()
        seq.append(-UniPoly(x // c for x in r.coeffs))
    return [q for q in seq if not q.is_zero()]


def _variations(signs: Iterable[int]) -> int:
    out, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            out += 1
        last = s
    return out


def sturm_count(seq: Sequence[UniPoly], lo: Rational, hi: Rational) -> int:
    """Number of distinct roots in the half-open interval (lo, hi]."""
    return _variations(q.sign_at(lo) for q in seq) - _variations(q.sign_at(hi) for q in seq)


@dataclass(frozen=True)
class IsolatingInterval:
    """Open rational interval holding exactly one root of ``witness``.

    ``witness`` is square-free and its sign differs (and is nonzero) at the
    two endpoints.
    """

    lo: Fraction
    hi: Fraction
    witness: UniPoly

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Rational) -> bool:
        return self.lo < x < self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def exact_value(self) -> Fraction | None:
        """The root as a Fraction when it is rational, else None."""
        return rational_root_in(self.witness, self.lo, self.hi)

    def __str__(self) -> str:
        return f"({format_rational(self.lo)}, {format_rational(self.hi)})"


def _bisect_point(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    step = (hi - lo) / 2
    while p.sign_at(mid) == 0:
        # nudge off an exact root by half the current step
        step /= 2
        mid += step
    return mid


def sturm_root_isolate(p: UniPoly, lo: Rational, hi: Rational,
                       max_width: Rational | None = None) -> list[IsolatingInterval]:
    """Isolate every distinct real root of ``p`` in ``[lo, hi]``.

    Intervals are sorted and pairwise disjoint.  A root sitting exactly on
    ``lo`` or ``hi`` gets an interval that straddles the endpoint.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if not lo < hi:
        raise ValueError("need lo < hi")
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    seq = sturm_sequence(q)
    out: list[IsolatingInterval] = []

    edge = (hi - lo) / 4
    for x in (lo, hi):
        if q.sign_at(x) == 0:
            w = edge
            while True:
                a, b = x - w, x + w
                if q.sign_at(a) and q.sign_at(b) and sturm_count(seq, a, b) == 1:
                    break
                w /= 2
            out.append(IsolatingInterval(a, b, q))
    a0 = out[0].hi if out and out[0].contains(lo) else lo
    b0 = out[-1].lo if out and out[-1].contains(hi) else hi

    stack = [(a0, b0)]
    while stack:
        a, b = stack.pop()
        n = sturm_count(seq, a, b)
        if n == 0:
            continue
        if n == 1 and q.sign_at(a) and q.sign_at(b):
            out.append(IsolatingInterval(a, b, q))
            continue
        m = _bisect_point(q, a, b)
        stack.append((a, m))
        stack.append((m, b))
    out.sort(key=lambda iv: iv.lo)
    if max_width is not None:
        out = [refine_interval(iv, max_width) for iv in out]
    return out


def refine_interval(iv: IsolatingInterval, width: Rational) -> IsolatingInterval:
    """Bisect ``iv`` until it is no wider than ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    p, lo, hi = iv.witness, iv.lo, iv.hi
    slo = p.sign_at(lo)
    while hi - lo > width:
        m = _bisect_point(p, lo, hi)
        sm = p.sign_at(m)
        if sm == slo:
            lo = m
        else:
            hi = m
    if lo == iv.lo and hi == iv.hi:
        return iv
    return IsolatingInterval(lo, hi, p)


def _divisors(n: int, cap: int = 10**6) -> list[int] | None:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if d > cap:
            return None
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_root_in(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction | None:
    """A rational root of the square-free ``p`` strictly inside (lo, hi).

    ``p`` must change sign across the interval.  Uses the rational root
    theorem: a root a/b has b dividing the leading coefficient.  Returns
    None when the leading coefficient is too large to factor by trial
    division.
    """
    q = p.primitive()
    if q.degree < 1:
        return None
    dens = _divisors(q.lead)
    if dens is None:
        return None
    if hi - lo > Fraction(1, dens[-1]):
        iv = refine_interval(IsolatingInterval(lo, hi, q), Fraction(1, dens[-1]))
        lo, hi = iv.lo, iv.hi
    for b in dens:
        for a in range((lo * b).__floor__(), (hi * b).__ceil__() + 1):
            x = Fraction(a, b)
            if lo < x < hi and q.sign_at(x) == 0:
                return x
    return None
