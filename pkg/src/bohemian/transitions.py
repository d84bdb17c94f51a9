"""Exact maximizer-versus-ratio diagrams for Binary patterns.

Every Binary pattern has det = t^n q(s/t) for an integer polynomial q, so the
maximum |det| at ratio x is the upper envelope of |q(x)| over the distinct
pattern polynomials.  Crossings are roots of q^2 - r^2, isolated with Sturm
sequences; nothing here uses floating point.

The full envelope works in two stages.  A small candidate set (winners on a
rational grid) gets an exact envelope; then every other polynomial is
checked against the winner of each piece, first with cheap monotone bounds
and then, if needed, with an exact root count.  Violators join the candidate
set and the loop repeats until nothing beats the envelope anywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .constructions import FAMILIES, _MIN_N, family_pattern
from .exact import (IsolatingInterval, Rational, UniPoly, as_fraction, format_rational, poly_eval,
                    poly_gcd, refine_interval, squarefree_part, sturm_count, sturm_root_isolate,
                    sturm_sequence)
from .hessenberg import Binary, det_polynomial, num_slots, path_coefficients
from .oracles import large_ratio_threshold
from .search import (BudgetExceeded, MaxRecord, SearchSpec, enumerate_polynomials, env_budget,
                     search_max)

FULL_MAX_N = 6
GRID = 64
PREFILTER_DEPTH = 8


# --------------------------------------------------------------------------
# points and segments


@dataclass(frozen=True)
class Breakpoint:
    """A point of the ratio axis: an exact rational, or an isolating interval."""

    lo: Fraction
    hi: Fraction
    witness: UniPoly | None = None

    @classmethod
    def exact(cls, v: Rational) -> "Breakpoint":
        v = as_fraction(v)
        return cls(v, v, None)

    @classmethod
    def from_interval(cls, iv: IsolatingInterval) -> "Breakpoint":
        v = iv.exact_value()
        if v is not None:
            return cls.exact(v)
        return cls(iv.lo, iv.hi, iv.witness)

    @property
    def is_exact(self) -> bool:
        return self.witness is None

    @property
    def value(self) -> Fraction | None:
        return self.lo if self.is_exact else None

    def interval(self) -> IsolatingInterval:
        return IsolatingInterval(self.lo, self.hi, self.witness)

    def refined(self, width: Rational) -> "Breakpoint":
        if self.is_exact:
            return self
        iv = refine_interval(self.interval(), width)
        return Breakpoint(iv.lo, iv.hi, iv.witness)

    def halved(self) -> "Breakpoint":
        return self.refined(self.width / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        if self.is_exact:
            return format_rational(self.lo)
        return f"({format_rational(self.lo)}, {format_rational(self.hi)})"


@dataclass(frozen=True)
class EnvelopeSegment:
    """Open interval (lo, hi) with the polynomials attaining the envelope on it.

    ``lo == hi`` marks an isolated point where a second polynomial touches
    the envelope without overtaking it.
    """

    lo: Breakpoint
    hi: Breakpoint
    polys: tuple[UniPoly, ...]
    codes: tuple[int | None, ...]

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class TransitionDiagram:
    n: int | None
    x_lo: Fraction
    x_hi: Fraction
    segments: tuple[EnvelopeSegment, ...]
    candidate_restricted: bool = False
    rounds: int = field(default=0, compare=False)

    @property
    def breakpoints(self) -> list[Breakpoint]:
        return [s.hi for s in self.segments[:-1] if not s.is_point]

    def segment_at(self, x: Rational) -> EnvelopeSegment:
        """The open segment whose rational bounds certainly contain x."""
        x = as_fraction(x)
        for seg in self.segments:
            if not seg.is_point and seg.lo.hi < x < seg.hi.lo:
                return seg
        raise ValueError(f"{x} is not safely inside a segment; refine the breakpoints")

    def serialize(self) -> str:
        out = [f"n: {self.n if self.n is not None else '-'}",
               f"window: {format_rational(self.x_lo)} {format_rational(self.x_hi)}",
               f"candidateRestricted: {str(self.candidate_restricted).lower()}",
               f"segments: {len(self.segments)}"]
        for seg in self.segments:
            kind = "point" if seg.is_point else "segment"
            out.append(f"{kind}: lo={_bp_text(seg.lo)} hi={_bp_text(seg.hi)}")
            for q, c in zip(seg.polys, seg.codes):
                coeffs = " ".join(str(v) for v in q.coeffs) or "0"
                out.append(f"  poly: {coeffs} | code: {'-' if c is None else c}")
        return "\n".join(out) + "\n"


def _bp_text(bp: Breakpoint) -> str:
    if bp.is_exact:
        return format_rational(bp.lo)
    return f"[{format_rational(bp.lo)},{format_rational(bp.hi)};" + " ".join(map(str, bp.witness.coeffs)) + "]"


# --------------------------------------------------------------------------
# exact point tests


def _root_at(d: UniPoly, bp: Breakpoint) -> bool:
    """Whether d vanishes at the point bp."""
    if bp.is_exact:
        return d.sign_at(bp.lo) == 0
    g = poly_gcd(d, bp.witness)
    if g.degree < 1:
        return False
    # g divides the witness, so it is nonzero at the interval ends
    return sturm_count(sturm_sequence(squarefree_part(g)), bp.lo, bp.hi) > 0


def _same_root(a: Breakpoint, b: Breakpoint) -> bool:
    if a.is_exact and b.is_exact:
        return a.lo == b.lo
    if a.is_exact:
        # the witness has exactly one root inside its interval
        return b.lo < a.lo < b.hi and b.witness.sign_at(a.lo) == 0
    if b.is_exact:
        return _same_root(b, a)
    L, H = max(a.lo, b.lo), min(a.hi, b.hi)
    if L >= H:
        return False
    g = poly_gcd(a.witness, b.witness)
    if g.degree < 1:
        return False
    return sturm_count(sturm_sequence(squarefree_part(g)), L, H) > 0


def _overlap(a: Breakpoint, b: Breakpoint) -> bool:
    """Whether the closed hulls of a and b meet (so their order is not yet known)."""
    return not (a.hi < b.lo or b.hi < a.lo)


def _separate(points: list[Breakpoint]) -> list[Breakpoint]:
    """Sort, merge equal roots and refine until all hulls are disjoint."""
    pts = sorted(points, key=lambda p: (p.lo, p.hi))
    while True:
        changed = False
        out: list[Breakpoint] = []
        for p in pts:
            if out and _overlap(out[-1], p):
                q = out[-1]
                if _same_root(q, p):
                    out[-1] = min(q, p, key=lambda b: (not b.is_exact, b.width))
                    changed = True
                    continue
                out[-1] = q if q.is_exact else q.halved()
                p = p if p.is_exact else p.halved()
                changed = True
            out.append(p)
        pts = sorted(out, key=lambda p: (p.lo, p.hi))
        if not changed:
            return pts


def _positive_between(d: UniPoly, left: Breakpoint, right: Breakpoint) -> bool:
    """Whether d > 0 on the open interval between the points left < right."""
    if d.is_zero():
        return False
    ds = squarefree_part(d)
    if ds.degree < 1:
        return d.lead > 0
    seq = sturm_sequence(ds)

    def shrink(bp: Breakpoint, inner_end: str) -> Fraction | None:
        # returns a rational inside (left, right) adjacent to bp, with no root of
        # ds between bp and it, or None if a root sits there
        if bp.is_exact:
            return bp.lo
        own = 1 if _root_at(ds, bp) else 0
        while True:
            end = bp.hi if inner_end == "hi" else bp.lo
            if ds.sign_at(end) == 0:
                return None
            if sturm_count(seq, bp.lo, bp.hi) - own == 0:
                return end
            bp = bp.halved()

    L = shrink(left, "hi")
    R = shrink(right, "lo")
    if L is None or R is None or not L < R:
        return False
    roots = sturm_count(seq, L, R)
    if right.is_exact and ds.sign_at(R) == 0:
        roots -= 1
    if roots:
        return False
    return d.sign_at((L + R) / 2) > 0


# --------------------------------------------------------------------------
# envelope kernel over an explicit finite list


def _cross_points(q: UniPoly, r: UniPoly, lo: Fraction, hi: Fraction) -> list[Breakpoint]:
    d = q * q - r * r
    if d.is_zero():
        return []
    out = []
    for iv in sturm_root_isolate(d, lo, hi):
        if iv.contains(lo) or iv.contains(hi):
            continue
        bp = Breakpoint.from_interval(iv)
        while not bp.is_exact and not (lo < bp.lo and bp.hi < hi):
            bp = bp.halved()
        out.append(bp)
    return out


def _pieces(polys: Sequence[UniPoly], lo: Fraction, hi: Fraction):
    """Exact envelope of |p| over ``polys`` on (lo, hi).

    Returns (left, right, winners) triples; winners are indices.  Touch
    points come back as zero-width triples.
    """
    if len(polys) == 1:
        return [(Breakpoint.exact(lo), Breakpoint.exact(hi), (0,))]
    pts: list[Breakpoint] = []
    for i, j in itertools.combinations(range(len(polys)), 2):
        pts.extend(_cross_points(polys[i], polys[j], lo, hi))
    bounds = [Breakpoint.exact(lo)] + _separate(pts) + [Breakpoint.exact(hi)]
    cells = []
    for a, b in zip(bounds, bounds[1:]):
        x = (a.hi + b.lo) / 2
        vals = [abs(poly_eval(p, x)) for p in polys]
        cells.append(max(range(len(polys)), key=lambda k: (vals[k], -k)))
    out = []
    start = bounds[0]
    for k, w in enumerate(cells):
        bp = bounds[k + 1]
        if k + 1 < len(cells) and cells[k + 1] == w:
            sq = polys[w] * polys[w]
            touching = [c for c in range(len(polys))
                        if c != w and _root_at(sq - polys[c] * polys[c], bp)]
            if not touching:
                continue
            out.append((start, bp, (w,)))
            out.append((bp, bp, tuple(sorted([w] + touching))))
            start = bp
            continue
        out.append((start, bp, (w,)))
        start = bp
    return out


def envelope_of(polys: Sequence[UniPoly], x_lo: Rational, x_hi: Rational,
                codes: Sequence[int | None] | None = None) -> TransitionDiagram:
    """Upper envelope of |p(x)| over an explicit list of integer polynomials."""
    lo, hi = as_fraction(x_lo), as_fraction(x_hi)
    if not lo < hi:
        raise ValueError("need x_lo < x_hi")
    polys = list(polys)
    codes = list(codes) if codes is not None else [None] * len(polys)
    segs = tuple(EnvelopeSegment(a, b, tuple(polys[k] for k in ws), tuple(codes[k] for k in ws))
                 for a, b, ws in _pieces(polys, lo, hi))
    return TransitionDiagram(None, lo, hi, segs)


# --------------------------------------------------------------------------
# pattern polynomials


@lru_cache(maxsize=None)
def distinct_polynomials(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(coeffs, codes): each distinct det polynomial (coeffs[:, j] of x^j) and its smallest code."""
    if n > FULL_MAX_N:
        raise BudgetExceeded(f"full polynomial deduplication is limited to n <= {FULL_MAX_N}")
    if 2 ** num_slots(n) > env_budget():
        raise BudgetExceeded(f"2^{num_slots(n)} patterns exceed the budget")
    codes, coeffs = enumerate_polynomials(n)
    uniq, inv = np.unique(coeffs, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    best = np.full(len(uniq), np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(best, inv, codes.astype(np.int64))
    uniq.setflags(write=False)
    best.setflags(write=False)
    return uniq, best


def _as_poly(row) -> UniPoly:
    return UniPoly(int(v) for v in row)


def _scaled_eval(M: np.ndarray, x: Fraction) -> np.ndarray:
    """den(x)^(m-1) * p(x) for each row p of M, as Python integers."""
    m = M.shape[1]
    a, b = x.numerator, x.denominator
    v = np.array([a**j * b ** (m - 1 - j) for j in range(m)], dtype=object)
    return M.astype(object) @ v


def _grid_winners(M: np.ndarray, lo: Fraction, hi: Fraction, grid: int) -> set[int]:
    won = set()
    for k in range(grid + 1):
        vals = np.abs(_scaled_eval(M, lo + (hi - lo) * Fraction(k, grid)))
        best = vals.max()
        won.update(int(i) for i in np.flatnonzero(vals == best))
    return won


class _Bounds:
    """Monotone bounds for |p| on [a, b] with 0 <= a: split p = E - O by coefficient sign."""

    def __init__(self, M: np.ndarray):
        self.E = np.where(M > 0, M, 0)
        self.O = np.where(M < 0, -M, 0)
        self.m = M.shape[1]

    def at(self, x: Fraction):
        return _scaled_eval(self.E, x), _scaled_eval(self.O, x)

    def lower_upper(self, a: Fraction, b: Fraction, idx: np.ndarray):
        """(lower bound of |p|, upper bound of |p|) on [a, b], scaled by a common positive factor."""
        Ea, Oa = (v[idx] for v in self.at(a))
        Eb, Ob = (v[idx] for v in self.at(b))
        fa = b.denominator ** (self.m - 1)
        fb = a.denominator ** (self.m - 1)
        Ea, Oa, Eb, Ob = Ea * fa, Oa * fa, Eb * fb, Ob * fb
        zero = np.zeros(len(idx), dtype=object)
        lower = np.maximum(np.maximum(Ea - Ob, Oa - Eb), zero)
        upper = np.maximum(Eb - Oa, Ob - Ea)
        return lower, upper


def _violators(M: np.ndarray, bounds: _Bounds, w: int, left: Breakpoint, right: Breakpoint,
               skip: set[int]) -> list[int]:
    """Indices whose |p| reaches |p_w| somewhere strictly between left and right."""
    others = np.array([i for i in range(len(M)) if i != w and i not in skip], dtype=np.int64)
    pending: list[tuple[Fraction, Fraction, np.ndarray, int]] = [(left.lo, right.hi, others, 0)]
    hard: set[int] = set()
    widx = np.array([w])
    while pending:
        a, b, idx, depth = pending.pop()
        if not len(idx):
            continue
        lw, _ = bounds.lower_upper(a, b, widx)
        _, ur = bounds.lower_upper(a, b, idx)
        open_ = idx[ur >= lw[0]]
        if not len(open_):
            continue
        if depth >= PREFILTER_DEPTH:
            hard.update(int(i) for i in open_)
            continue
        mid = (a + b) / 2
        pending.append((a, mid, open_, depth + 1))
        pending.append((mid, b, open_, depth + 1))
    pw = _as_poly(M[w])
    sq = pw * pw
    out = []
    for i in sorted(hard):
        pr = _as_poly(M[i])
        if not _positive_between(sq - pr * pr, left, right):
            out.append(i)
    return out


def _family_polys(n: int) -> list[tuple[UniPoly, int]]:
    out = []
    for fam in FAMILIES:
        if n < _MIN_N[fam] or (fam == "Wprime" and n % 2):
            continue
        p = family_pattern(fam, n)
        out.append((det_polynomial(p), p.code))
    return out


def envelope(n: int, x_lo: Rational, x_hi: Rational, restricted: bool | None = None,
             grid: int = GRID) -> TransitionDiagram:
    """Envelope of |q(x)| over all Binary patterns of size n on [x_lo, x_hi].

    With ``restricted`` (the default above n = 6) the candidates are the
    named families plus grid winners found by exhaustive search where the
    budget allows it, and the result is flagged as candidate-restricted.
    """
    lo, hi = as_fraction(x_lo), as_fraction(x_hi)
    if lo <= 0 or not lo < hi:
        raise ValueError("need 0 < x_lo < x_hi")
    if restricted is None:
        restricted = n > FULL_MAX_N
    if restricted:
        return _restricted_envelope(n, lo, hi, grid)

    M, codes = distinct_polynomials(n)
    bounds = _Bounds(M)
    cand = _grid_winners(M, lo, hi, grid)
    rounds = 0
    while True:
        rounds += 1
        order = sorted(cand)
        polys = [_as_poly(M[i]) for i in order]
        pieces = _pieces(polys, lo, hi)
        new: set[int] = set()
        for a, b, ws in pieces:
            if a == b:
                continue
            w = order[ws[0]]
            new.update(_violators(M, bounds, w, a, b, skip=cand))
        if not new:
            break
        cand |= new
    segs = tuple(EnvelopeSegment(a, b, tuple(polys[k] for k in ws), tuple(int(codes[order[k]]) for k in ws))
                 for a, b, ws in pieces)
    return TransitionDiagram(n, lo, hi, segs, False, rounds)


def _restricted_envelope(n: int, lo: Fraction, hi: Fraction, grid: int) -> TransitionDiagram:
    found: dict[UniPoly, int] = {}
    for q, c in _family_polys(n):
        found[q] = min(c, found.get(q, c))
    if 2 ** num_slots(n) <= env_budget():
        for k in range(grid + 1):
            rec = maximizer_at_ratio(n, lo + (hi - lo) * Fraction(k, grid))
            for p in rec.patterns():
                q = det_polynomial(p)
                found[q] = min(p.code, found.get(q, p.code))
    polys = sorted(found, key=lambda q: found[q])
    diag = envelope_of(polys, lo, hi, [found[q] for q in polys])
    return TransitionDiagram(n, lo, hi, diag.segments, True, 1)


# --------------------------------------------------------------------------
# derived quantities


@dataclass(frozen=True)
class EpsilonReport:
    """Right end of the both-swapped U's first segment beyond ratio 1."""

    n: int
    bound: Breakpoint
    transition_found: bool
    urc_first: bool

    def serialize(self) -> str:
        return "\n".join([f"n: {self.n}", f"ratio: {_bp_text(self.bound)}",
                          f"transitionFound: {str(self.transition_found).lower()}",
                          f"urcFirst: {str(self.urc_first).lower()}"]) + "\n"


def epsilon_of_n(n: int) -> EpsilonReport:
    """Supremum x* with the both-swapped U on the envelope over (1, x*).

    The window is [1, (4/5) n^2]; when no breakpoint occurs inside it the
    right edge is returned with ``transition_found`` false.
    """
    if not 4 <= n <= 6:
        raise ValueError("epsilon_of_n is available for 4 <= n <= 6")
    diag = envelope(n, 1, large_ratio_threshold(n))
    urc = det_polynomial(family_pattern("Urc", n))
    segs = diag.segments
    if urc not in segs[0].polys:
        return EpsilonReport(n, segs[0].lo, True, False)
    # touch points keep the polynomial on the envelope, so walk across them
    k = 0
    while k + 1 < len(segs) and urc in segs[k + 1].polys:
        k += 1
    return EpsilonReport(n, segs[k].hi, k + 1 < len(segs), True)


def maximizer_at_ratio(n: int, x: Rational, **kw) -> MaxRecord:
    """Exhaustive search at s = x, t = 1."""
    return search_max(SearchSpec(n, as_fraction(x), Binary(Fraction(1)), **kw))


def record_polynomials(rec: MaxRecord) -> set[UniPoly]:
    return {det_polynomial(p) for p in rec.patterns()}


@dataclass(frozen=True)
class MaximizerProfile:
    code: int
    t_count: int
    signs: tuple[int, ...]  # distinct signs of the nonzero terms of det

    @property
    def mixed(self) -> bool:
        return len(self.signs) > 1


def maximizer_profiles(rec: MaxRecord) -> list[MaximizerProfile]:
    """t-counts and term-sign profiles of every maximizer (reported, never asserted)."""
    out = []
    for p in rec.patterns():
        c = path_coefficients(p)
        signs = sorted({(-1) ** (p.n - l) for l, cl in enumerate(c, start=1) if cl})
        out.append(MaximizerProfile(p.code, p.t_count(), tuple(signs)))
    return out
