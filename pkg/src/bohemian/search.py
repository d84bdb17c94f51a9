"""Exhaustive maximum-|det| search over {0, t} and {0, ..., d} patterns.

Patterns are enumerated column by column.  After columns 1..k are fixed
the leading minors p_0..p_k are known, and appending column k+1 costs one
dot product per choice:

    p_{k+1} = sum_i a_{i,k+1} (-s)^(k+1-i) p_{i-1}

so every prefix state is expanded against all choices of the next column
with a single integer matrix product.  Rational s and t are scaled to a
common denominator first; values stay in int64 whenever an a-priori bound
allows it and fall back to Python integers (object arrays) otherwise.
"""
from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod
from typing import Callable, Sequence

import numpy as np

from .exact import Rational, as_fraction, format_rational, parse_rational
from .hessenberg import Binary, EntryPattern, Population, Range, num_slots, slot_index

DEFAULT_BUDGET = 2**30
_INT64_SAFE = 2**62
_CHUNK = 1 << 20


class BudgetExceeded(RuntimeError):
    pass


def env_budget() -> int:
    return int(os.environ.get("BOHEMIAN_BUDGET", DEFAULT_BUDGET))


def env_workers() -> int:
    return int(os.environ.get("BOHEMIAN_WORKERS", os.cpu_count() or 1))


# --------------------------------------------------------------------------
# templates


@dataclass(frozen=True)
class Template:
    """Binary pattern with some slots forced; ``free`` lists the open slots."""

    n: int
    fixed: tuple[tuple[int, int], ...]  # (slot, bit)
    free: tuple[int, ...]
    prime: bool = False

    def allowed(self) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = [(0, 1)] * num_slots(self.n)
        for slot, bit in self.fixed:
            out[slot] = (bit,)
        return out

    def fill(self, free_bits: Sequence[int], t: Rational = 1) -> EntryPattern:
        if len(free_bits) != len(self.free):
            raise ValueError(f"template has {len(self.free)} free slots")
        code = sum(bit << slot for slot, bit in self.fixed)
        code += sum(bit << slot for slot, bit in zip(self.free, free_bits))
        return EntryPattern(self.n, Binary(as_fraction(t)), code)

    def fills(self, t: Rational = 1):
        for bits in itertools.product((0, 1), repeat=len(self.free)):
            yield self.fill(bits, t)


def build_template(n: int, prime: bool = False) -> Template:
    """Forced structure of a large-ratio maximizer, free triangles left open.

    Row 1 is a run of t's, a run of zeros and a final t; a block of t's sits
    to the right of the upper-left free triangle; the last column is zero on
    the block rows and t below them.  Filling every free slot with 0 gives W
    (or Wprime when ``prime`` is set, even n only).
    """
    if n < 5:
        raise ValueError("template needs n >= 5")
    if prime and n % 2:
        raise ValueError("the primed template exists for even n only")
    k = (n - 1) // 2
    if n % 2:
        lead, last_block_row, block_cols = k, k + 1, range(k + 1, 2 * k + 1)
    elif not prime:
        lead, last_block_row, block_cols = k, k + 1, range(k + 1, 2 * k + 2)
    else:
        lead, last_block_row, block_cols = k + 1, k + 2, range(k + 2, 2 * k + 2)
    bits: dict[tuple[int, int], int | None] = {}
    for j in range(1, n + 1):
        bits[1, j] = 1 if (j <= lead or j == n) else 0
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            if j == n:
                bits[i, j] = 0 if i <= last_block_row else 1
            elif i <= last_block_row:
                bits[i, j] = 1 if j in block_cols else None
            else:
                bits[i, j] = None
    fixed, free = [], []
    for (i, j), b in bits.items():
        slot = slot_index(n, i, j)
        if b is None:
            free.append(slot)
        else:
            fixed.append((slot, b))
    return Template(n, tuple(sorted(fixed)), tuple(sorted(free)), prime)


# --------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class SearchSpec:
    n: int
    s: Fraction
    population: Population
    collect_all: bool = True
    workers: int = 1
    template: Template | None = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "s", as_fraction(self.s))
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.template is not None:
            if not isinstance(self.population, Binary):
                raise ValueError("templates apply to Binary populations only")
            if self.template.n != self.n:
                raise ValueError("template dimension differs from n")

    def allowed(self) -> list[tuple[int, ...]]:
        if self.template is not None:
            return self.template.allowed()
        return [tuple(range(self.population.base))] * num_slots(self.n)

    def space_size(self) -> int:
        return prod(len(a) for a in self.allowed())


@dataclass(frozen=True)
class MaxRecord:
    n: int
    s: Fraction
    population: Population
    max_abs: Fraction
    maximizers: tuple[int, ...]
    evaluated: int
    elapsed_ms: int = field(default=0, compare=False)

    @property
    def count(self) -> int:
        return len(self.maximizers)

    def patterns(self) -> list[EntryPattern]:
        return [EntryPattern(self.n, self.population, c) for c in self.maximizers]

    def serialize(self) -> str:
        return "\n".join([
            f"n: {self.n}",
            f"s: {format_rational(self.s)}",
            f"population: {self.population}",
            f"maxAbs: {format_rational(self.max_abs)}",
            f"count: {self.count}",
            f"maximizers: {' '.join(str(c) for c in self.maximizers)}",
            f"evaluated: {self.evaluated}",
            f"elapsedMs: {self.elapsed_ms}",
        ]) + "\n"

    @classmethod
    def parse(cls, text: str) -> "MaxRecord":
        f = {}
        for ln in text.splitlines():
            if ln.strip():
                key, _, val = ln.partition(":")
                f[key.strip()] = val.strip()
        kind, _, arg = f["population"].partition(" ")
        name, _, val = arg.partition("=")
        pop = Binary(parse_rational(val)) if kind == "binary" else Range(int(val))
        codes = tuple(int(c) for c in f["maximizers"].split())
        rec = cls(int(f["n"]), parse_rational(f["s"]), pop, parse_rational(f["maxAbs"]),
                  codes, int(f["evaluated"]), int(f.get("elapsedMs", 0)))
        if rec.count != int(f["count"]):
            raise ValueError("count field does not match the maximizer list")
        return rec


# --------------------------------------------------------------------------
# engine


@dataclass
class _Plan:
    n: int
    S: int                      # scaled subdiagonal (scalar mode)
    vals: list[int]             # scaled digit values
    base: int
    allowed: list[tuple[int, ...]]
    dtype: object
    code_dtype: object
    poly: bool = False          # symbolic s: states are coefficient vectors


def _scaled(s: Fraction, population: Population) -> tuple[int, list[int], int]:
    """Integer (S, values, L) with det(s, values) = det(S, scaled values) / L^n."""
    vals = population.values()
    L = lcm(s.denominator, *(v.denominator for v in vals))
    return int(s * L), [int(v * L) for v in vals], L


def _needs_object(n: int, S: int, vals: Sequence[int]) -> bool:
    V = max(1, max(abs(v) for v in vals))
    bound = [1]
    for k in range(1, n + 1):
        bound.append(sum(V * abs(S) ** (k - i) * bound[i - 1] for i in range(1, k + 1)))
    return bound[-1] >= _INT64_SAFE


def _make_plan(n, s, population, allowed, poly=False) -> _Plan:
    if poly:
        if not isinstance(population, Binary):
            raise ValueError("polynomial enumeration needs a Binary population")
        S, vals = 0, [0, 1]
    else:
        S, vals, _ = _scaled(as_fraction(s), population)
    base = population.base
    dtype = object if (not poly and _needs_object(n, S, vals)) else np.int64
    code_dtype = np.int64 if base ** num_slots(n) < 2**63 else object
    return _Plan(n, S, vals, base, allowed, dtype, code_dtype, poly)


def _column_table(plan: _Plan, k: int):
    """All admissible fillings of column k: (values (C, k), codes (C,))."""
    n, base = plan.n, plan.base
    slots = [slot_index(n, i, k) for i in range(1, k + 1)]
    choices = list(itertools.product(*(plan.allowed[sl] for sl in slots)))
    vals = np.array([[plan.vals[d] for d in ch] for ch in choices], dtype=plan.dtype).reshape(len(choices), k)
    codes = np.array([sum(d * base**sl for d, sl in zip(ch, slots)) for ch in choices], dtype=plan.code_dtype)
    return vals, codes


def _weights(plan: _Plan, P: np.ndarray, k: int) -> np.ndarray:
    """w_i = (-s)^(k-i) p_{i-1} for i = 1..k; P has shape (N, k, D)."""
    if plan.poly:
        W = np.zeros_like(P)
        D = P.shape[2]
        for i in range(1, k + 1):
            sh = k - i
            if sh < D:
                W[:, i - 1, sh:] = P[:, i - 1, :D - sh] * (-1) ** sh
        return W
    spow = np.array([(-plan.S) ** (k - i) for i in range(1, k + 1)], dtype=plan.dtype)
    return P * spow[None, :, None]


def _extend(plan: _Plan, P: np.ndarray, codes: np.ndarray, k: int):
    """Values of p_k for every prefix x column choice: (N, C, D) and codes (N, C)."""
    vals, ccodes = _column_table(plan, k)
    W = _weights(plan, P, k)
    new = np.matmul(W.transpose(0, 2, 1), vals.T).transpose(0, 2, 1)
    return new, codes[:, None] + ccodes[None, :]


def _prefix_states(plan: _Plan):
    """States after columns 1..n-1: P (N, n, D), codes (N,)."""
    D = plan.n if plan.poly else 1
    P = np.zeros((1, 1, D), dtype=plan.dtype)
    P[0, 0, 0] = 1
    codes = np.zeros(1, dtype=plan.code_dtype)
    for k in range(1, plan.n):
        new, c = _extend(plan, P, codes, k)
        N, C = c.shape
        P = np.concatenate([np.repeat(P, C, axis=0), new.reshape(N * C, 1, D)], axis=1)
        codes = c.reshape(-1)
    return P, codes


def _run_slice(plan: _Plan, part: int, parts: int, reducer: Callable, init):
    """Expand the last column over one contiguous slice of prefix states."""
    P, codes = _prefix_states(plan)
    N = len(codes)
    lo, hi = N * part // parts, N * (part + 1) // parts
    ncols = len(_column_table(plan, plan.n)[1])
    step = max(1, _CHUNK // max(ncols, 1))
    acc = init
    for a in range(lo, hi, step):
        b = min(hi, a + step)
        vals, c = _extend(plan, P[a:b], codes[a:b], plan.n)
        acc = reducer(acc, vals, c)
    return acc


def _dispatch(plan, parts, reducer, init, merge):
    if parts == 1:
        return _run_slice(plan, 0, 1, reducer, init)
    with ProcessPoolExecutor(max_workers=min(parts, os.cpu_count() or 1)) as ex:
        futs = [ex.submit(_run_slice, plan, w, parts, reducer, init) for w in range(parts)]
        results = [f.result() for f in futs]
    acc = init
    for r in results:
        acc = merge(acc, r)
    return acc


# reducers must be module level so worker processes can pickle them

def _max_all(acc, vals, codes):
    best, found = acc
    a = np.abs(vals[:, :, 0])
    m = a.max()
    if best is None or m > best:
        return m, [codes[a == m]]
    if m == best:
        found = found + [codes[a == m]]
    return best, found


def _max_first(acc, vals, codes):
    best, found = acc
    a = np.abs(vals[:, :, 0])
    m = a.max()
    hit = codes[a == m].min()
    if best is None or m > best or (m == best and hit < found[0][0]):
        return m, [np.array([hit], dtype=codes.dtype)]
    return acc


def _merge_max(a, b):
    if a[0] is None:
        return b
    if b[0] is None or a[0] > b[0]:
        return a
    if b[0] > a[0]:
        return b
    return a[0], a[1] + b[1]


def search_max(spec: SearchSpec) -> MaxRecord:
    """Exact maximum of |det| over the whole (or template-restricted) space."""
    size = spec.space_size()
    if size > spec.budget:
        hint = "" if spec.template is not None else "; restrict with a template"
        raise BudgetExceeded(f"search space has {size} patterns, budget is {spec.budget}{hint}")
    start = time.perf_counter()
    plan = _make_plan(spec.n, spec.s, spec.population, spec.allowed())
    reducer = _max_all if spec.collect_all else _max_first
    best, found = _dispatch(plan, spec.workers, reducer, (None, []), _merge_max)
    codes = sorted(set(int(c) for arr in found for c in arr))
    if not spec.collect_all:
        codes = codes[:1]
    _, _, L = _scaled(spec.s, spec.population)
    elapsed = int((time.perf_counter() - start) * 1000)
    return MaxRecord(spec.n, spec.s, spec.population, Fraction(int(best), L**spec.n),
                     tuple(codes), size, elapsed)


def search_max_range(n: int, d: int, s: Rational, **kw) -> MaxRecord:
    return search_max(SearchSpec(n, as_fraction(s), Range(d), **kw))


def partitioned_search(spec: SearchSpec, workers: int) -> MaxRecord:
    """Same record as :func:`search_max`, computed over ``workers`` slices."""
    return search_max(SearchSpec(spec.n, spec.s, spec.population, spec.collect_all,
                                 workers, spec.template, spec.budget))


# --------------------------------------------------------------------------
# bulk enumeration helpers (used by tests, coefficient checks and envelopes)


def _collect(acc, vals, codes):
    acc.append((vals.reshape(-1, vals.shape[2]), codes.reshape(-1)))
    return acc


def enumerate_determinants(n: int, s: Rational, population: Population,
                           template: Template | None = None):
    """Every (code, scaled det) pair; returns (codes, dets, L) with det = dets / L^n."""
    allowed = template.allowed() if template else [tuple(range(population.base))] * num_slots(n)
    plan = _make_plan(n, as_fraction(s), population, allowed)
    parts = _run_slice(plan, 0, 1, _collect, [])
    _, _, L = _scaled(as_fraction(s), population)
    codes = np.concatenate([c for _, c in parts])
    dets = np.concatenate([v[:, 0] for v, _ in parts])
    return codes, dets, L


def enumerate_polynomials(n: int, template: Template | None = None):
    """Signed coefficient vectors of det/t^n in x = s/t for every Binary pattern.

    Returns (codes, coeffs) with coeffs[:, j] the coefficient of x^j.
    """
    allowed = template.allowed() if template else [(0, 1)] * num_slots(n)
    plan = _make_plan(n, 0, Binary(Fraction(1)), allowed, poly=True)
    parts = _run_slice(plan, 0, 1, _collect, [])
    codes = np.concatenate([c for _, c in parts])
    coeffs = np.concatenate([v for v, _ in parts])
    return codes, coeffs


def c3_when_c2_vanishes(n: int) -> tuple[int, int, int]:
    """Over all Binary patterns with c_2 = 0: (max c_3, patterns attaining it, patterns with c_2 = 0)."""
    if n < 3:
        raise ValueError("need n >= 3")
    codes, coeffs = enumerate_polynomials(n)
    c2 = np.abs(coeffs[:, n - 2])
    c3 = np.abs(coeffs[:, n - 3])
    mask = c2 == 0
    best = int(c3[mask].max())
    return best, int((c3[mask] == best).sum()), int(mask.sum())
