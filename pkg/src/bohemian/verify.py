"""Named verification suites tying the oracles, constructions, search and
envelope code together.  Every check is exact; reports are deterministic
for fixed flags (no timings, fixed seed).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Callable

from . import constructions as C
from . import oracles as O
from .exact import format_rational
from .hessenberg import (Binary, EntryPattern, HessMatrix, Range, coefficient_bound, det_exact,
                         det_polynomial, num_slots, path_coefficients, realize_matrix)
from .search import SearchSpec, build_template, c3_when_c2_vanishes, search_max
from .transitions import envelope, epsilon_of_n

SEED = 20240611
SUITES = ("caseI", "caseII", "caseIII", "negativeS", "constructions", "coefficients", "inequalities")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    anchor: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        tail = f" :: {self.detail}" if self.detail else ""
        return f"{tag} [{self.suite}] {self.name} <{self.anchor}>{tail}"


@dataclass
class RunReport:
    command: str
    inputs: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    def serialize(self) -> str:
        out = [f"command: {self.command}"]
        out += [f"{k}: {v}" for k, v in self.inputs.items()]
        out += [c.line() for c in self.checks]
        out.append(f"passed: {self.passed}")
        out.append(f"failed: {self.failed}")
        return "\n".join(out) + "\n"


def _fmt(v) -> str:
    return format_rational(v)


def _rand_ratio(rng: random.Random, lo: int = 1, hi: int = 12) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(lo, hi))


def _searched(n: int, s, population) -> Fraction:
    return search_max(SearchSpec(n, Fraction(s), population)).max_abs


class _Suite:
    def __init__(self, name: str, n_max: int, rng: random.Random):
        self.name, self.n_max, self.rng = name, n_max, rng
        self.checks: list[Check] = []

    def add(self, name: str, anchor: str, fn: Callable[[], tuple[bool, str]]):
        try:
            ok, detail = fn()
        except AssertionError as exc:
            ok, detail = False, f"assertion: {exc}"
        self.checks.append(Check(self.name, name, anchor, bool(ok), detail))


# --------------------------------------------------------------------------


def _case_i(S: _Suite):
    N, rng = S.n_max, S.rng
    ns = range(1, min(N, 6) + 1)

    def fib():
        got = [_searched(n, 1, Binary(1)) for n in ns]
        want = [O.max_case_i(n, 1, 1) for n in ns]
        return got == want == [1, 1, 2, 3, 5, 8][:len(got)], " ".join(map(_fmt, got))
    S.add("Fibonacci maxima over {0,1}, s = 1", "Fibonacci theorem", fib)

    def range2():
        got = [_searched(n, 1, Range(2)) for n in range(1, min(N, 5) + 1)]
        return got == [2, 4, 10, 24, 58][:len(got)], " ".join(map(_fmt, got))
    S.add("maxima over {0,1,2}, s = 1", "Pell-type theorem", range2)

    def grid_d():
        bad = [(d, n) for d in (3, 4) for n in range(1, min(N, 4) + 1)
               if _searched(n, 1, Range(d)) != O.max_case_i(n, 1, d)]
        return not bad, f"mismatches {bad}" if bad else "d = 3, 4 agree with K_n(s=1, t=d)"
    S.add("{0..d} maxima equal K_n with t = d", "linearity corollary", grid_d)

    def k_vs_u():
        for _ in range(10):
            t = _rand_ratio(rng)
            s = t * Fraction(rng.randint(1, 10), 10)
            for n in range(1, N + 1):
                if O.max_case_i(n, s, t) != abs(C.det_u(n, s, t)) or abs(C.det_u(n, s, t)) != abs(det_exact(C.build("U", n, s, t))):
                    return False, f"n={n} s={_fmt(s)} t={_fmt(t)}"
        return True, f"10 random pairs, n <= {N}"
    S.add("K_n equals |det U|", "small-ratio theorem", k_vs_u)

    pairs = []
    for _ in range(4):
        t = _rand_ratio(rng)
        pairs.append((t * Fraction(rng.randint(1, 10), 10), t))
    maxima = {(s, t): [Fraction(1)] + [_searched(n, s, Binary(t)) for n in range(1, min(N, 5) + 1)]
              for s, t in pairs}

    def search_vs_k():
        for (s, t), M in maxima.items():
            if M != O.k_sequence(len(M) - 1, s, t):
                return False, f"s={_fmt(s)} t={_fmt(t)}"
        return True, f"{len(pairs)} random pairs, n <= {min(N, 5)}"
    S.add("searched maxima equal K_n for 0 < s <= t", "small-ratio theorem", search_vs_k)

    S.add("growth M_n >= t M_(n-1)", "growth lemma",
          lambda: (all(O.lower_growth_holds(M, t) for (s, t), M in maxima.items()), "searched maxima"))

    def split():
        for (s, t), M in maxima.items():
            for n in range(2, len(M)):
                if M[n] > O.split_bound(M, n, s, t):
                    return False, f"n={n} s={_fmt(s)} t={_fmt(t)}"
        return True, "searched maxima"
    S.add("split upper bound on M_n", "split bound", split)

    def paired():
        count = 0
        for (s, t), M in maxima.items():
            for n in range(2, len(M)):
                for _ in range(20):
                    up = [t * Fraction(rng.randint(0, 4), 4) for _ in range(num_slots(n))]
                    if not O.pair_bound_holds(HessMatrix(n, s, tuple(up)), t, M):
                        return False, f"n={n} s={_fmt(s)} t={_fmt(t)}"
                    count += 1
        return True, f"{count} random matrices over [0, t]"
    S.add("paired-term bound on the double expansion", "paired-term lemma", paired)

    def expansions():
        for _ in range(10):
            s, t = _rand_ratio(rng), _rand_ratio(rng)
            K = O.k_sequence(N, s, t)
            for n in range(1, N + 1):
                if K[n] != O.k_expansion_odd(K, n, s, t):
                    return False, f"odd-step form, n={n}"
                if n >= 2 and K[n] != O.k_expansion_paired(K, n, s, t):
                    return False, f"paired form, n={n}"
        return True, "10 random (s, t)"
    S.add("K_n expansions", "K-sequence lemmas", expansions)


def _negative_s(S: _Suite):
    N = S.n_max

    def run():
        for s in (-1, -2):
            for t in (1, 3):
                for n in range(1, min(N, 5) + 1):
                    got = _searched(n, s, Binary(t))
                    if got != O.max_negative_s(n, s, t):
                        return False, f"n={n} s={s} t={t}: {_fmt(got)}"
        return True, f"s in {{-1,-2}}, t in {{1,3}}, n <= {min(N, 5)}"
    S.add("maxima t(t - s)^(n-1)", "negative-subdiagonal theorem", run)


def _case_ii(S: _Suite):
    N, rng = S.n_max, S.rng
    for x in (Fraction(1), Fraction(101, 100), Fraction(11, 10)):
        def run(x=x):
            vals = []
            for n in range(4, min(N, 6) + 1):
                got = _searched(n, x, Binary(1))
                if not got == abs(C.det_urc(n, x, 1)) == O.max_case_ii(n, x, 1):
                    return False, f"n={n}: search {_fmt(got)}, both-swapped {_fmt(abs(C.det_urc(n, x, 1)))}"
                vals.append(_fmt(got))
            return True, " ".join(vals)
        S.add(f"search max equals |det Urc| at ratio {_fmt(x)}", "slightly-above-one theorem", run)

    def equiv():
        for _ in range(10):
            t = _rand_ratio(rng)
            s = t * (1 + Fraction(rng.randint(0, 20), 10))
            for n in range(4, N + 1):
                if O.max_case_ii(n, s, t) != abs(C.det_urc(n, s, t)):
                    return False, f"n={n}"
        return True, f"10 random s >= t, n in [4, {N}]"
    S.add("seeded recurrence equals |det Urc|", "slightly-above-one theorem", equiv)

    if N >= 4:
        def transition():
            d = envelope(4, Fraction(1, 2), 2)
            bps = d.breakpoints
            ok = (len(bps) == 1 and bps[0].value == 1
                  and d.segments[0].polys == (det_polynomial(C.family_pattern("U", 4)),)
                  and d.segments[-1].polys == (det_polynomial(C.family_pattern("Urc", 4)),))
            return ok, f"breakpoints {[str(b) for b in bps]}"
        S.add("n = 4 maximizer switches from U to Urc at ratio 1", "ratio-one transition", transition)
    for n in range(4, min(N, 6) + 1):
        def eps(n=n):
            r = epsilon_of_n(n)
            tag = "transition" if r.transition_found else "no transition found up to"
            return r.urc_first, f"{tag} {r.bound}"
        S.add(f"measured right end of the Urc range, n = {n}", "epsilon(n) measurement", eps)


def _case_iii(S: _Suite):
    N, rng = S.n_max, S.rng
    for n in range(4, min(N, 6) + 1):
        def run(n=n):
            s = n * n
            rec = search_max(SearchSpec(n, Fraction(s), Binary(1)))
            w = C.family_pattern("W", n).code
            ok = rec.max_abs == O.max_case_iii(n, s, 1) and w in rec.maximizers
            return ok, f"maxAbs {_fmt(rec.max_abs)}, count {rec.count}"
        S.add(f"search max at s = n^2, n = {n}", "large-ratio theorem", run)
    if N >= 6:
        def obs():
            rec = search_max(SearchSpec(6, Fraction(100), Binary(1)))
            fams = sorted(C.family_pattern(f, 6).code for f in ("W", "Wprime"))
            return (rec.max_abs == 10006000000 and list(rec.maximizers) == fams,
                    f"maxAbs {_fmt(rec.max_abs)}, maximizers {list(rec.maximizers)}")
        S.add("n = 6, s = 100 exhaustive record", "2^21 exhaustive observation", obs)

    def equiv():
        for _ in range(10):
            t = _rand_ratio(rng)
            for n in range(3, N + 1):
                s = t * (O.large_ratio_threshold(n) + _rand_ratio(rng))
                if O.max_case_iii(n, s, t) != abs(C.det_w(n, s, t)):
                    return False, f"n={n}"
        return True, f"10 random t, n in [3, {N}]"
    S.add("large-ratio formula equals |det W|", "large-ratio theorem", equiv)


def _constructions(S: _Suite):
    N, rng = S.n_max, S.rng
    pts = [(_rand_ratio(rng), _rand_ratio(rng)) for _ in range(20)]
    checks = [
        ("U recurrence equals det", "U construction", "U", 1, lambda n, s, t: C.det_u(n, s, t)),
        ("row-swapped U identity", "row swap", "Ur", 4, C.det_ur),
        ("column-swapped U identity", "column swap", "Uc", 4, C.det_uc),
        ("both-swapped closed form and recurrence", "both-swapped recurrence", "Urc", 4, C.det_urc),
        ("V closed form", "V determinant", "V", 2, C.det_v),
        ("W closed form and recurrence link", "W determinant", "W", 3, C.det_w),
    ]
    for name, anchor, fam, lo, fn in checks:
        def run(fam=fam, lo=lo, fn=fn):
            for s, t in pts:
                for n in range(lo, N + 1):
                    val = fn(n, s, t)
                    if fam == "U" and val != det_exact(C.build("U", n, s, t)):
                        return False, f"n={n} s={_fmt(s)} t={_fmt(t)}"
            return True, f"20 random (s, t), n in [{lo}, {N}]"
        S.add(name, anchor, run)

    def patterns():
        bad = []
        for fam in C.FAMILIES:
            for n in range(C._MIN_N[fam], N + 1):
                if fam == "Wprime" and n % 2:
                    continue
                p = C.family_pattern(fam, n)
                if realize_matrix(p, 7) != C.build(fam, n, 7, 1):
                    bad.append((fam, n))
        return not bad, f"mismatches {bad}" if bad else "all families"
    S.add("family patterns realize the built matrices", "pattern encoding", patterns)

    def swap_signs():
        # observed only; nothing about these signs is asserted
        seen = {}
        for s, t in pts[:5]:
            for n in range(4, N + 1):
                for fam, fn in (("Ur", C.det_ur), ("Uc", C.det_uc)):
                    seen.setdefault((fam, n), set()).add("+" if fn(n, s, t) > 0 else "-")
        return True, " ".join(f"{f}{n}:{''.join(sorted(v))}" for (f, n), v in sorted(seen.items()))
    S.add("signs of the single-swap determinants (report)", "swap signs", swap_signs)


def _coefficients(S: _Suite):
    N, rng = S.n_max, S.rng

    def reconstruct():
        for _ in range(200):
            n = rng.randint(1, N)
            p = EntryPattern(n, Binary(1), rng.randrange(2 ** num_slots(n)))
            c = path_coefficients(p)
            s = _rand_ratio(rng)
            det = sum((-1) ** (n - l) * cl * s ** (n - l) for l, cl in enumerate(c, start=1))
            if det != det_exact(realize_matrix(p, s)):
                return False, f"code {p.code}, n={n}"
            if any(cl > coefficient_bound(n, l) for l, cl in enumerate(c, start=1)):
                return False, f"bound exceeded, code {p.code}"
        return True, "200 random patterns"
    S.add("path coefficients rebuild det and respect C(n-1, l-1)", "path expansion", reconstruct)

    for n in range(4, min(N, 6) + 1):
        def brute(n=n):
            best, hits, total = c3_when_c2_vanishes(n)
            return best == O.coeff_bound_s3(n) and hits > 0, f"max c_3 {best}, attained {hits}x among {total}"
        S.add(f"c_2 = 0 forces c_3 <= floor bound, n = {n}", "chessboard lemma", brute)

    def table():
        rows = [(n, O.chessboard_min_black(n), O.coeff_bound_s3(n)) for n in range(3, max(N, 9) + 1)]
        ok = O.chessboard_min_black(9) == 12 and O.chessboard_min_black(8) == 9
        ok &= O.coeff_bound_s3(9) == 16 and O.coeff_bound_s3(8) == 12
        return ok, " ".join(f"{n}:{b}/{c}" for n, b, c in rows)
    S.add("chessboard counts (n:black/bound)", "chessboard count", table)

    if N >= 5:
        def w_terms():
            bad = [n for n in range(3, N + 1) if any(cl for l, cl in enumerate(path_coefficients(C.family_pattern("W", n)), 1) if l not in (1, 3))]
            return not bad, f"W has only l in {{1, 3}} terms for n in [3, {N}]"
        S.add("W path coefficients vanish outside l = 1, 3", "W determinant", w_terms)

    for n in range(5, min(N, 10) + 1):
        def growth(n=n):
            r = O.pathway_scan(n)
            return r.growth_ok and r.c2_zero, f"{r.fills} template fills"
        S.add(f"coefficient growth on template fills, n = {n}", "coefficient-growth lemma", growth)


def _inequalities(S: _Suite):
    N = S.n_max
    for n in range(2, N + 1):
        xs = sorted({Fraction(n), ceil(O.large_ratio_threshold(n)) + Fraction(1), Fraction(2 * n * n)})

        def table(n=n, xs=xs):
            cells = []
            for x in xs:
                h = O.regime_inequalities(n, x).holds
                cells.append(f"x={_fmt(x)}:" + "".join("T" if b else "F" for b in h))
            x0 = ceil(O.large_ratio_threshold(n)) + 1
            return all(O.regime_inequalities(n, x0).holds[:4]), " ".join(cells)
        S.add(f"five inequalities, n = {n}", "large-ratio inequalities", table)
    for n in range(4, min(N, 10) + 1):
        def path(n=n):
            r = O.pathway_scan(n)
            lit = O.regime_inequalities(n, n).holds[4]
            return r.ok, f"{r.fills} fills; literal fifth inequality at x = n: {'T' if lit else 'F'}"
        S.add(f"fifth inequality via the growth route at x = n, n = {n}", "large-ratio inequalities", path)


_RUNNERS = {"caseI": _case_i, "caseII": _case_ii, "caseIII": _case_iii, "negativeS": _negative_s,
            "constructions": _constructions, "coefficients": _coefficients, "inequalities": _inequalities}


def run_suite(suite: str, n_max: int = 6, seed: int = SEED) -> RunReport:
    if suite != "all" and suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    names = SUITES if suite == "all" else (suite,)
    report = RunReport(f"verify --suite {suite} --n-max {n_max}", {"seed": seed})
    for name in names:
        S = _Suite(name, n_max, random.Random(f"{seed}:{name}"))
        _RUNNERS[name](S)
        report.checks.extend(S.checks)
    return report
