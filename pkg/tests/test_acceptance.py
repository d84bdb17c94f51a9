"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Every comparison is exact.  Lines are collected in conftest.ACCEPTANCE_LINES
and shown in the terminal summary.
"""
import random
import time
from fractions import Fraction
from math import ceil

import pytest
from brute import leibniz_det
from conftest import ACCEPTANCE_LINES

from bohemian import constructions as C
from bohemian import oracles as O
from bohemian.cli import main
from bohemian.hessenberg import Binary, EntryPattern, HessMatrix, Range, det_exact, num_slots, realize_matrix, \
    trailing_minors
from bohemian.search import (MaxRecord, SearchSpec, _make_plan, _max_all, _merge_max, _run_slice,
                             c3_when_c2_vanishes, search_max)
from bohemian.transitions import det_polynomial, envelope

F = Fraction
SEED = 20240611

A1 = [[1, 1, 0, 0, 0, 1], [100, 0, 1, 1, 1, 0], [0, 100, 1, 1, 1, 0],
      [0, 0, 100, 0, 0, 1], [0, 0, 0, 100, 0, 1], [0, 0, 0, 0, 100, 1]]
A2 = [[1, 1, 1, 0, 0, 1], [100, 0, 0, 1, 1, 0], [0, 100, 0, 1, 1, 0],
      [0, 0, 100, 1, 1, 0], [0, 0, 0, 100, 0, 1], [0, 0, 0, 0, 100, 1]]


def record(num: int, ok: bool, text: str) -> None:
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} [{num:02d}] {text}")
    assert ok, text


def _max(n, s, pop):
    return search_max(SearchSpec(n, F(s), pop)).max_abs


def test_01_six_by_six_record_at_s_100(capsys):
    start = time.perf_counter()
    code = main(["search", "--n", "6", "--s", "100", "--t", "1", "--all", "--machine", "--workers", "1"])
    single = time.perf_counter() - start
    rec = MaxRecord.parse(capsys.readouterr().out)
    start = time.perf_counter()
    rec8 = search_max(SearchSpec(6, F(100), Binary(F(1)), workers=8))
    eight = time.perf_counter() - start
    decoded = sorted([[[int(v) for v in row] for row in realize_matrix(p, 100).rows()] for p in rec.patterns()])
    ok = (code == 0 and rec.max_abs == 10006000000 and rec.count == 2 and decoded == sorted([A1, A2])
          and rec8 == rec and single < 60 and eight < 15)
    record(1, ok, f"n=6 s=100: maxAbs {rec.max_abs}, {rec.count} maximizers {list(rec.maximizers)} "
                  f"decode to A_1, A_2; {single:.2f}s single, {eight:.2f}s with 8 workers")


def test_02_fibonacci_maxima():
    got = [_max(n, 1, Binary(F(1))) for n in range(1, 7)]
    ok = got == [1, 1, 2, 3, 5, 8] == [O.max_case_i(n, 1, 1) for n in range(1, 7)]
    record(2, ok, f"{{0,1}}, s=1, n=1..6: {', '.join(map(str, got))}")


def test_03_zero_one_two_maxima():
    start = time.perf_counter()
    got = [_max(n, 1, Range(2)) for n in range(1, 6)]
    el = time.perf_counter() - start
    record(3, got == [2, 4, 10, 24, 58] and el < 300,
           f"{{0,1,2}}, s=1, n=1..5: {', '.join(map(str, got))} in {el:.1f}s")


def test_04_small_ratio_maxima():
    rng = random.Random(f"{SEED}:04")
    pairs = []
    while len(pairs) < 10:
        s, t = F(rng.randint(1, 20), rng.randint(1, 20)), F(rng.randint(1, 20), rng.randint(1, 20))
        if s <= t:
            pairs.append((s, t))
    bad = [(n, s, t) for s, t in pairs for n in range(1, 6)
           if not _max(n, s, Binary(t)) == O.max_case_i(n, s, t) == abs(C.det_u(n, s, t))]
    grid = [(d, n) for d in (3, 4) for n in range(1, 5)
            if _max(n, 1, Range(d)) != O.k_sequence(n, 1, d)[n]]
    record(4, not bad and not grid, f"10 pairs s<=t (seed {SEED}), n<=5 and Range(3|4) n<=4; "
                                    f"mismatches {bad + grid}")


def test_05_negative_subdiagonal():
    bad = [(n, s, t) for s in (-1, -2) for t in (1, 3) for n in range(1, 6)
           if not _max(n, s, Binary(F(t))) == t * (t - s) ** (n - 1) == O.max_negative_s(n, s, t)]
    record(5, not bad, f"s in {{-1,-2}}, t in {{1,3}}, n<=5 equal t(t-s)^(n-1); mismatches {bad}")


def test_06_both_swapped_just_above_one():
    hard = [(n, x) for x in (F(1), F(101, 100)) for n in (4, 5, 6)
            if not _max(n, x, Binary(F(1))) == abs(C.det_urc(n, x, 1)) == O.max_case_ii(n, x, 1)]
    soft = [n for n in (4, 5, 6)
            if not _max(n, F(11, 10), Binary(F(1))) == abs(C.det_urc(n, F(11, 10), 1))]
    note = "11/10 holds for n=4,5,6" if not soft else f"11/10 fails for n={soft}: epsilon(n) < 1/10 there"
    record(6, not hard, f"ratios 1, 101/100 match |det Urc| for n=4,5,6; {note}")


def test_07_large_ratio_at_n_squared():
    bad = []
    for n in (4, 5, 6):
        s = n * n
        rec = search_max(SearchSpec(n, F(s), Binary(F(1))))
        want = s ** (n - 1) + (n // 2) * ((n - 1) // 2) * s ** (n - 3)
        if rec.max_abs != want or C.family_pattern("W", n).code not in rec.maximizers:
            bad.append(n)
    record(7, not bad, f"s=n^2, n=4,5,6: maximum equals the closed form, W code among maximizers; failures {bad}")


def test_08_closed_forms_and_recurrences():
    rng = random.Random(f"{SEED}:08")

    def rat():
        return F(rng.randint(-30, 30) or 1, rng.randint(1, 12))
    bad = []
    for n in range(1, 13):
        s, t = rat(), abs(rat())
        checks = {"U": C.det_u, "V": C.det_v, "W": C.det_w, "Urc": lambda n, s, t: C.urc_closed_form(n, s, t)}
        for fam, fn in checks.items():
            if n < C._MIN_N[fam]:
                continue
            val = det_exact(C.build(fam, n, s, t))
            if (abs(val) != abs(fn(n, s, t))) if fam == "Urc" else (val != fn(n, s, t)):
                bad.append((fam, n))
    for _ in range(20):
        n, s, t = rng.randint(4, 12), rat(), abs(rat())
        if C.w_step(n, s, t, C.w_closed_form(n - 1, s, t)) != C.w_closed_form(n, s, t):
            bad.append(("W recurrence", n))
        if C.urc_recurrence(n, s, t) != C.urc_closed_form(n, s, t):
            bad.append(("Urc recurrence", n))
    record(8, not bad, f"closed forms for U, V, W, Urc equal exact determinants n<=12; "
                       f"both recurrences at 20 points (seed {SEED}); failures {bad}")


def test_09_c3_bound_when_c2_vanishes():
    res = {n: c3_when_c2_vanishes(n) for n in (4, 5, 6)}
    ok = all(best == (n // 2) * ((n - 1) // 2) and hits > 0 for n, (best, hits, _) in res.items())
    record(9, ok, "max c_3 with c_2 = 0: " + ", ".join(f"n={n}: {b} ({h} patterns)" for n, (b, h, _) in res.items()))


def test_10_n4_transition_at_one():
    d = envelope(4, F(1, 2), 2)
    bps = d.breakpoints
    u, urc = (det_polynomial(C.family_pattern(f, 4)) for f in ("U", "Urc"))
    ok = (len(bps) == 1 and bps[0].value == 1 and len(d.segments) == 2
          and d.segments[0].polys == (u,) and d.segments[1].polys == (urc,))
    record(10, ok, f"n=4 on [1/2, 2]: breakpoints {[str(b) for b in bps]}, U_4 then Urc_4")


def test_11_large_ratio_inequalities():
    bad = []
    for n in range(2, 13):
        x = ceil(O.large_ratio_threshold(n)) + 1
        if not all(O.regime_inequalities(n, x).holds[:4]):
            bad.append(n)
    start = time.perf_counter()
    scans = {n: O.pathway_scan(n) for n in range(4, 13)}
    el = time.perf_counter() - start
    path_bad = [n for n, r in scans.items() if not r.ok]
    literal = "".join("T" if O.regime_inequalities(n, n).holds[4] else "F" for n in range(4, 13))
    record(11, not bad and not path_bad,
           f"first four true for n=2..12; fifth via coefficient growth true at x=n for n=4..12 "
           f"({sum(r.fills for r in scans.values())} template fills, {el:.0f}s); "
           f"literal fifth at x=n, n=4..12: {literal}")


def _rand_matrix(rng, n, lo=-6, hi=6):
    def r():
        return F(rng.randint(lo, hi), rng.randint(1, 6))
    return HessMatrix(n, r(), tuple(r() for _ in range(num_slots(n))))


CASES = 10**4


def test_12_property_suites():
    rng = random.Random(f"{SEED}:12")
    fails = {}
    # brute-force oracle
    fails["leibniz"] = sum(det_exact(m) != leibniz_det(m.rows())
                           for m in (_rand_matrix(rng, rng.randint(1, 5)) for _ in range(CASES)))
    # homogeneity
    bad = 0
    for _ in range(CASES):
        n = rng.randint(1, 8)
        code = rng.randrange(2 ** num_slots(n))
        s, t, lam = F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(1, 9), rng.randint(1, 5)), \
            F(rng.randint(1, 9), rng.randint(1, 5))
        a = det_exact(realize_matrix(EntryPattern(n, Binary(t), code), s))
        b = det_exact(realize_matrix(EntryPattern(n, Binary(lam * t), code), lam * s))
        bad += b != lam**n * a
    fails["homogeneity"] = bad
    # affine in each upper entry
    bad = 0
    for _ in range(CASES):
        m = _rand_matrix(rng, rng.randint(1, 7))
        i = rng.randint(1, m.n)
        j = rng.randint(i, m.n)
        a, b, c = (F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))
        da, db, dc = (det_exact(m.with_entry(i, j, v)) for v in (a, b, c))
        bad += (db - da) * (c - a) != (dc - da) * (b - a)
    fails["linearity"] = bad
    # trailing minors
    bad = 0
    for _ in range(CASES):
        m = _rand_matrix(rng, rng.randint(1, 7))
        H = trailing_minors(m)
        k = rng.randint(1, m.n)
        bad += H[k - 1] != det_exact(m.bottom_right(m.n + 1 - k)) or H[-1] != 1 or H[0] != det_exact(m)
    fails["trailing minors"] = bad
    # slice-and-merge determinism of the search
    bad = 0
    plans = {}
    for _ in range(CASES):
        n = rng.randint(1, 4)
        s = F(rng.randint(-5, 5), rng.randint(1, 3))
        key = (n, s)
        if key not in plans:
            plan = _make_plan(n, s, Binary(F(1)), [(0, 1)] * num_slots(n))
            whole = _run_slice(plan, 0, 1, _max_all, (None, []))
            plans[key] = (plan, whole[0], sorted(int(c) for a in whole[1] for c in a))
        plan, best, codes = plans[key]
        parts = rng.randint(2, 9)
        order = list(range(parts))
        rng.shuffle(order)
        acc = (None, [])
        for k in order:
            acc = _merge_max(acc, _run_slice(plan, k, parts, _max_all, (None, [])))
        bad += acc[0] != best or sorted(int(c) for a in acc[1] for c in a) != codes
    fails["partitioned search"] = bad
    record(12, not any(fails.values()),
           f"{CASES} cases each, seed {SEED}: " + ", ".join(f"{k} {v} failures" for k, v in fails.items()))
