"""Command-line driver: det, construct, oracle, search, poly, sweep, verify.

Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import constructions as C
from . import oracles as O
from .exact import UniPoly, format_rational, parse_rational
from .hessenberg import (Binary, EntryPattern, MatrixFormatError, Range, det_exact, det_polynomial,
                         format_matrix, parse_matrix, path_coefficients, realize_matrix,
                         trailing_minors)
from .search import BudgetExceeded, SearchSpec, build_template, env_budget, env_workers, search_max
from .transitions import envelope, envelope_of, epsilon_of_n, maximizer_profiles
from .verify import SUITES, run_suite

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    return parse_rational(text)


def _fmt(v) -> str:
    return format_rational(v)


def _emit(lines) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# commands


def cmd_det(args) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    m = parse_matrix(text)
    d = det_exact(m)
    H = trailing_minors(m)
    if args.machine:
        _emit([f"det: {_fmt(d)}", "trailing: " + " ".join(_fmt(h) for h in H)])
    else:
        _emit([_fmt(d)] + [f"  H_{k} = {_fmt(h)}" for k, h in enumerate(H, start=1)])
    return EXIT_OK


def cmd_construct(args) -> int:
    fam = {"U": C.det_u, "Ur": C.det_ur, "Uc": C.det_uc, "Urc": C.det_urc,
           "V": C.det_v, "W": C.det_w, "Wprime": C.det_w}
    m = C.build(args.family, args.n, args.s, args.t)
    d = det_exact(m)
    closed = fam[args.family](args.n, args.s, args.t)
    text = format_matrix(m)
    lines = [f"# family={args.family} n={args.n} s={_fmt(args.s)} t={_fmt(args.t)}",
             f"# det={_fmt(d)}", f"# abs(det)={_fmt(abs(d))}", f"# closed={_fmt(closed)}"]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n" + text)
        _emit([ln[2:] for ln in lines[1:]])
    else:
        sys.stdout.write("\n".join(lines) + "\n" + text)
    if d != closed:
        print("closed form disagrees with the exact determinant", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


_ORACLES = {"negativeS": O.max_negative_s, "caseI": O.max_case_i, "caseII": O.max_case_ii,
            "caseIII": O.max_case_iii}


def cmd_oracle(args) -> int:
    if args.what == "classify":
        tags = sorted(r.value for r in O.classify(args.n, args.s, args.t))
        _emit([f"regime: {' '.join(tags)}"])
    elif args.what == "max":
        fn = _ORACLES[args.regime]
        kw = {"force": True} if args.force and args.regime == "caseIII" else {}
        val = fn(args.n, args.s, args.t, **kw)
        out = [f"max: {_fmt(val)}"]
        if args.regime == "caseII" and args.s != args.t:
            out.append("certified: false")
        _emit(out)
    elif args.what == "chessboard":
        _emit([f"minBlack: {O.chessboard_min_black(args.n)}", f"boundS3: {O.coeff_bound_s3(args.n)}"])
    elif args.what == "inequalities":
        rep = O.regime_inequalities(args.n, args.x)
        _emit([f"ineq{k + 1}: {str(h).lower()}  lhs={_fmt(l)} rhs={_fmt(r)}"
               for k, (h, (l, r)) in enumerate(zip(rep.holds, rep.sides))])
    return EXIT_OK


def cmd_search(args) -> int:
    if args.d is not None and args.t is not None:
        raise UsageError("give either --t or --d, not both")
    pop = Range(args.d) if args.d is not None else Binary(args.t if args.t is not None else Fraction(1))
    tpl = build_template(args.n, prime=args.prime) if args.template else None
    spec = SearchSpec(args.n, args.s, pop, collect_all=args.all, workers=args.workers,
                      template=tpl, budget=env_budget())
    rec = search_max(spec)
    if args.machine:
        sys.stdout.write(rec.serialize())
    else:
        out = [f"n = {rec.n}, s = {_fmt(rec.s)}, {rec.population}",
               f"max |det| = {_fmt(rec.max_abs)}",
               f"maximizers ({rec.count}): {' '.join(map(str, rec.maximizers))}",
               f"evaluated {rec.evaluated} patterns in {rec.elapsed_ms} ms"]
        if isinstance(pop, Binary) and args.profile:
            for p in maximizer_profiles(rec):
                out.append(f"  code {p.code}: t-count {p.t_count}, term signs {list(p.signs)}")
        _emit(out)
    return EXIT_OK


def cmd_poly(args) -> int:
    if args.family:
        p = C.family_pattern(args.family, args.n, args.t)
    else:
        if args.code is None:
            raise UsageError("give --code or --family")
        p = EntryPattern(args.n, Binary(args.t), args.code)
    c = path_coefficients(p)
    q = det_polynomial(p)
    out = [f"code: {p.code}", "c: " + " ".join(map(str, c)), "poly: " + " ".join(map(str, q.coeffs))]
    if args.x is not None:
        out.append(f"value: {_fmt(q(args.x))}")
    if not args.machine:
        out.append(format_matrix(realize_matrix(p, Fraction(args.s))).rstrip())
    _emit(out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.epsilon:
        sys.stdout.write(epsilon_of_n(args.n).serialize())
        return EXIT_OK
    if args.x_lo is None or args.x_hi is None:
        raise UsageError("--x-lo and --x-hi are required")
    if args.poly:
        polys = [UniPoly(int(v) for v in p.split()) for p in args.poly]
        diag = envelope_of(polys, args.x_lo, args.x_hi)
    else:
        if args.n is None:
            raise UsageError("give --n or at least one --poly")
        diag = envelope(args.n, args.x_lo, args.x_hi, restricted=args.restricted or None)
    if args.refine_width is not None:
        from dataclasses import replace
        segs = tuple(replace(s, lo=s.lo.refined(args.refine_width), hi=s.hi.refined(args.refine_width))
                     for s in diag.segments)
        diag = replace(diag, segments=segs)
    sys.stdout.write(diag.serialize())
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = run_suite(args.suite, args.n_max)
    sys.stdout.write(rep.serialize())
    return EXIT_OK if rep.failed == 0 else EXIT_CHECK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bohemian", description="Exact maximal determinants of "
                                 "upper Hessenberg Bohemian matrices with constant subdiagonal.")
    ap.add_argument("--machine", action="store_true", help="structured key: value output")
    # repeated on every subcommand so the flag may follow it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", parents=[common], help="determinant and trailing minors of a matrix file")
    p.add_argument("file", help="matrix file, or - for stdin")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("construct", parents=[common], help="build a named family")
    p.add_argument("family", choices=C.FAMILIES)
    p.add_argument("n", type=int)
    p.add_argument("s", type=rational)
    p.add_argument("t", type=rational)
    p.add_argument("--out", help="write the matrix file here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("oracle", parents=[common], help="closed-form maxima, regimes and bounds")
    osub = p.add_subparsers(dest="what", required=True)
    q = osub.add_parser("classify", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=rational, required=True)
    q.add_argument("--t", type=rational, default=Fraction(1))
    q = osub.add_parser("max", parents=[common])
    q.add_argument("--regime", choices=sorted(_ORACLES), required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=rational, required=True)
    q.add_argument("--t", type=rational, default=Fraction(1))
    q.add_argument("--force", action="store_true", help="evaluate the large-ratio formula below its threshold")
    q = osub.add_parser("chessboard", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q = osub.add_parser("inequalities", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--x", type=rational, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("search", parents=[common], help="exhaustive maximum |det|")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=rational, required=True)
    p.add_argument("--t", type=rational)
    p.add_argument("--d", type=int)
    p.add_argument("--all", action="store_true", help="collect every maximizer")
    p.add_argument("--workers", type=int, default=env_workers())
    p.add_argument("--template", action="store_true", help="restrict to the large-ratio template")
    p.add_argument("--prime", action="store_true", help="use the primed template (even n)")
    p.add_argument("--profile", action="store_true", help="report t-counts and term signs")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("poly", parents=[common], help="path coefficients and det polynomial of a Binary pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--code", type=int)
    p.add_argument("--family", choices=C.FAMILIES)
    p.add_argument("--t", type=rational, default=Fraction(1))
    p.add_argument("--s", type=rational, default=Fraction(1), help="subdiagonal for the printed matrix")
    p.add_argument("--x", type=rational, help="evaluate the polynomial here")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("sweep", parents=[common], help="maximizer-versus-ratio envelope")
    p.add_argument("--n", type=int)
    p.add_argument("--x-lo", type=rational)
    p.add_argument("--x-hi", type=rational)
    p.add_argument("--refine-width", type=rational)
    p.add_argument("--poly", action="append", help="explicit polynomial, coefficients lowest first")
    p.add_argument("--restricted", action="store_true", help="candidate-restricted envelope")
    p.add_argument("--epsilon", action="store_true", help="right end of the both-swapped U range")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--n-max", type=int, default=6)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (MatrixFormatError, C.FamilyError, O.OracleDomainError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
