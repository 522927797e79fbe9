"""Command-line driver: build the affine and symplectic twisted codes,
verify them, export codewords, and recompute the headline table.

Exit codes: 0 all requested checks pass, 1 a check failed or an internal
consistency error was detected, 2 bad parameters or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .affine import AffineParams, build_affine_twisted
from .codes import CodewordFileError, min_distance_pairwise, read_code, write_code
from .symplectic import SymplecticSpace, TauConstructionError, build_symplectic_twisted, sp4_order


def _finish(build, args, family_params):
    report = build.report
    if args.out:
        code, _ = build
        write_code(args.out, code, report.family, family_params, r=report.reps)
    print(report.render(), end="")
    if args.report:
        report.write(args.report)
    if not report.all_pass():
        print(f"FAILED checks: {', '.join(report.failed())}", file=sys.stderr)
        return 1
    return 0


def cmd_affine(args):
    try:
        params = AffineParams(args.p, args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        build = build_affine_twisted(params, check=args.check)
        return _finish(build, args, {"p": args.p, "k": args.k})
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_symplectic(args):
    try:
        space = SymplecticSpace.create(args.n, args.poly)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if space.n > 2 and not args.allow_large:
        print(
            f"error: |Sp(4,2^{args.n})| = {sp4_order(space.q)} is over the size guard; "
            "pass --allow-large to force",
            file=sys.stderr,
        )
        return 2
    try:
        build = build_symplectic_twisted(space, check=args.check, allow_large=args.allow_large)
        return _finish(build, args, {"n": args.n, "poly": space.field.poly})
    except TauConstructionError as exc:
        print(f"outer automorphism construction failed: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_dist(args):
    try:
        code, _ = read_code(args.in_file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CodewordFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"delta={min_distance_pairwise(code)}")
    return 0


def _primes_upto(bound):
    return [p for p in range(3, bound + 1, 2) if all(p % d for d in range(3, p, 2))]


def cmd_table1(args):
    rows = []
    status = 0
    for p in _primes_upto(args.max_p):
        for k in range(2, p):
            try:
                build = build_affine_twisted(AffineParams(p, k), check="fast")
            except ValueError as exc:
                print(f"# skipping affine p={p} k={k}: {exc}", file=sys.stderr)
                continue
            r = build.report
            expected_gap = p * p - p
            ok = r.all_pass() and r.gap == expected_gap
            rows.append((f"affine(p={p},k={k})", r.reps, r.alphabet, r.delta_tw, r.gap, ok))
            status |= 0 if ok else 1
    for n in range(1, args.max_n + 1):
        space = SymplecticSpace.create(n)
        if n > 2:
            print(f"# skipping symplectic n={n}: over the size guard", file=sys.stderr)
            continue
        build = build_symplectic_twisted(space, check="fast")
        r = build.report
        expected_gap = 1 << (2 * n)
        ok = r.all_pass() and r.gap == expected_gap
        rows.append((f"Sp(4,2^{n})", r.reps, r.alphabet, r.delta_tw, r.gap, ok))
        status |= 0 if ok else 1
    print(f"{'T':<18} {'r':>4} {'q':>6} {'delta_tw':>9} {'gap':>6}  status")
    for name, reps, q, tw, gap, ok in rows:
        print(f"{name:<18} {reps:>4} {q:>6} {tw:>9} {gap:>6}  {'ok' if ok else 'DEVIATES'}")
    return status


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="twistcode",
        description="Twisted permutation codes from affine and symplectic groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("affine", help="build and verify an affine twisted code")
    pa.add_argument("--p", type=int, required=True, help="odd prime, p > k")
    pa.add_argument("--k", type=int, required=True, help="dimension, 2 <= k < p")
    pa.add_argument("--out", help="write the codeword file here")
    pa.add_argument("--report", help="write the key=value report here")
    pa.add_argument("--check", choices=("fast", "all"), default="fast")
    pa.set_defaults(func=cmd_affine)

    ps = sub.add_parser("symplectic", help="build and verify a symplectic twisted code")
    ps.add_argument("--n", type=int, required=True, help="field degree: q = 2^n")
    ps.add_argument("--poly", type=int, help="reduction polynomial bitmask (bit i = coeff of x^i)")
    ps.add_argument("--out", help="write the codeword file here")
    ps.add_argument("--report", help="write the key=value report here")
    ps.add_argument("--check", choices=("fast", "all"), default="fast")
    ps.add_argument("--allow-large", action="store_true", help="lift the n <= 2 size guard")
    ps.set_defaults(func=cmd_symplectic)

    pd = sub.add_parser("dist", help="pairwise minimum distance of a codeword file")
    pd.add_argument("in_file", help="codeword file (twistcode v1 format)")
    pd.set_defaults(func=cmd_dist)

    pt = sub.add_parser("table1", help="recompute the headline table rows")
    pt.add_argument("--max-p", type=int, default=5)
    pt.add_argument("--max-n", type=int, default=1)
    pt.set_defaults(func=cmd_table1)

    args = parser.parse_args(argv)
    return args.func(args)


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
