"""Command line surface: thinbasis <command> [args].

Commands
  member N           membership verdict for N ("true" / "false")
  represent N        certified pair "a a'" with a + a' = N
  sigma N            representation counts plus the analytic bound
  digits N           mixed-radix expansion of N, most significant digit first
  enumerate N        every member up to N, one per line
  verify-modular P   exhaustive modular census for every valid prime <= P
  verify-basis N     whole-range checks: coverage, certified pairs, bound, oracle
  growth N STEP      CSV of windowed representation-count maxima

Global flags --regime linear|exp and --c RATIONAL pick the growth schedule;
--cap presizes the digit capacity.  All numeric arguments are decimal
strings of unbounded size.

Exit codes: 0 success / verified, 1 verification failure, 2 usage or
capacity error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .basis import BRUTE_CAP, ENUM_CAP, BasisContext
from .errors import CapacityError
from .modular import EXHAUSTIVE_CAP, ap_enumerate, ap_verify
from .primes import EXPONENTIAL, LINEAR, GrowthSpec, is_prime

VERIFY_CAP = 10**6
GROWTH_CAP = 10**6


def _parse_n(text: str, what: str = "argument") -> int:
    if not (text.isascii() and text.isdigit()):
        raise ValueError(f"{what} must be a nonnegative decimal integer, got {text!r}")
    return int(text)


def _make_context(args: argparse.Namespace) -> BasisContext:
    if args.regime == LINEAR:
        growth = GrowthSpec.linear()
    else:
        growth = GrowthSpec.exponential(Fraction(args.c))
    return BasisContext.create(growth, capacity_digits=max(1, args.cap or 1))


def _cmd_member(args: argparse.Namespace) -> int:
    n = _parse_n(args.n)
    ctx = _make_context(args)
    ctx.ensure_capacity_for(n)
    print("true" if ctx.contains(n) else "false")
    return 0


def _cmd_represent(args: argparse.Namespace) -> int:
    n = _parse_n(args.n)
    ctx = _make_context(args)
    ctx.ensure_capacity_for(n)
    rep = ctx.represent(n)
    print(f"{rep.a} {rep.a_prime}")
    return 0


def _cmd_sigma(args: argparse.Namespace) -> int:
    n = _parse_n(args.n)
    ctx = _make_context(args)
    ctx.ensure_capacity_for(n)
    if args.method == "brute":
        brute = ctx.sigma_bruteforce(n)
        print(f"brute={brute} bound={ctx.sigma_bound(n)}")
        return 0
    report = ctx.sigma_report(n, include_brute=args.method == "both")
    if report.brute is None:
        print(f"exact={report.exact} bound={report.bound}")
        return 0
    print(f"exact={report.exact} brute={report.brute} bound={report.bound}")
    return 0 if report.agree else 1


def _cmd_digits(args: argparse.Namespace) -> int:
    n = _parse_n(args.n)
    ctx = _make_context(args)
    ctx.ensure_capacity_for(n)
    print(str(ctx.to_digit_string(n)))
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    n = _parse_n(args.n)
    if n > ENUM_CAP:
        raise CapacityError(f"enumeration capped at {ENUM_CAP}, got {n}")
    ctx = _make_context(args)
    out = sys.stdout
    for member in ctx.enumerate_upto(n):
        out.write(f"{member}\n")
    return 0


def _cmd_verify_modular(args: argparse.Namespace) -> int:
    pmax = _parse_n(args.pmax)
    if pmax > EXHAUSTIVE_CAP:
        raise CapacityError(f"exhaustive modular census capped at p <= {EXHAUSTIVE_CAP}")
    print("p size min_sigma max_sigma seed_sup six_cover pass")
    all_ok = True
    count = 0
    for p in range(3, pmax + 1):
        if p % 8 not in (3, 5) or not is_prime(p):
            continue
        report = ap_verify(p)
        size = len(ap_enumerate(p))
        ok = report.ok
        all_ok &= ok
        count += 1
        print(
            f"{p} {size} {report.min_sigma} {report.max_sigma} "
            f"{report.b_sup_sigma} {str(report.six_cover_ok).lower()} {str(ok).lower()}"
        )
    print(f"primes={count} all_pass={str(all_ok).lower()}")
    return 0 if all_ok else 1


def _cmd_verify_basis(args: argparse.Namespace) -> int:
    nmax = _parse_n(args.nmax)
    if nmax > VERIFY_CAP:
        raise CapacityError(f"whole-range verification capped at {VERIFY_CAP}, got {nmax}")
    from . import bulk

    ctx = _make_context(args)
    report = bulk.verify_range(ctx, nmax)
    print(f"checked n in [0, {report.nmax}]")
    print(f"basis_cover: {'PASS' if report.sigma_min >= 1 else 'FAIL'} (min sigma = {report.sigma_min})")
    print(f"represent: {'PASS' if report.represent_ok else 'FAIL'}")
    print(f"bound: {'PASS' if report.bound_ok else 'FAIL'} (max sigma = {report.sigma_max})")
    print(
        f"oracle: {'PASS' if report.oracle_ok else 'FAIL'} "
        f"(prefix {report.oracle_prefix}, {report.oracle_samples} samples)"
    )
    for failure in report.failures:
        print(f"failure: {failure}")
    print("PASS" if report.all_ok else "FAIL")
    return 0 if report.all_ok else 1


def _cmd_growth(args: argparse.Namespace) -> int:
    nmax = _parse_n(args.nmax)
    step = _parse_n(args.step, "step")
    if step < 1:
        raise ValueError("step must be >= 1")
    if nmax > GROWTH_CAP:
        raise CapacityError(f"growth report capped at {GROWTH_CAP}, got {nmax}")
    from . import bulk

    ctx = _make_context(args)
    ctx.ensure_capacity_for(max(nmax, 1))
    rows = bulk.growth_rows(ctx, nmax, step)
    lines = ["N,max_sigma,bound"]
    lines.extend(f"{n},{m},{b}" for n, m, b in rows)
    content = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(content)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thinbasis",
        description="Explicit additive basis of order 2: membership, certified "
        "representations, exact counts, exhaustive verification.",
    )
    parser.add_argument(
        "--regime",
        choices=(LINEAR, EXPONENTIAL),
        default=LINEAR,
        help="growth schedule for the prime sequence (default linear)",
    )
    parser.add_argument(
        "--c",
        default="1/2",
        help="rate of the exponential schedule, as a rational like 1/2",
    )
    parser.add_argument(
        "--cap",
        type=int,
        default=None,
        help="presize the context to this many digit positions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", help="membership verdict")
    p.add_argument("n")
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("represent", help="certified pair a a' with a + a' = n")
    p.add_argument("n")
    p.set_defaults(func=_cmd_represent)

    p = sub.add_parser("sigma", help="representation counts and the analytic bound")
    p.add_argument("n")
    p.add_argument("--method", choices=("exact", "brute", "both"), default="exact")
    p.set_defaults(func=_cmd_sigma)

    p = sub.add_parser("digits", help="mixed-radix expansion, most significant first")
    p.add_argument("n")
    p.set_defaults(func=_cmd_digits)

    p = sub.add_parser("enumerate", help="all members up to n")
    p.add_argument("n")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify-modular", help="exhaustive modular census up to pmax")
    p.add_argument("pmax")
    p.set_defaults(func=_cmd_verify_modular)

    p = sub.add_parser("verify-basis", help="whole-range basis checks up to nmax")
    p.add_argument("nmax")
    p.set_defaults(func=_cmd_verify_basis)

    p = sub.add_parser("growth", help="CSV of windowed sigma maxima")
    p.add_argument("nmax")
    p.add_argument("step")
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.set_defaults(func=_cmd_growth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
