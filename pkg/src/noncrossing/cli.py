"""Command-line interface: ``noncrossing {count,verify,table,algo-a,constants}``.

Data goes to stdout, diagnostics to stderr. Exit status is 0 on success,
1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

import mpmath

from . import asymptotics as asym
from . import laurent_asym as la
from .bessel_series import fk_via_determinant
from .matchings import BRUTE_FORCE_LIMIT, count_bruteforce, count_tableaux, tableau_counts
from .scalars import to_float

PRECISION_ENV = "NONCROSSING_PRECISION"


def _k_value(text: str) -> int:
    k = int(text)
    if k < 2:
        raise argparse.ArgumentTypeError(f"k must be >= 2, got {k}")
    return k


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def _precision(text: str) -> int:
    bits = int(text)
    if bits < 53:
        raise argparse.ArgumentTypeError(f"precision must be >= 53 bits, got {bits}")
    return bits


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noncrossing",
        description="Exact counts and asymptotics of k-noncrossing perfect matchings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print f_k(n)")
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--method", choices=("brute", "tableau", "det", "all"), default="tableau")

    p = sub.add_parser("verify", help="cross-check the counters and the elimination invariants")
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--nmax", type=_nonneg, required=True)
    p.add_argument("--H", type=int, default=None)

    p = sub.add_parser("table", help="convergence table of f_k(n) against the asymptotic formula")
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--geometric", action="store_true", help="use n = 1, 2, 4, ... <= nmax")
    p.add_argument("--method", choices=asym.METHODS, default="tableau")
    p.add_argument("--format", choices=("csv", "json", "md"), default="csv")
    p.add_argument("--precision", type=_precision, default=None)
    p.add_argument("--output", type=Path, default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("algo-a", help="run the elimination and compare leading terms")
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--H", type=int, default=None)
    p.add_argument("--dump", type=Path, default=None, help="write the step-by-step JSON dump here")

    p = sub.add_parser("constants", help="print c_k', tilde c_k, c_k and the asymptotic form of F_k")
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--precision", type=_precision, default=None)
    return parser


def _cmd_count(args: argparse.Namespace, out) -> int:
    k, n = args.k, args.n
    if args.method == "brute":
        print(count_bruteforce(k, n), file=out)
        return 0
    if args.method == "tableau":
        print(count_tableaux(k, n), file=out)
        return 0
    if args.method == "det":
        print(fk_via_determinant(k, n)[n], file=out)
        return 0
    values = [count_bruteforce(k, n), count_tableaux(k, n), fk_via_determinant(k, n)[n]]
    agree = len(set(values)) == 1
    print(" ".join(map(str, values)), "AGREE" if agree else "DISAGREE", file=out)
    return 0 if agree else 1


def _report(out, name: str, problems: list[str]) -> bool:
    print(f"{'PASS' if not problems else 'FAIL'} {name}", file=out)
    for problem in problems[:10]:
        print(f"  {problem}", file=out)
    return not problems


def _cmd_verify(args: argparse.Namespace, out) -> int:
    k, nmax = args.k, args.nmax
    ok = True

    tableau = tableau_counts(k, nmax)
    det = fk_via_determinant(k, nmax)
    problems = [f"n={n}: tableau {a} != det {b}" for n, (a, b) in enumerate(zip(tableau, det)) if a != b]
    for n in range(min(nmax, BRUTE_FORCE_LIMIT) + 1):
        brute = count_bruteforce(k, n)
        if brute != tableau[n]:
            problems.append(f"n={n}: brute {brute} != tableau {tableau[n]}")
    ok &= _report(out, f"counters agree for n <= {nmax} (brute force up to {min(nmax, BRUTE_FORCE_LIMIT)})", problems)

    run = la.run_algorithm_a(k, args.H, capture_steps=True)
    ok &= _report(out, "leading terms of a_ij", la.leading_term_violations(run))
    ok &= _report(out, "symmetry and vanishing orders at every step", la.lemma_two_violations(run))
    ok &= _report(out, "entries settle after step max(i,j)-1", la.stability_violations(run))
    ok &= _report(out, "determinant unchanged by elimination", la.determinant_violations(run))

    try:
        la.gamma_halfint_det(k)
        problems = []
    except la.ClosedFormMismatch as exc:
        problems = [str(exc)]
    ok &= _report(out, "Gamma determinant closed form", problems)

    from_elim = la.theorem_a_from_elimination(k, args.H)
    closed = la.theorem_a_form(k)
    ok &= _report(
        out, "asymptotic form from elimination",
        [] if from_elim == closed else [f"{from_elim} != {closed}"],
    )
    print("OK" if ok else "FAILED", file=out)
    return 0 if ok else 1


def _n_values(nmax: int, geometric: bool) -> list[int]:
    if not geometric:
        return list(range(1, nmax + 1))
    values, n = [], 1
    while n <= nmax:
        values.append(n)
        n *= 2
    return values


def _cmd_table(args: argparse.Namespace, out) -> int:
    precision = args.precision or asym.DEFAULT_PRECISION
    rows = asym.convergence_table(
        args.k, _n_values(args.nmax, args.geometric), args.method, precision, args.jobs
    )
    render = {"csv": asym.table_to_csv, "json": asym.table_to_json, "md": asym.table_to_markdown}
    text = render[args.format](rows)
    if args.output:
        args.output.write_text(text)
    else:
        out.write(text)
    return 0


def _cmd_algo_a(args: argparse.Namespace, out) -> int:
    run = la.run_algorithm_a(args.k, args.H, capture_steps=args.dump is not None)
    ok = True
    print(f"k={run.k} H={run.H}", file=out)
    for i in range(1, run.k):
        for j in range(1, run.k):
            try:
                got = la.leading_term(run.entry(i, j))
            except la.ZeroPolynomialError:
                got = None
            want = la.lemma_leading_expected(i, j)
            match = got == want
            ok &= match
            shown = f"z^-{got[0]} * {got[1]}" if got else "0"
            print(f"a[{i},{j}] = {shown} + ...  expected z^-{want[0]} * {want[1]}  "
                  f"{'OK' if match else 'MISMATCH'}", file=out)
    if args.dump is not None:
        args.dump.write_text(json.dumps(la.algorithm_a_dump(run), indent=1) + "\n")
    return 0 if ok else 1


def _cmd_constants(args: argparse.Namespace, out) -> int:
    k = args.k
    precision = args.precision or asym.DEFAULT_PRECISION
    digits = 20

    def show(name: str, value) -> None:
        print(f"{name} = {value} ~ {mpmath.nstr(to_float(value, precision), digits)}", file=out)

    show("c_k'", asym.ck_prime(k))
    show("tilde_c_k", asym.tilde_ck(k))
    show("c_k", asym.ck(k))
    form = la.theorem_a_form(k)
    print(f"F_k(z) ~ {form}", file=out)
    spec = asym.gk_spec(k)
    print(f"g_k: base {spec.case_tag.value} at {spec.scale}z, p = {spec.p}", file=out)
    print("a_k,j (j=1..p): " + " ".join(str(a) for a in spec.subtraction), file=out)
    return 0


COMMANDS = {
    "count": _cmd_count,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "algo-a": _cmd_algo_a,
    "constants": _cmd_constants,
}


def _usage_problem(args: argparse.Namespace) -> str | None:
    if args.command in ("verify", "algo-a") and args.H is not None and args.H <= (args.k - 1) ** 2:
        return f"--H must exceed (k-1)^2 = {(args.k - 1) ** 2}"
    if args.command == "count" and args.method in ("brute", "all") and args.n > BRUTE_FORCE_LIMIT:
        return f"method {args.method!r} needs n <= {BRUTE_FORCE_LIMIT}"
    if args.command == "table":
        if args.nmax < 1:
            return "--nmax must be >= 1"
        if args.method == "brute" and args.nmax > BRUTE_FORCE_LIMIT:
            return f"method 'brute' needs --nmax <= {BRUTE_FORCE_LIMIT}"
        if args.jobs < 1:
            return "--jobs must be >= 1"
    if args.command in ("table", "constants") and args.precision is None:
        raw = os.environ.get(PRECISION_ENV)
        if raw is not None:
            try:
                args.precision = _precision(raw)
            except (ValueError, argparse.ArgumentTypeError):
                return f"{PRECISION_ENV}={raw!r} is not an integer >= 53"
    return None


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    problem = _usage_problem(args)
    if problem:
        print(f"noncrossing: error: {problem}", file=sys.stderr)
        return 2
    return COMMANDS[args.command](args, out)


if __name__ == "__main__":
    sys.exit(main())
