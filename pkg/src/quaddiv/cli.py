"""Command line front end.

Subcommands: rho, tausum, bound, scan, verify.  All numeric output is
CSV with header rows (or JSON where requested), floats are printed with
12 significant digits, and identical invocations produce byte-identical
stdout.  Exit codes: 0 success, 1 runtime or internal failure, 2
invalid input, 3 hypothesis not met.

The QUADDIV_SPF_CACHE environment variable may point to a directory
where smallest-prime-factor tables are memoized between runs.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import arith, bounds, divisor_sums, quadroots, verify
from .errors import HypothesisError, ResourceLimitError

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3


def _g(x: float) -> str:
    """Fixed float formatting: 12 significant digits."""
    return "%.12g" % x


@dataclass
class CliReport:
    """One command's outcome: echoed inputs, emitted lines, verdicts.

    wall_time is informational only and never serialized, so identical
    inputs keep identical output.
    """

    command: str
    inputs: dict[str, object]
    lines: list[str] = field(default_factory=list)
    verdicts: list[str] = field(default_factory=list)
    ok: bool = True
    wall_time: float = 0.0


def _cache_dir() -> str | None:
    return os.environ.get("QUADDIV_SPF_CACHE") or None


def _decomposition_from_args(args: argparse.Namespace) -> quadroots.DeltaDecomposition:
    if args.delta is not None:
        if args.b is not None or args.c is not None:
            raise ValueError("--delta and --b/--c are mutually exclusive")
        if args.delta < 1:
            raise ValueError("delta must be >= 1")
        r = math.isqrt(args.delta)
        if r * r != args.delta:
            raise ValueError(
                "delta=%d is not of the form ((b-c)/2)^2 for integers of equal parity"
                % args.delta)
        return quadroots.decompose_delta(-r, r)
    if args.b is None or args.c is None:
        raise ValueError("give either --delta or both --b and --c")
    return quadroots.decompose_delta(args.b, args.c)


def cmd_rho(args: argparse.Namespace) -> CliReport:
    rep = CliReport("rho", vars(args))
    if args.limit < 1:
        raise ValueError("limit must be >= 1")
    dec = _decomposition_from_args(args)
    vals = quadroots.rho_values_upto(args.limit, dec)
    if args.per_term:
        rep.lines.append("lambda,rho")
        for lam in range(1, args.limit + 1):
            rep.lines.append("%d,%d" % (lam, int(vals[lam])))
    else:
        rep.lines.append("delta,limit,sum")
        rep.lines.append("%d,%d,%d" % (dec.delta, args.limit, int(vals.sum())))
    return rep


def _chunk_edges(n: int, k: int) -> list[tuple[int, int]]:
    # split [1, n] into at most k contiguous chunks
    k = max(1, min(k, n))
    size, extra = divmod(n, k)
    edges = []
    lo = 1
    for i in range(k):
        hi = lo + size - 1 + (1 if i < extra else 0)
        edges.append((lo, hi))
        lo = hi + 1
    return edges


def cmd_tausum(args: argparse.Namespace) -> CliReport:
    rep = CliReport("tausum", vars(args))
    if args.limit < 1:
        raise ValueError("limit must be >= 1")
    quadroots.decompose_delta(args.b, args.c)
    threads = args.threads or os.cpu_count() or 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    table = arith.build_spf_table(max(2, args.limit - args.b), cache_dir=_cache_dir())
    chunks = _chunk_edges(args.limit, threads)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = pool.map(
            lambda lohi: divisor_sums.tau_quad_range_sum(args.b, args.c, *lohi, table),
            chunks)
        total = sum(parts)
    hyper = divisor_sums.tau_quad_sum_hyperbola(args.b, args.c, args.limit)
    rep.lines.append("b,c,limit,sum_factorization,sum_hyperbola")
    rep.lines.append("%d,%d,%d,%d,%d" % (args.b, args.c, args.limit, total, hyper))
    if total != hyper:
        print("internal error: computation paths disagree (%d vs %d)" % (total, hyper),
              file=sys.stderr)
        rep.ok = False
    return rep


_BOUND_FIELDS = ("b", "c", "N", "X", "C_omega", "C1_omega", "bound", "exact",
                 "dominates", "corollary_bound")


def _bound_values(r: bounds.BoundReport) -> dict[str, object]:
    return {
        "b": r.b, "c": r.c, "N": r.n,
        "X": r.x, "C_omega": r.c_omega, "C1_omega": float(r.c1_omega),
        "bound": r.bound, "exact": r.exact, "dominates": r.dominates,
        "corollary_bound": r.corollary_bound,
    }


def _json_scalar(v: object) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _g(v)
    return str(v)


def _csv_scalar(v: object) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _g(v)
    return str(v)


def _bound_plot_grid(c_star: int, n: int) -> list[int]:
    lo = max(2, c_star)
    ns = []
    v = lo
    while v < n:
        ns.append(v)
        v *= 2
    ns.append(n)
    return ns


def cmd_bound(args: argparse.Namespace) -> CliReport:
    rep = CliReport("bound", vars(args))
    if args.limit < 1:
        raise ValueError("limit must be >= 1")
    report = bounds.dominance_report(args.b, args.c, args.limit)
    vals = _bound_values(report)
    if args.format == "json":
        body = ", ".join('"%s": %s' % (k, _json_scalar(vals[k])) for k in _BOUND_FIELDS)
        rep.lines.append("{%s}" % body)
    else:
        rep.lines.append(",".join(_BOUND_FIELDS))
        rep.lines.append(",".join(_csv_scalar(vals[k]) for k in _BOUND_FIELDS))
    if args.plot:
        from . import plots
        dec = quadroots.decompose_delta(args.b, args.c)
        if args.limit < dec.c_star:
            raise ValueError("nothing to plot: limit is below the first summand")
        curve = [bounds.dominance_report(args.b, args.c, n)
                 for n in _bound_plot_grid(dec.c_star, args.limit)]
        out = plots.plot_bounds(curve, args.plot)
        print("plot written: %s" % out, file=sys.stderr)
    return rep


def _scan_grid(args: argparse.Namespace) -> list[int]:
    if args.from_ > args.to:
        raise ValueError("--from must not exceed --to")
    if args.grid == "geometric":
        if args.factor < 2:
            raise ValueError("geometric grid needs --factor >= 2")
        ns = []
        v = args.from_
        while v <= args.to:
            ns.append(v)
            v *= args.factor
        return ns
    if args.step is None or args.step < 1:
        raise ValueError("linear grid needs --step >= 1")
    return list(range(args.from_, args.to + 1, args.step))


def cmd_scan(args: argparse.Namespace) -> CliReport:
    rep = CliReport("scan", vars(args))
    grid = _scan_grid(args)
    table = divisor_sums.asymptotic_scan(args.b, args.c, grid)
    rep.lines.append("N,S,ratio")
    for n, s, ratio in table.rows:
        rep.lines.append("%d,%d,%s" % (n, s, _g(ratio)))
    if args.fit:
        a, a1, a0 = divisor_sums.fit_leading_coefficient(table)
        rep.lines.append("a=%s,a1=%s,a0=%s" % (_g(a), _g(a1), _g(a0)))
    if args.plot:
        from . import plots
        out = plots.plot_scan(table, args.plot)
        print("plot written: %s" % out, file=sys.stderr)
    return rep


def cmd_verify(args: argparse.Namespace) -> CliReport:
    rep = CliReport("verify", vars(args))
    res = verify.run_suite(args.suite, args.level)
    for desc, ok in res.checks:
        line = ("ok   " if ok else "FAIL ") + desc
        rep.lines.append(line)
        rep.verdicts.append(line)
    good = sum(1 for _, ok in res.checks if ok)
    rep.lines.append("suite %s (%s): %s [%d/%d]"
                     % (res.suite, res.level, "PASS" if res.passed else "FAIL",
                        good, len(res.checks)))
    rep.ok = res.passed
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quaddiv",
        description="Divisor sums of (n-b)(n-c): root counts, exact sums, "
                    "explicit bounds, asymptotic scans, self checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="root counts of x^2 = delta mod lambda")
    p.add_argument("--delta", type=int, default=None,
                   help="discriminant-quarter (b-c)^2/4; must be a perfect square")
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--limit", type=int, required=True, help="largest modulus")
    p.add_argument("--per-term", action="store_true", dest="per_term",
                   help="emit one CSV row per modulus instead of the sum")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("tausum", help="exact sum of tau((n-b)(n-c)) by two routes")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--threads", type=int, default=None,
                   help="parallel chunks (default: available parallelism)")
    p.set_defaults(func=cmd_tausum)

    p = sub.add_parser("bound", help="explicit upper bound vs the exact sum")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--plot", metavar="PNG", default=None,
                   help="also render bound vs exact curves to this file")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("scan", help="sample S(N)/(N ln^2 N) over a grid of N")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--from", type=int, required=True, dest="from_")
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--grid", choices=("geometric", "linear"), default="geometric")
    p.add_argument("--factor", type=int, default=2,
                   help="ratio between geometric grid points")
    p.add_argument("--step", type=int, default=None,
                   help="spacing of linear grid points")
    p.add_argument("--fit", action="store_true",
                   help="append a least-squares fit of the leading coefficients")
    p.add_argument("--plot", metavar="PNG", default=None,
                   help="also render the convergence plot to this file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run a named self-check suite")
    p.add_argument("--suite", choices=verify.SUITES, required=True)
    p.add_argument("--level", choices=verify.LEVELS, default="quick")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except HypothesisError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ResourceLimitError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RUNTIME
    except (MemoryError, OverflowError) as exc:
        print("out of resources: %s" % exc, file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    report.wall_time = time.perf_counter() - start
    for line in report.lines:
        print(line)
    return EXIT_OK if report.ok else EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
