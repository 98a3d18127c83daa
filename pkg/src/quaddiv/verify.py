"""Named self-check suites wired into the command line.

Each suite re-derives a family of results by an independent route and
compares: closed-form root counts against exhaustive congruence
solving, the Dirichlet-series identity against direct summation,
explicit bounds against exact sums.  quick keeps every suite under a
second; full pushes the same checks to the ranges used for acceptance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import arith, bounds, dirichlet, divisor_sums, quadroots

SUITES = ("rho-oracle", "convolution", "ramare", "c1", "euler", "dominance")
LEVELS = ("quick", "full")


@dataclass
class SuiteResult:
    suite: str
    level: str
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, description: str, ok: bool) -> None:
        self.checks.append((description, bool(ok)))

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok in self.checks)


def admissible_pairs(coeff_limit: int) -> list[tuple[int, int]]:
    """All (b, c) with |b|, |c| <= coeff_limit, b < c, even gap, and
    sigma_{-1}(Omega) <= 4/3."""
    out = []
    for b in range(-coeff_limit, coeff_limit + 1):
        for c in range(b + 2, coeff_limit + 1, 2):
            dec = quadroots.decompose_delta(b, c)
            if bounds.condition_check(dec.omega).passes:
                out.append((b, c))
    return out


def dominance_violations(coeff_limit: int, n_max: int) -> tuple[int, int]:
    """Count (pairs checked, N values where the explicit bound fails to
    dominate the exact sum) over every admissible pair and N <= n_max."""
    pairs = admissible_pairs(coeff_limit)
    bad = 0
    for b, c in pairs:
        dec = quadroots.decompose_delta(b, c)
        if dec.c_star > n_max:
            continue
        prefix = divisor_sums.tau_quad_prefix_exact(b, c, n_max)
        ns = np.arange(dec.c_star, n_max + 1, dtype=np.float64)
        x = np.sqrt((ns - b) * (ns - c))
        lx = np.log(x)
        C = bounds.big_c(dec.omega)
        bound = (2 * ns * (3 / math.pi**2 * lx**2 + (6 / math.pi**2 + C) * lx + C)
                 + 2 * x * (6 / math.pi**2 * lx + C))
        bad += int(np.count_nonzero(bound < prefix[dec.c_star:]))
    return len(pairs), bad


def _suite_rho_oracle(res: SuiteResult, level: str) -> None:
    rs = (1, 2, 3, 6) if level == "quick" else tuple(range(1, 11))
    dmax = 200 if level == "quick" else 1200
    for r in rs:
        dec = quadroots.decompose_delta(-r, r)
        ok = all(quadroots.rho(d, dec) == quadroots.rho_bruteforce(d, dec.delta)
                 for d in range(1, dmax + 1))
        res.add("closed-form rho matches exhaustive count, r=%d, d <= %d" % (r, dmax), ok)


def _suite_convolution(res: SuiteResult, level: str) -> None:
    rs = (1, 2, 3, 6) if level == "quick" else (1, 2, 3, 6, 10, 12, 15, 30)
    if level == "quick":
        for r in rs:
            dec = quadroots.decompose_delta(-r, r)
            ok = all(dirichlet.verify_identity(x, dec).equal for x in (10, 100, 1000))
            res.add("series identity holds at X in {10,100,1000}, r=%d" % r, ok)
    else:
        for r in rs:
            dec = quadroots.decompose_delta(-r, r)
            lhs, rhs = dirichlet.identity_prefix_sums(10_000, dec)
            res.add("series identity holds for all X <= 10000, r=%d" % r,
                    bool(np.array_equal(lhs, rhs)))


def _suite_ramare(res: SuiteResult, level: str) -> None:
    limit = 10_000 if level == "quick" else 1_000_000
    res.add("squarefree harmonic sums stay under (6/pi^2) ln x + 1.166, x <= %d" % limit,
            bounds.verify_ramare(limit))


def _suite_c1(res: SuiteResult, level: str) -> None:
    expected = [(3, True), (9, False), (25, True), (55, True), (15, False)]
    ok = all(bounds.condition_check(w).passes is v for w, v in expected)
    res.add("sigma_{-1} condition verdicts for Omega in {3,9,25,55,15}", ok)
    top = 1_000 if level == "quick" else 10_000
    ok = True
    for omega in range(1, top + 1, 2):
        if not bounds.condition_check(omega).passes:
            continue
        v = bounds.c1(omega)
        if not (0 < v <= Fraction(1, 2)):
            ok = False
            break
    res.add("0 < C_1(Omega) <= 1/2 whenever the condition passes, Omega <= %d" % top, ok)


def _suite_euler(res: SuiteResult, level: str) -> None:
    rs = (1, 2, 3, 6, 15, 30)
    ok = all(dirichlet.euler_factor_at_one(2, quadroots.decompose_delta(-r, r)) == 3
             for r in rs)
    res.add("Euler factor at 2 equals 3 at s=1", ok)
    ok = True
    for r in rs:
        dec = quadroots.decompose_delta(-r, r)
        for p in arith.primes_upto(97):
            if p == 2:
                continue
            if dirichlet.euler_factor_at_one(p, dec) != Fraction(p + 1, p - 1):
                ok = False
    res.add("odd Euler factors collapse to (p+1)/(p-1) at s=1, p <= 97", ok)
    top = 100 if level == "quick" else 300
    ok = all(dirichlet.g_at_one(quadroots.decompose_delta(-r, r)) == 1
             for r in range(1, top + 1))
    res.add("corrective product G(1) = 1, r <= %d" % top, ok)
    tmax = 20 if level == "quick" else 40
    ok = all(dirichlet.k_at_one(t) == 2 for t in range(0, tmax + 1, 2))
    res.add("dyadic factor K(1) = 2 for even t <= %d" % tmax, ok)


def _suite_dominance(res: SuiteResult, level: str) -> None:
    if level == "quick":
        for b, c in [(-1, 1), (0, 6), (-3, 3)]:
            ok = all(bounds.dominance_report(b, c, n).dominates for n in (10, 100, 1000))
            res.add("bound dominates exact sum, (b,c)=(%d,%d), N in {10,100,1000}" % (b, c), ok)
    else:
        pairs, bad = dominance_violations(10, 10_000)
        res.add("bound dominates exact sum for %d admissible pairs, N <= 10000 "
                "(%d violations)" % (pairs, bad), bad == 0)
        prefix = divisor_sums.tau_quad_prefix_exact(-1, 1, 10_000)
        ok = all(int(prefix[n]) <= bounds.corollary4_tau_bound(n)
                 for n in range(2, 10_001))
        res.add("specialised bound dominates sum of tau(n^2-1), N <= 10000", ok)


_RUNNERS = {
    "rho-oracle": _suite_rho_oracle,
    "convolution": _suite_convolution,
    "ramare": _suite_ramare,
    "c1": _suite_c1,
    "euler": _suite_euler,
    "dominance": _suite_dominance,
}


def run_suite(suite: str, level: str = "quick") -> SuiteResult:
    """Run one named suite and return its check list."""
    if suite not in _RUNNERS:
        raise ValueError("unknown suite %r; choose from %s" % (suite, ", ".join(SUITES)))
    if level not in LEVELS:
        raise ValueError("level must be quick or full")
    res = SuiteResult(suite, level)
    _RUNNERS[suite](res, level)
    return res
