"""Acceptance gate.

One test per numbered criterion; each runs the full stated range at the
stated tolerance, prints a single pass/fail line, and enforces its
runtime budget.  Everything exact is compared exactly; the asymptotic
criteria use the stated 15% tolerance on fitted leading coefficients.
"""

import math
import time
from fractions import Fraction

import numpy as np

from quaddiv import arith, bounds, dirichlet, divisor_sums, quadroots, verify

MAIN = 6 / math.pi**2


def _report(number: str, ok: bool, elapsed: float, budget: float, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    print("%s criterion %s: %s (%.1fs, budget %.0fs)" % (verdict, number, detail, elapsed, budget))
    assert ok, "criterion %s failed: %s" % (number, detail)
    assert elapsed < budget, "criterion %s over budget: %.1fs" % (number, elapsed)


def test_criterion_1_rho_oracle_equivalence():
    # closed-form rho vs exhaustive congruence counting; d <= 8000 covers
    # both the stated range d <= 5000 and the stated comparison count
    # 128000 = 8000 * 16
    t0 = time.perf_counter()
    rs = range(1, 17)
    decs = {r: quadroots.decompose_delta(-r, r) for r in rs}
    closed = {r: quadroots.rho_values_upto(8000, decs[r]) for r in rs}
    mismatches = 0
    comparisons = 0
    for d in range(1, 8001):
        x = np.arange(d, dtype=np.int64)
        counts = np.bincount((x * x) % d, minlength=d)
        for r in rs:
            if counts[decs[r].delta % d] != closed[r][d]:
                mismatches += 1
            comparisons += 1
    _report("1", mismatches == 0 and comparisons == 128_000,
            time.perf_counter() - t0, 10,
            "closed-form rho = brute force, %d comparisons, %d mismatches"
            % (comparisons, mismatches))


def test_criterion_2_convolution_identity():
    t0 = time.perf_counter()
    deltas = (1, 4, 9, 16, 36, 100, 144, 225, 900)
    bad = []
    for delta in deltas:
        r = math.isqrt(delta)
        dec = quadroots.decompose_delta(-r, r)
        lhs, rhs = dirichlet.identity_prefix_sums(10_000, dec)
        if not np.array_equal(lhs, rhs):
            bad.append(delta)
    _report("2", not bad, time.perf_counter() - t0, 30,
            "series identity exact for all X <= 10^4, delta in %s" % (deltas,))


def _euler_factor_series(p: int, dec: quadroots.DeltaDecomposition) -> Fraction:
    # independent route: sum rho(p^alpha)/p^alpha until the values go
    # constant, then close with the exact geometric tail
    cut = max(2 * max((e for q, e in dec.omega_factors if q == p), default=0),
              dec.t) + 3
    head = Fraction(0)
    for alpha in range(cut + 1):
        head += Fraction(quadroots.rho_prime_power(p, alpha, dec), p**alpha)
    const = quadroots.rho_prime_power(p, cut, dec)
    return head + Fraction(const, p**cut * (p - 1))


def test_criterion_3_euler_constants():
    t0 = time.perf_counter()
    ok = True
    for r in range(1, 101):
        dec = quadroots.decompose_delta(-r, r)
        ok &= dirichlet.euler_factor_at_one(2, dec) == 3
        ok &= dirichlet.g_at_one(dec) == 1
        ok &= dirichlet.k_at_one(dec.t) == 2
        for p in arith.primes_upto(97):
            if p > 2:
                ok &= dirichlet.euler_factor_at_one(p, dec) == Fraction(p + 1, p - 1)
    # spot-check the closed forms against direct series summation
    for r in (1, 2, 3, 6, 12, 30):
        dec = quadroots.decompose_delta(-r, r)
        for p in (2, 3, 5, 7, 11, 13):
            ok &= dirichlet.euler_factor_at_one(p, dec) == _euler_factor_series(p, dec)
    _report("3", ok, time.perf_counter() - t0, 60,
            "A_2(1)=3, A_p(1)=(p+1)/(p-1) for p <= 97, G(1)=1, K(1)=2, r <= 100")


def test_criterion_4_ramare_inequality():
    t0 = time.perf_counter()
    ok = bounds.verify_ramare(1_000_000)
    _report("4", ok, time.perf_counter() - t0, 5,
            "squarefree harmonic sum bounded at every x <= 10^6")


def test_criterion_5_c1_window():
    t0 = time.perf_counter()
    expected = [(3, True), (9, False), (25, True), (55, True), (15, False)]
    ok = all(bounds.condition_check(w).passes is v for w, v in expected)
    checked = 0
    for omega in range(1, 10_001, 2):
        if not bounds.condition_check(omega).passes:
            continue
        v = bounds.c1(omega)
        ok &= 0 < v <= Fraction(1, 2)
        checked += 1
    _report("5", ok and checked > 0, time.perf_counter() - t0, 60,
            "0 < C_1 <= 1/2 for %d passing odd Omega <= 10^4, verdicts match" % checked)


def test_criterion_6_theorem3_dominance():
    t0 = time.perf_counter()
    pairs, bad = verify.dominance_violations(10, 10_000)
    _report("6", bad == 0 and pairs > 0, time.perf_counter() - t0, 120,
            "bound >= exact for %d admissible pairs, N <= 10^4, %d violations"
            % (pairs, bad))


def test_criterion_7_corollary4_dominance():
    t0 = time.perf_counter()
    prefix = divisor_sums.tau_quad_prefix_exact(-1, 1, 1_000_000)
    ok = int(prefix[10]) == 54
    ns = np.arange(2, 1_000_001, dtype=np.float64)
    ln = np.log(ns)
    tau_bound = ns * (MAIN * ln**2 + 5.548 * ln + 4.332)
    ok &= bool(np.all(prefix[2:].astype(np.float64) <= tau_bound))
    for s in range(4):
        dec = quadroots.decompose_delta(-(2**s), 2**s)
        vals = quadroots.rho_values_upto(100_000, dec).astype(np.float64)
        lam = np.arange(0, 100_001, dtype=np.float64)
        lam[0] = 1.0
        csum = np.cumsum(vals / lam)[1:]
        n = np.arange(1, 100_001, dtype=np.float64)
        lnn = np.log(n)
        rho_bound = 3 / math.pi**2 * lnn**2 + 2.774 * lnn + 2.166
        ok &= bool(np.all(csum <= rho_bound))
    _report("7", ok, time.perf_counter() - t0, 60,
            "tau bound holds to N <= 10^6, rho/lambda bound holds for s <= 3, N <= 10^5")


def test_criterion_8_asymptotic_constant():
    t0 = time.perf_counter()
    grid = [2**k for k in range(10, 23)]
    ok = True
    detail = []
    for b, c in [(-1, 1), (-3, 3), (0, 6)]:
        scan = divisor_sums.asymptotic_scan(b, c, grid)
        a, _, _ = divisor_sums.fit_leading_coefficient(scan)
        ok &= abs(a - MAIN) <= 0.15 * MAIN
        detail.append("S(%d,%d): %.4f" % (b, c, a))
    for r in (1, 2, 3, 6):
        dec = quadroots.decompose_delta(-r, r)
        csum = np.cumsum(quadroots.rho_values_upto(2**22, dec), dtype=np.int64)
        ns = np.array(grid, dtype=np.float64)
        design = np.column_stack([ns * np.log(ns), ns])
        coeffs, *_ = np.linalg.lstsq(design, csum[grid].astype(np.float64), rcond=None)
        ok &= abs(coeffs[0] - MAIN) <= 0.15 * MAIN
        detail.append("rho r=%d: %.4f" % (r, coeffs[0]))
    _report("8", ok, time.perf_counter() - t0, 300,
            "leading coefficients within 15%% of 6/pi^2=%.6f (%s)"
            % (MAIN, "; ".join(detail)))


def test_criterion_9_path_equivalence():
    t0 = time.perf_counter()
    pairs = verify.admissible_pairs(10)
    bad = []
    for b, c in pairs:
        exact = divisor_sums.tau_quad_prefix_exact(b, c, 10_000)
        hyper = divisor_sums.tau_quad_prefix_hyperbola(b, c, 10_000)
        if not np.array_equal(exact, hyper):
            bad.append((b, c))
    _report("9", not bad, time.perf_counter() - t0, 300,
            "hyperbola path = factorization path for %d pairs at every N <= 10^4"
            % len(pairs))
