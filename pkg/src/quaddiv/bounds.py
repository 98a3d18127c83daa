"""Explicit upper bounds for divisor sums over quadratic values.

Everything here is effective: each bound is a closed-form expression in
N (or X = sqrt(f(N))) whose coefficients depend on the odd part Omega of
the half-gap r, and each holds for every admissible argument, not just
asymptotically.  The chain is

    squarefree harmonic sum  ->  partial sums of xi_d  ->  partial sums
    of the root count rho    ->  sum of tau((n-b)(n-c)) up to N,

with the quality of the constants controlled by the hypothesis
sigma_{-1}(Omega) <= 4/3.  All decimal coefficients (1.166, 1.749,
1.332, 2.774, 2.166, 5.548, 4.332) enter exactly as rationals; floats
appear only in the final evaluation of a bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from . import arith, divisor_sums, quadroots
from .errors import HypothesisError

# Ramare: sum_{n<=x} mu(n)^2/n <= (6/pi^2) ln x + 1.166 for all x >= 1
RAMARE_CONSTANT = Fraction(1166, 1000)

_COND_MESSAGE = "condition sigma_{-1}(Omega) <= 4/3 fails"


@dataclass(frozen=True)
class ConditionCheck:
    """Outcome of the sigma_{-1}(Omega) <= 4/3 test for an odd Omega."""

    omega: int
    sigma_m1: Fraction
    passes: bool


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluation against the exact divisor sum.

    dominates is True when every bound present in the report (the main
    one, plus corollary_bound when set) is >= exact.
    """

    b: int
    c: int
    n: int
    x: float
    c_omega: float
    c1_omega: Fraction
    bound: float
    exact: int
    dominates: bool
    corollary_bound: float | None = None


def condition_check(omega: int) -> ConditionCheck:
    """Evaluate sigma_{-1}(omega) <= 4/3 exactly for odd omega >= 1."""
    if omega < 1 or omega % 2 == 0:
        raise ValueError("omega must be a positive odd integer")
    s = arith.sigma(-1, omega)
    return ConditionCheck(omega, s, s <= Fraction(4, 3))


def _require_condition(omega: int) -> ConditionCheck:
    chk = condition_check(omega)
    if not chk.passes:
        raise HypothesisError(_COND_MESSAGE)
    return chk


def big_c_exact(omega: int) -> Fraction:
    """C(omega) as an exact rational.

    C(omega) = 2 * sum over d | omega of
        (1/d) * (2 sigma_0(omega/d) - 1.749 sigma_{-1}(omega/d) + 1.332).
    """
    if omega < 1 or omega % 2 == 0:
        raise ValueError("omega must be a positive odd integer")
    a, b = Fraction(1749, 1000), Fraction(1332, 1000)
    total = Fraction(0)
    for d in arith.divisors(arith.factorize(omega)):
        q = omega // d
        total += Fraction(1, d) * (2 * arith.sigma(0, q) - a * arith.sigma(-1, q) + b)
    return 2 * total


def big_c_via_theta(omega: int) -> Fraction:
    """C(omega) recomputed from the theta form of the xi coefficients.

    2 * sum over d | omega of
        (1/d) * (1.166 (1 - theta_{-1}(2 omega/d)) + theta_0(2 omega/d)),
    which collapses to big_c_exact because 1.5 * 1.166 = 1.749 and
    2 * 1.166 - 1 = 1.332 hold exactly.
    """
    if omega < 1 or omega % 2 == 0:
        raise ValueError("omega must be a positive odd integer")
    total = Fraction(0)
    for d in arith.divisors(arith.factorize(omega)):
        q = 2 * (omega // d)
        total += Fraction(1, d) * (
            RAMARE_CONSTANT * (1 - arith.theta(-1, q)) + arith.theta(0, q)
        )
    return 2 * total


def big_c(omega: int) -> float:
    """C(omega) as a float."""
    return float(big_c_exact(omega))


def c1(omega: int) -> Fraction:
    """Leading coefficient C_1(omega) = sum over d | omega of
    (1/d)(1 - theta_{-1}(2 omega/d)), exact.

    Requires sigma_{-1}(omega) <= 4/3, which keeps every term
    nonnegative; the value then lies in (0, 1/2].
    """
    _require_condition(omega)
    total = Fraction(0)
    for d in arith.divisors(arith.factorize(omega)):
        total += Fraction(1, d) * (1 - arith.theta(-1, 2 * (omega // d)))
    return total


def ramare_rhs(x: float) -> float:
    """Upper bound (6/pi^2) ln x + 1.166 for the squarefree harmonic sum."""
    if x < 1:
        raise ValueError("bound is stated for x >= 1")
    return 6 / math.pi**2 * math.log(x) + float(RAMARE_CONSTANT)

def verify_ramare(limit: int) -> bool:
    """Check sum_{n<=x} mu(n)^2/n <= ramare_rhs(x) at every integer x <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    sf = arith.mu_squared_sieve(limit)
    total = 0.0
    comp = 0.0
    for n in range(1, limit + 1):
        if sf[n]:
            y = 1.0 / n - comp
            t = total + y
            comp = (t - total) - y
            total = t
        if total > ramare_rhs(n):
            return False
    return True


def xi_sum_upper(y: int, omega: int, d: int) -> float:
    """Upper bound for sum_{h<=y} xi_d(h) with q = 2 omega / d:

        (6/pi^2)(1 - theta_{-1}(q)) y ln y
            + (1.166 (1 - theta_{-1}(q)) + theta_0(q)) y.
    """
    if y < 1:
        raise ValueError("bound is stated for y >= 1")
    if omega < 1 or omega % 2 == 0:
        raise ValueError("omega must be a positive odd integer")
    if d < 1 or omega % d != 0:
        raise ValueError("d must divide omega")
    _require_condition(omega)
    q = 2 * (omega // d)
    slope = 1 - arith.theta(-1, q)
    lead = 6 / math.pi**2 * float(slope)
    lin = float(RAMARE_CONSTANT * slope + arith.theta(0, q))
    return lead * y * math.log(y) + lin * y


def rho_sum_upper(x: float, omega: int) -> float:
    """Upper bound (6/pi^2) X ln X + C(omega) X for sum_{lambda<=X} rho(lambda).

    Valid for every discriminant with odd part omega, uniformly in the
    power of 2.
    """
    if x < 1:
        raise ValueError("bound is stated for X >= 1")
    _require_condition(omega)
    return 6 / math.pi**2 * x * math.log(x) + big_c(omega) * x


def rho_over_lambda_upper(x: float, omega: int) -> float:
    """Upper bound for sum_{lambda<=X} rho(lambda)/lambda:

        (3/pi^2) ln^2 X + (6/pi^2 + C(omega)) ln X + C(omega).
    """
    if x < 1:
        raise ValueError("bound is stated for X >= 1")
    _require_condition(omega)
    C = big_c(omega)
    lx = math.log(x)
    return 3 / math.pi**2 * lx**2 + (6 / math.pi**2 + C) * lx + C


def theorem3_bound(b: int, c: int, n: int) -> BoundReport:
    """Explicit bound for S(N) = sum_{c* <= m <= N} tau((m-b)(m-c)).

    With X = sqrt((N-b)(N-c)) and C = C(omega) the bound is

        2N ((3/pi^2) ln^2 X + (6/pi^2 + C) ln X + C)
            + 2X ((6/pi^2) ln X + C).

    Raises HypothesisError when sigma_{-1}(omega) > 4/3.  For N below
    the first summand c* the report is empty (bound 0, exact 0).
    """
    dec = quadroots.decompose_delta(b, c)
    _require_condition(dec.omega)
    C = big_c(dec.omega)
    c1v = c1(dec.omega)
    if n < dec.c_star:
        return BoundReport(b, c, n, 0.0, C, c1v, 0.0, 0, True)
    x = math.sqrt((n - b) * (n - c))
    lx = math.log(x)
    bound = (2 * n * (3 / math.pi**2 * lx**2 + (6 / math.pi**2 + C) * lx + C)
             + 2 * x * (6 / math.pi**2 * lx + C))
    exact = int(divisor_sums.tau_quad_prefix_exact(b, c, n)[n])
    return BoundReport(b, c, n, x, C, c1v, bound, exact, bound >= exact)


def corollary4_rho_bound(n: int) -> float:
    """Bound (3/pi^2) ln^2 N + 2.774 ln N + 2.166 for
    sum_{lambda<=N} rho(lambda)/lambda when the discriminant is 4^s."""
    if n < 1:
        raise ValueError("bound is stated for N >= 1")
    ln = math.log(n)
    return 3 / math.pi**2 * ln**2 + 2.774 * ln + 2.166


def corollary4_tau_bound(n: int) -> float:
    """Bound N ((6/pi^2) ln^2 N + 5.548 ln N + 4.332) for
    sum_{2<=m<=N} tau(m^2 - 1)."""
    if n < 1:
        raise ValueError("bound is stated for N >= 1")
    ln = math.log(n)
    return n * (6 / math.pi**2 * ln**2 + 5.548 * ln + 4.332)


def dominance_report(b: int, c: int, n: int) -> BoundReport:
    """theorem3_bound, with the specialised tau bound attached when it
    applies (b, c) = (-1, 1), and dominance re-checked against both."""
    rep = theorem3_bound(b, c, n)
    if (b, c) != (-1, 1):
        return rep
    cor = corollary4_tau_bound(n) if n >= 1 else 0.0
    ok = rep.bound >= rep.exact and cor >= rep.exact
    return replace(rep, corollary_bound=cor, dominates=ok)
