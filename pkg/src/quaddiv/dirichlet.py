"""Dirichlet-series coefficients behind the rho partial sums.

The power-of-two part of rho is carried by a coefficient table a_alpha;
the odd part by xi_d = mu^2 * chi_d, where chi_d is the principal
character mod 2*Omega/d.  Gluing these along divisors d of Omega gives
an exact identity for the summatory function of rho, verified here with
both sides computed by unrelated code paths.

Euler factors of the generating series are evaluated at s=1 only, in
exact rationals: A_p(1) = (1+1/p)/(1-1/p) for odd p, A_2(1) = 3, and
the normalized products G(1) = 1, K(1) = 2.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import arith, quadroots
from .errors import ResourceLimitError

# materialized coefficient prefixes are capped; beyond this, stream the sums
SERIES_CAP = 10**7


@dataclass(frozen=True)
class CoefficientSeries:
    """Integer coefficients of a Dirichlet-series prefix, indexed 1..length."""

    length: int
    coeffs: np.ndarray  # int64, entry 0 unused and zero

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("series length must be >= 1")
        if self.length > SERIES_CAP:
            raise ResourceLimitError(f"series length {self.length} exceeds cap {SERIES_CAP}")
        if len(self.coeffs) != self.length + 1:
            raise ValueError("coefficient array must have length+1 entries")

    @classmethod
    def from_values(cls, values) -> "CoefficientSeries":
        arr = np.zeros(len(values) + 1, dtype=np.int64)
        arr[1:] = values
        return cls(len(values), arr)

    def values(self):
        return self.coeffs[1:]


@dataclass(frozen=True)
class PrincipalCharacter:
    """Principal character: 1 on residues coprime to the modulus, else 0."""

    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("character modulus must be >= 2")

    def __call__(self, l: int) -> int:
        return 1 if gcd(l, self.modulus) == 1 else 0


def a_alpha(alpha: int, t: int) -> int:
    """Coefficient of 2^(-alpha*s) in the even-part series, keyed on 2^t || delta."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if t < 0 or t % 2:
        raise ValueError("t must be even and >= 0")
    if alpha >= t + 2:
        return 2 ** (t // 2 + 1)
    if alpha % 2:
        return 0
    return 2 ** (alpha // 2)


def _character_modulus(omega: int, d: int) -> int:
    if omega < 1 or omega % 2 == 0:
        raise ValueError("Omega must be odd and >= 1")
    if d < 1 or omega % d:
        raise ValueError("d must divide Omega")
    return 2 * omega // d


def chi_d(l: int, omega: int, d: int) -> int:
    """Principal character mod 2*Omega/d evaluated at l."""
    q = _character_modulus(omega, d)
    if l < 1:
        raise ValueError("character argument must be >= 1")
    return 1 if gcd(l, q) == 1 else 0


def xi_d(n: int, omega: int, d: int) -> int:
    """(mu^2 * chi_d)(n), by the divisor convolution."""
    q = _character_modulus(omega, d)
    if n < 1:
        raise ValueError("argument must be >= 1")
    total = 0
    for l in arith.divisors(arith.factorize(n)):
        if arith.mu_squared(l) and gcd(n // l, q) == 1:
            total += 1
    return total


def _coprime_count(M: int, q_primes: list[int]) -> int:
    """#{1 <= m <= M : gcd(m, prod q_primes) = 1} by inclusion-exclusion."""
    total = 0
    k = len(q_primes)
    for mask in range(1 << k):
        e = 1
        bits = 0
        for i in range(k):
            if mask >> i & 1:
                e *= q_primes[i]
                bits += 1
        total += (M // e) if bits % 2 == 0 else -(M // e)
    return total


def xi_partial_sum(Y: int, omega: int, d: int) -> int:
    """Sum of xi_d(h) for h = 1..Y via the double sum over l squarefree."""
    q = _character_modulus(omega, d)
    if Y < 1:
        raise ValueError("summation limit must be >= 1")
    q_primes = [p for p, _ in arith.factorize(q)]
    mu2 = arith.mu_squared_sieve(Y)
    total = 0
    for l in range(1, Y + 1):
        if mu2[l]:
            total += _coprime_count(Y // l, q_primes)
    return total


def xi_values_upto(X: int, omega: int, d: int) -> np.ndarray:
    """int64 array v with v[n] = xi_d(n) for 1 <= n <= X, by a convolution sieve."""
    q = _character_modulus(omega, d)
    if X < 1:
        raise ValueError("limit must be >= 1")
    chi = np.ones(X + 1, dtype=np.int64)
    chi[0] = 0
    for p, _ in arith.factorize(q):
        chi[p::p] = 0
    mu2 = arith.mu_squared_sieve(X)
    out = np.zeros(X + 1, dtype=np.int64)
    for l in range(1, X + 1):
        if mu2[l]:
            out[l::l] += chi[1 : X // l + 1]
    return out


def identity_series(X: int) -> CoefficientSeries:
    arr = np.zeros(X + 1, dtype=np.int64)
    arr[1] = 1
    return CoefficientSeries(X, arr)


def ones_series(X: int) -> CoefficientSeries:
    arr = np.ones(X + 1, dtype=np.int64)
    arr[0] = 0
    return CoefficientSeries(X, arr)


def mu_squared_series(X: int) -> CoefficientSeries:
    return CoefficientSeries(X, arith.mu_squared_sieve(X).astype(np.int64))


def chi_series(X: int, omega: int, d: int) -> CoefficientSeries:
    q = _character_modulus(omega, d)
    arr = np.ones(X + 1, dtype=np.int64)
    arr[0] = 0
    for p, _ in arith.factorize(q):
        arr[p::p] = 0
    return CoefficientSeries(X, arr)


def convolve(A: CoefficientSeries, B: CoefficientSeries) -> CoefficientSeries:
    """Dirichlet product prefix: out(n) = sum over lm = n of A(l)B(m)."""
    if A.length != B.length:
        raise ValueError("series lengths must match")
    X = A.length
    out = np.zeros(X + 1, dtype=np.int64)
    a, b = A.coeffs, B.coeffs
    for l in range(1, X + 1):
        al = a[l]
        if al:
            out[l::l] += al * b[1 : X // l + 1]
    return CoefficientSeries(X, out)


@dataclass(frozen=True)
class IdentityReport:
    x: int
    lhs: int
    rhs: int
    equal: bool


def verify_identity(X: int, dec: quadroots.DeltaDecomposition) -> IdentityReport:
    """Check sum of rho against the triple sum over (d | Omega, alpha, h).

    The left side is the termwise rho partial sum; the right side walks
    d | Omega outermost, then alpha with 2^alpha d^2 <= X, then h.
    """
    if X < 1:
        raise ValueError("limit must be >= 1")
    lhs = quadroots.rho_partial_sum(X, dec)
    rhs = 0
    for d in arith.divisors(dec.omega_factors):
        scale = d * d
        alpha = 0
        while scale <= X:
            a = a_alpha(alpha, dec.t)
            if a:
                rhs += a * d * xi_partial_sum(X // scale, dec.omega, d)
            alpha += 1
            scale *= 2
    return IdentityReport(X, lhs, rhs, lhs == rhs)


def identity_prefix_sums(X: int, dec: quadroots.DeltaDecomposition,
                         table: arith.SpfTable | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the summatory identity at every cutoff 1..X at once.

    Returns (lhs, rhs) int64 arrays with entry n holding the two sides
    at cutoff n; used to check the identity over a whole range cheaply.
    """
    lhs = np.cumsum(quadroots.rho_values_upto(X, dec, table))
    point = np.zeros(X + 1, dtype=np.int64)
    for d in arith.divisors(dec.omega_factors):
        xi = xi_values_upto(X // (d * d), dec.omega, d) if d * d <= X else None
        scale = d * d
        alpha = 0
        while scale <= X:
            a = a_alpha(alpha, dec.t)
            if a:
                point[scale::scale] += a * d * xi[1 : X // scale + 1]
            alpha += 1
            scale *= 2
    return lhs, np.cumsum(point)


def euler_factor_at_one(p: int, dec: quadroots.DeltaDecomposition) -> Fraction:
    """A_p(1), the p-factor of the rho generating series at s=1, exact.

    Both odd-p cases collapse to (1+1/p)/(1-1/p); the factor at p=2 is 3
    for every t.  Tests recompute the series termwise to confirm.
    """
    if p == 2:
        return Fraction(3)
    return Fraction(p + 1, p - 1)


def g_at_one(dec: quadroots.DeltaDecomposition) -> Fraction:
    """G(1): the Euler product normalized against zeta(s)/zeta(2s); equals 1."""
    out = euler_factor_at_one(2, dec) * Fraction(1, 2) / Fraction(3, 2)
    for p, _ in dec.omega_factors:
        out *= euler_factor_at_one(p, dec) * Fraction(p - 1, p) / Fraction(p + 1, p)
    return out


def k_at_one(t: int) -> Fraction:
    """K(1) = sum of a_alpha/2^alpha, via the finite head plus geometric tail."""
    if t < 0 or t % 2:
        raise ValueError("t must be even and >= 0")
    head = sum(Fraction(a_alpha(alpha, t), 2**alpha) for alpha in range(0, t + 1, 2))
    tail = Fraction(2 ** (t // 2 + 1), 2 ** (t + 1))
    return head + tail
