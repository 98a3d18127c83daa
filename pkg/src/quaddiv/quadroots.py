"""Counting square roots of delta = ((b-c)/2)^2 modulo d.

rho_delta(d) counts x in [0,d) with x^2 = delta (mod d).  It is
multiplicative in d and has closed forms at prime powers that depend
only on how the prime sits inside r = (c-b)/2: not at all (generic),
inside the odd part Omega, or as the power of two 2^t || delta.

Root sets of f(m) = (m-b)(m-c) mod d come from the same congruence
after the shift m -> m - (b+c)/2; each prime-power factor is solved by
direct enumeration and the residues are glued back together with the
Chinese Remainder Theorem, deliberately avoiding the closed forms so
the two routes can check each other.
"""

from dataclasses import dataclass

import numpy as np

from .arith import PrimeFactorization, SpfTable, build_spf_table, factorize
from .errors import ResourceLimitError

# largest modulus rho_bruteforce will scan by default
BRUTEFORCE_CAP = 10**7

# largest prime power roots_mod will enumerate directly
_PRIME_POWER_CAP = 10**6


@dataclass(frozen=True)
class DeltaDecomposition:
    """Shape data of delta = (b-c)^2/4 = 2^t * Omega^2 shared by all root counts.

    For a prime p with p^e || Omega, the relevant exponents of delta are
    beta = 2e and beta' = e.  c_star = max(1, c+1) is the first summation
    index for which both n-b and n-c are positive.
    """

    b: int
    c: int
    delta: int
    r: int
    t: int
    t_half: int
    omega: int
    omega_factors: PrimeFactorization
    c_star: int


@dataclass(frozen=True)
class RootSet:
    """Sorted residues m in [0, modulus) with (m-b)(m-c) = 0 (mod modulus)."""

    modulus: int
    roots: tuple[int, ...]


def decompose_delta(b: int, c: int) -> DeltaDecomposition:
    """Split delta = (b-c)^2/4 into 2^t * Omega^2 with Omega odd."""
    if b >= c:
        raise ValueError("degenerate polynomial: need b < c")
    if (c - b) % 2:
        raise ValueError("delta (b-c)^2/4 is not an integer: b and c must have equal parity")
    r = (c - b) // 2
    omega = r
    t_half = 0
    while omega % 2 == 0:
        omega //= 2
        t_half += 1
    return DeltaDecomposition(
        b=b,
        c=c,
        delta=r * r,
        r=r,
        t=2 * t_half,
        t_half=t_half,
        omega=omega,
        omega_factors=factorize(omega),
        c_star=max(1, c + 1),
    )


def rho_prime_power(p: int, alpha: int, dec: DeltaDecomposition) -> int:
    """rho_delta(p^alpha) by the closed forms at prime powers."""
    if alpha < 0:
        raise ValueError("exponent must be >= 0")
    if alpha == 0:
        return 1
    if p == 2:
        t, th = dec.t, dec.t_half
        if alpha <= t:
            return 2 ** (alpha // 2)
        if alpha == t + 1:
            return 2**th
        if alpha == t + 2:
            return 2 ** (th + 1)
        return 2 ** (th + 2)
    e = next((e for q, e in dec.omega_factors if q == p), 0)
    if e == 0:
        return 2
    if alpha <= 2 * e:
        return p ** (alpha // 2)
    return 2 * p**e


def rho(d: int, dec: DeltaDecomposition, table: SpfTable | None = None) -> int:
    """rho_delta(d), multiplicatively over the prime powers of d."""
    if d < 1:
        raise ValueError("modulus must be >= 1")
    out = 1
    for p, alpha in factorize(d, table):
        out *= rho_prime_power(p, alpha, dec)
    return out


def rho_bruteforce(d: int, k: int, cap: int = BRUTEFORCE_CAP) -> int:
    """Count x in [0,d) with x^2 = k (mod d) by scanning; works for any k >= 0."""
    if d < 1:
        raise ValueError("modulus must be >= 1")
    if d > cap:
        raise ResourceLimitError(f"brute-force scan of {d} residues exceeds cap {cap}")
    if d <= 512:
        return sum(1 for x in range(d) if (x * x - k) % d == 0)
    x = np.arange(d, dtype=np.int64)
    return int(np.count_nonzero((x * x - k) % d == 0))


def _prime_power_roots(q: int, delta: int) -> list[int]:
    """All y in [0,q) with y^2 = delta (mod q), by direct enumeration."""
    if q > _PRIME_POWER_CAP:
        raise ResourceLimitError(f"prime power {q} too large for direct enumeration")
    target = delta % q
    if q <= 512:
        return [y for y in range(q) if y * y % q == target]
    y = np.arange(q, dtype=np.int64)
    return [int(v) for v in y[(y * y) % q == target]]


def roots_mod(d: int, dec: DeltaDecomposition) -> RootSet:
    """Roots of (m-b)(m-c) mod d via per-prime-power enumeration plus CRT."""
    if d < 1:
        raise ValueError("modulus must be >= 1")
    sols = [0]
    mod = 1
    for p, alpha in factorize(d):
        q = p**alpha
        qroots = _prime_power_roots(q, dec.delta)
        if mod == 1:
            sols, mod = qroots, q
            continue
        inv = pow(mod, -1, q)
        merged = []
        for x in sols:
            for y in qroots:
                merged.append(x + mod * ((y - x) * inv % q))
        sols, mod = merged, mod * q
    shift = (dec.b + dec.c) // 2
    return RootSet(d, tuple(sorted((y + shift) % d for y in sols)))


def count_roots_in_range(x: int, d: int, dec: DeltaDecomposition) -> int:
    """M(x,d) = #{1 <= m <= x : f(m) = 0 (mod d)}."""
    if x < 0:
        raise ValueError("range end must be >= 0")
    total = 0
    for a in roots_mod(d, dec).roots:
        if a == 0:
            total += x // d
        elif a <= x:
            total += (x - a) // d + 1
    return total


def rho_partial_sum(N: int, dec: DeltaDecomposition, table: SpfTable | None = None) -> int:
    """Exact sum of rho_delta(lambda) for lambda = 1..N, termwise."""
    if N < 1:
        raise ValueError("summation limit must be >= 1")
    if table is None or table.limit < N:
        table = build_spf_table(N)
    spf = table.spf
    total = 0
    for lam in range(1, N + 1):
        n = lam
        term = 1
        while n > 1:
            p = int(spf[n])
            alpha = 0
            while n % p == 0:
                n //= p
                alpha += 1
            term *= rho_prime_power(p, alpha, dec)
        total += term
    return total


def rho_over_lambda_sum(N: int, dec: DeltaDecomposition, table: SpfTable | None = None) -> float:
    """Sum of rho_delta(lambda)/lambda for lambda = 1..N (Kahan-compensated)."""
    if N < 1:
        raise ValueError("summation limit must be >= 1")
    if table is None or table.limit < N:
        table = build_spf_table(N)
    spf = table.spf
    total = 0.0
    comp = 0.0
    for lam in range(1, N + 1):
        n = lam
        term = 1
        while n > 1:
            p = int(spf[n])
            alpha = 0
            while n % p == 0:
                n //= p
                alpha += 1
            term *= rho_prime_power(p, alpha, dec)
        y = term / lam - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def rho_values_upto(N: int, dec: DeltaDecomposition, table: SpfTable | None = None) -> np.ndarray:
    """int64 array v with v[lam] = rho_delta(lam) for 1 <= lam <= N (v[0] = 0).

    Sieve form of the same closed forms: every multiple of p^alpha picks
    up the ratio rho(p^alpha)/rho(p^(alpha-1)), which is an integer in
    all cases, so one pass over prime powers builds every value at once.
    """
    if N < 1:
        raise ValueError("summation limit must be >= 1")
    if table is None or table.limit < N:
        table = build_spf_table(N)
    vals = np.ones(N + 1, dtype=np.int64)
    vals[0] = 0
    idx = np.arange(N + 1, dtype=np.int64)
    prime_mask = table.spf[: N + 1] == idx
    prime_mask[:2] = False
    special = {2} | {p for p, _ in dec.omega_factors}
    for p in idx[prime_mask]:
        p = int(p)
        if p not in special:
            vals[p::p] *= 2
            continue
        prev = 1
        alpha = 1
        q = p
        # ratios settle to 1 after alpha = t+3 (p=2) or beta+1 (p | Omega)
        stop = dec.t + 3 if p == 2 else 2 * next(e for pp, e in dec.omega_factors if pp == p) + 1
        while q <= N and alpha <= stop:
            cur = rho_prime_power(p, alpha, dec)
            ratio = cur // prev
            if ratio != 1:
                vals[q::q] *= ratio
            prev = cur
            alpha += 1
            q *= p
    return vals
