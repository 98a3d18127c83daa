"""Integer arithmetic layer: factorization, divisor sums, Jacobi symbol.

Bulk factorization goes through a smallest-prime-factor (SPF) table so
that sieved scans stay close to linear time.  One-off values beyond the
table fall back to trial division plus Brent's cycle-finding split with
a deterministic Miller-Rabin test, so results never depend on run order.

Divisor-sum values sigma_a and theta_a are returned as exact Fractions;
every downstream inequality that depends on them is decided without
floating-point help.
"""

import os
import random
import struct
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import ResourceLimitError

# factorization of n as an ascending list of (prime, exponent) pairs
PrimeFactorization = list[tuple[int, int]]

_SPF_MAGIC = b"SPF1"

# witnesses making Miller-Rabin deterministic for every n < 3.3 * 10^24
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 1000


@dataclass(frozen=True)
class SpfTable:
    """Smallest prime factor for every n <= limit.

    spf[0] = 0 and spf[1] = 1 are sentinels; for n >= 2, spf[n] is the
    least prime dividing n, so spf[n] == n exactly when n is prime.
    Treat the array as read-only; tables are shared freely across threads.
    """

    limit: int
    spf: np.ndarray  # int32


def build_spf_table(limit: int, cache_dir: str | None = None) -> SpfTable:
    """Sieve the SPF table for [0, limit], memoized on disk if cache_dir is set."""
    if limit < 1:
        raise ValueError("table limit must be >= 1")
    if limit >= 2**31:
        raise ResourceLimitError("SPF table entries are 32-bit; limit must be < 2^31")
    if cache_dir:
        cached = _load_spf_cache(cache_dir, limit)
        if cached is not None:
            return SpfTable(limit, cached)
    spf = np.arange(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.minimum(block, np.int32(p), out=block)
    if cache_dir:
        _save_spf_cache(cache_dir, limit, spf)
    return SpfTable(limit, spf)


def _spf_cache_path(cache_dir: str, limit: int) -> str:
    return os.path.join(cache_dir, f"spf-{limit}.bin")


def _load_spf_cache(cache_dir: str, limit: int):
    path = _spf_cache_path(cache_dir, limit)
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError:
        return None
    if len(raw) != 12 + 4 * (limit + 1) or raw[:4] != _SPF_MAGIC:
        return None
    (stored,) = struct.unpack("<Q", raw[4:12])
    if stored != limit:
        return None
    return np.frombuffer(raw, dtype="<i4", offset=12).astype(np.int32)


def _save_spf_cache(cache_dir: str, limit: int, spf: np.ndarray) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = _spf_cache_path(cache_dir, limit)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(_SPF_MAGIC)
        fh.write(struct.pack("<Q", limit))
        fh.write(spf.astype("<i4").tobytes())
    os.replace(tmp, path)


def primes_upto(limit: int, table: SpfTable | None = None) -> np.ndarray:
    """Array of primes <= limit."""
    if table is None or table.limit < limit:
        table = build_spf_table(max(limit, 2))
    idx = np.arange(limit + 1, dtype=np.int64)
    mask = table.spf[: limit + 1] == idx
    mask[:2] = False
    return idx[mask]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all inputs below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_split(n: int, rng: random.Random) -> int:
    """Find a nontrivial factor of composite odd n (Brent's variant of the rho cycle)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_into(n: int, out: dict, rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_split(n, rng)
    _factor_into(d, out, rng)
    _factor_into(n // d, out, rng)


def factorize(n: int, table: SpfTable | None = None) -> PrimeFactorization:
    """Factor n >= 1 into ascending (prime, exponent) pairs.

    Inside the table this is an SPF walk; beyond it, trial division up
    to 1000 followed by deterministic splitting.  The splitting RNG is
    seeded per call, so equal inputs always factor identically.
    """
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    if table is not None and n <= table.limit:
        spf = table.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return sorted(out.items())
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    d = 7
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            n //= d
            out[d] = out.get(d, 0) + 1
        d += 2
    if n > 1:
        if d * d > n:
            out[n] = out.get(n, 0) + 1
        else:
            _factor_into(n, out, random.Random(0x5EED))
    return sorted(out.items())


def unfactorize(factors: PrimeFactorization) -> int:
    n = 1
    for p, e in factors:
        n *= p**e
    return n


def divisors(factors: PrimeFactorization) -> list[int]:
    """All divisors of the factored integer, ascending."""
    out = [1]
    for p, e in factors:
        pk = 1
        powers = []
        for _ in range(e):
            pk *= p
            powers.append(pk)
        out += [d * pk for d in out for pk in powers]
    return sorted(out)


def tau_of(factors: PrimeFactorization) -> int:
    """Divisor count from a factorization."""
    t = 1
    for _, e in factors:
        t *= e + 1
    return t


def sigma(a: int, n: int, table: SpfTable | None = None) -> Fraction:
    """Divisor-power sum sigma_a(n) = sum of d^a over d | n, exact."""
    if a not in (-1, 0, 1):
        raise ValueError("sigma exponent must be -1, 0 or 1")
    if n < 1:
        raise ValueError("sigma argument must be >= 1")
    total = Fraction(1)
    for p, e in factorize(n, table):
        if a == 0:
            total *= e + 1
        elif a == 1:
            total *= (p ** (e + 1) - 1) // (p - 1)
        else:
            total *= Fraction(p ** (e + 1) - 1, p**e * (p - 1))
    return total


def theta(a: int, q: int, table: SpfTable | None = None) -> Fraction:
    """Sum of d^a over divisors d > 1 of q, i.e. sigma_a(q) - 1."""
    return sigma(a, q, table) - 1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, by reciprocity reduction."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs a positive odd bottom argument")
    a %= n
    sign = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def mu_squared(n: int, table: SpfTable | None = None) -> int:
    """Squarefree indicator mu(n)^2."""
    if n < 1:
        raise ValueError("mu_squared argument must be >= 1")
    if table is not None and n <= table.limit:
        spf = table.spf
        while n > 1:
            p = int(spf[n])
            n //= p
            if n % p == 0:
                return 0
        return 1
    return int(all(e == 1 for _, e in factorize(n)))


def mu_squared_sieve(limit: int) -> np.ndarray:
    """uint8 array with arr[n] = mu(n)^2 for 0 <= n <= limit (arr[0] = 0)."""
    arr = np.ones(limit + 1, dtype=np.uint8)
    arr[0] = 0
    for p in primes_upto(isqrt(limit)):
        step = int(p) * int(p)
        arr[step::step] = 0
    return arr


def tau_sieve(limit: int) -> np.ndarray:
    """int32 array with arr[n] = tau(n) for 1 <= n <= limit (arr[0] = 0).

    Divisors are counted in pairs (d, n/d) with d <= sqrt(n), so the
    Python-level loop only runs to sqrt(limit).
    """
    arr = np.zeros(limit + 1, dtype=np.int32)
    for d in range(1, isqrt(limit) + 1):
        block = arr[d * d :: d]
        block += 2
        arr[d * d] -= 1
    return arr
