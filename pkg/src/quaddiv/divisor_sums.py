"""Exact sums S(N) = sum of tau((n-b)(n-c)) for c* <= n <= N.

Two routes to the same integer:

* factorization path: tau(f(n)) per term by factoring n-b and n-c
  through the SPF table and merging exponents (f(n) itself routinely
  exceeds any table);
* hyperbola path: tau(f(n)) = 2 #{d <= sqrt(f(n)) : d | f(n)} minus a
  perfect-square correction, reorganized into counts of roots of f
  modulo each d <= sqrt(f(N)) over index ranges.

The hyperbola route never factors f(n); its root table is built from
divisors of f(m) for m in [0, d), a third mechanism independent of both
the closed-form counts and the CRT-based roots_mod.

Bulk variants return whole prefix arrays so that scans, dominance
checks and path comparisons over every cutoff N' <= N cost one pass.
"""

import math
from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import arith
from .arith import SpfTable, build_spf_table
from .errors import ResourceLimitError
from .quadroots import DeltaDecomposition, decompose_delta

# largest d-range the hyperbola root table will materialize
_ROOT_TABLE_CAP = 2 * 10**6

_SUM_LIMIT_CAP = 10**9


@dataclass
class ScanTable:
    """Scan rows (N, S_exact, S/(N ln^2 N)) plus an optional fitted model."""

    rows: list[tuple[int, int, float]]
    fit: tuple[float, float, float] | None = None


def _validated_range(b: int, c: int, N: int) -> DeltaDecomposition:
    dec = decompose_delta(b, c)
    if N > _SUM_LIMIT_CAP:
        raise ResourceLimitError(f"summation limit {N} exceeds cap {_SUM_LIMIT_CAP}")
    return dec


def tau_quad_range_sum(b: int, c: int, lo: int, hi: int, table: SpfTable) -> int:
    """Sum of tau((n-b)(n-c)) over max(c*, lo) <= n <= hi, termwise."""
    dec = _validated_range(b, c, hi if hi >= lo else lo)
    lo = max(lo, dec.c_star)
    if hi < lo:
        return 0
    if table.limit < hi - b:
        raise ValueError(f"SPF table limit {table.limit} < largest factor {hi - b}")
    spf = table.spf.tolist() if hi - b <= 1 << 18 else table.spf
    total = 0
    for n in range(lo, hi + 1):
        exps: dict[int, int] = {}
        for v in (n - b, n - c):
            while v > 1:
                p = int(spf[v])
                e = 0
                while v % p == 0:
                    v //= p
                    e += 1
                exps[p] = exps.get(p, 0) + e
        term = 1
        for e in exps.values():
            term *= e + 1
        total += term
    return total


def tau_quad_sum_exact(b: int, c: int, N: int, table: SpfTable) -> int:
    """S(N) by per-term factorization through the table."""
    return tau_quad_range_sum(b, c, 1, N, table)


def _exponent_range(p: int, lo: int, hi: int) -> np.ndarray:
    """Exponent of p in each of lo..hi (int64 array of length hi-lo+1)."""
    e = np.zeros(hi - lo + 1, dtype=np.int64)
    q = p
    while q <= hi:
        first = (lo + q - 1) // q * q
        if first <= hi:
            e[first - lo :: q] += 1
        q *= p
    return e


def tau_quad_prefix_exact(b: int, c: int, N: int, table: SpfTable | None = None) -> np.ndarray:
    """int64 array P with P[n] = S(n) for 0 <= n <= N, factorization path.

    tau(f(n)) factors as a product over the primes of 2r (whose
    exponents in n-b and n-c can collide) times tau of the two stripped
    cofactors, which are coprime; cofactor tau values come from one
    shared divisor-count sieve.  The unused `table` slot keeps call
    sites uniform; this path sieves everything it needs.
    """
    dec = _validated_range(b, c, N)
    out = np.zeros(max(N + 1, 1), dtype=np.int64)
    cs = dec.c_star
    if N < cs:
        return out
    hi = N - b
    tau_table = arith.tau_sieve(hi)
    ns = np.arange(cs, N + 1, dtype=np.int64)
    xb = ns - b
    xc = ns - c
    prod = np.ones(len(ns), dtype=np.int64)
    for p in [2] + [p for p, _ in dec.omega_factors]:
        eb = _exponent_range(p, cs - b, N - b)
        ec = _exponent_range(p, cs - c, N - c)
        prod *= eb + ec + 1
        xb = xb // np.power(p, eb)
        xc = xc // np.power(p, ec)
    tau_vals = prod * tau_table[xb] * tau_table[xc]
    out[cs:] = np.cumsum(tau_vals)
    return out


def f_root_table(b: int, c: int, D: int) -> list[list[int]]:
    """roots[d] = ascending residues m in [0,d) with (m-b)(m-c) = 0 mod d, d <= D.

    Built by listing, for each m, the divisors of f(m) in (m, D]; each
    append lands on the modulus that m is a root of.  Residues above m
    come for free from periodicity of f mod d.
    """
    decompose_delta(b, c)
    if D > _ROOT_TABLE_CAP:
        raise ResourceLimitError(f"root table range {D} exceeds cap {_ROOT_TABLE_CAP}")
    spf = build_spf_table(D + abs(b) + abs(c) + 4).spf.tolist()
    roots: list[list[int]] = [[] for _ in range(D + 1)]
    for m in range(0, D):
        xb = m - b
        xc = m - c
        if xb == 0 or xc == 0:
            for d in range(m + 1, D + 1):
                roots[d].append(m)
            continue
        exps: dict[int, int] = {}
        for v in (abs(xb), abs(xc)):
            while v > 1:
                p = spf[v]
                e = 0
                while v % p == 0:
                    v //= p
                    e += 1
                exps[p] = exps.get(p, 0) + e
        divs = [1]
        for p, e in exps.items():
            pk = 1
            grown = []
            for _ in range(e):
                pk *= p
                if pk > D:
                    break
                for v in divs:
                    w = v * pk
                    if w <= D:
                        grown.append(w)
            divs += grown
        for w in divs:
            if w > m:
                roots[w].append(m)
    return roots


def tau_quad_prefix_hyperbola(b: int, c: int, N: int) -> np.ndarray:
    """int64 array P with P[n] = S(n) for 0 <= n <= N, hyperbola path.

    For each d <= sqrt(f(N)), lifts of each root of f mod d are counted
    from the first index where f(n) >= d^2; doubling and subtracting the
    exact perfect-square indicator recovers every tau(f(n)) at once.
    """
    dec = _validated_range(b, c, N)
    out = np.zeros(max(N + 1, 1), dtype=np.int64)
    cs = dec.c_star
    if N < cs:
        return out
    X = isqrt((N - b) * (N - c))
    roots = f_root_table(b, c, X)
    m0 = (b + c) // 2
    delta = dec.delta
    halves = np.zeros(N + 1, dtype=np.int32)
    for d in range(1, X + 1):
        lo = m0 + isqrt(d * d + delta - 1) + 1  # first n with f(n) >= d^2
        if lo < cs:
            lo = cs
        if lo > N:
            continue
        for a in roots[d]:
            start = lo + (a - lo) % d
            if start <= N:
                halves[start::d] += 1
    ns = np.arange(cs, N + 1, dtype=np.int64)
    f = (ns - b) * (ns - c)
    s = np.sqrt(f.astype(np.float64)).astype(np.int64)
    s = np.where((s + 1) * (s + 1) <= f, s + 1, s)
    s = np.where(s * s > f, s - 1, s)
    is_square = (s * s == f).astype(np.int64)
    out[cs:] = np.cumsum(2 * halves[cs:].astype(np.int64) - is_square)
    return out


def tau_quad_sum_hyperbola(b: int, c: int, N: int,
                           dec: DeltaDecomposition | None = None) -> int:
    """S(N) by the hyperbola rearrangement; equals tau_quad_sum_exact."""
    if dec is not None and (dec.b, dec.c) != (b, c):
        raise ValueError("decomposition does not match (b, c)")
    return int(tau_quad_prefix_hyperbola(b, c, N)[-1] if N >= 1 else 0)


def asymptotic_scan(b: int, c: int, grid) -> ScanTable:
    """Exact S at each grid point plus the ratio against N ln^2 N."""
    grid = [int(N) for N in grid]
    if not grid:
        raise ValueError("grid must be nonempty")
    if any(n2 <= n1 for n1, n2 in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    if grid[0] < 2:
        raise ValueError("grid values must be >= 2 (ratio undefined at N=1)")
    prefix = tau_quad_prefix_exact(b, c, grid[-1])
    rows = []
    for N in grid:
        s = int(prefix[N])
        rows.append((N, s, s / (N * math.log(N) ** 2)))
    return ScanTable(rows=rows)


def fit_leading_coefficient(scan: ScanTable) -> tuple[float, float, float]:
    """Least squares for S(N) ~ a N ln^2 N + b2 N ln N + c3 N over the rows."""
    if len(scan.rows) < 3:
        raise ValueError("need at least 3 rows to fit 3 coefficients")
    N = np.array([r[0] for r in scan.rows], dtype=np.float64)
    y = np.array([r[1] for r in scan.rows], dtype=np.float64)
    logN = np.log(N)
    design = np.column_stack([N * logN**2, N * logN, N])
    if np.linalg.matrix_rank(design) < 3:
        raise ValueError("normal equations singular; need 3 distinct N values")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    scan.fit = (float(coef[0]), float(coef[1]), float(coef[2]))
    return scan.fit
