"""Exact prime-field linear algebra and small-degree univariate root finding.

Rank computation is plain Gaussian elimination over F_p.  For p below
isqrt(2^63) the elimination runs vectorized on int64 numpy arrays (products
of two reduced entries fit in a signed 64-bit word); larger primes fall back
to object arrays of Python integers, which stay exact at any size.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

# Largest modulus for which (p-1)^2 still fits in int64.
_INT64_SAFE_PRIME = 3_037_000_499


def inverse_mod(a: int, p: int) -> int:
    return pow(a % p, -1, p)


@dataclass(frozen=True)
class ConditionMatrix:
    """Interpolation conditions: one row per derivative condition per point,
    one column per ambient monomial, entries in F_p."""

    entries: Tuple[Tuple[int, ...], ...]
    prime: int

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], prime: int) -> "ConditionMatrix":
        return ConditionMatrix(tuple(tuple(int(x) % prime for x in r) for r in rows), prime)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def exact_rank(matrix, prime: int = 0) -> int:
    """Exact rank of a ConditionMatrix (or raw rows with an explicit prime)."""
    if isinstance(matrix, ConditionMatrix):
        if matrix.nrows == 0:
            return 0
        return rank_mod_p(matrix.entries, matrix.prime)
    if not prime:
        raise ValueError("a prime is required for raw matrix input")
    rows = np.asarray(matrix)
    if rows.size == 0:
        return 0
    return rank_mod_p(rows, prime)


def rank_mod_p(matrix, p: int) -> int:
    """Exact rank of an integer matrix over F_p by row elimination."""
    arr = np.asarray(matrix)
    if arr.size == 0:
        return 0
    if arr.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    # rank(A) = rank(A^T); eliminating on the short side is cheaper.
    if arr.shape[0] > arr.shape[1]:
        arr = arr.T
    dtype = np.int64 if p <= _INT64_SAFE_PRIME else object
    a = np.array(arr, dtype=dtype) % p
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        pivot = None
        for i in range(rank, n_rows):
            if a[i, col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != rank:
            a[[rank, pivot], :] = a[[pivot, rank], :]
        inv = inverse_mod(int(a[rank, col]), p)
        a[rank, :] = (a[rank, :] * inv) % p
        below = a[rank + 1:, col]
        nz = np.nonzero(below)[0]
        if nz.size:
            rows = nz + rank + 1
            factors = a[rows, col]
            a[rows, :] = (a[rows, :] - factors[:, None] * a[rank, :][None, :]) % p
        rank += 1
        if rank == n_rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Dense univariate polynomials over F_p, ascending coefficients.
# Degrees stay tiny (<= 6) so quadratic algorithms are fine.


def _pstrip(f: List[int]) -> List[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f: Sequence[int], g: Sequence[int], p: int) -> List[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                if gj:
                    out[i + j] = (out[i + j] + fi * gj) % p
    return _pstrip(out)


def _pmod(f: Sequence[int], g: Sequence[int], p: int) -> List[int]:
    """f mod g for monic g."""
    f = list(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        lead = f[-1] % p
        if lead:
            shift = len(f) - 1 - dg
            for i in range(dg):
                f[shift + i] = (f[shift + i] - lead * g[i]) % p
        f.pop()
    return _pstrip(f)


def _pdivmod(f: Sequence[int], g: Sequence[int], p: int):
    """(quotient, remainder) of f by monic g."""
    f = list(f)
    dg = len(g) - 1
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        lead = f[-1] % p
        shift = len(f) - 1 - dg
        if lead:
            q[shift] = lead
            for i in range(dg):
                f[shift + i] = (f[shift + i] - lead * g[i]) % p
        f.pop()
    return _pstrip(q), _pstrip(f)


def _monic(f: Sequence[int], p: int) -> List[int]:
    f = _pstrip([c % p for c in f])
    if not f:
        return []
    inv = inverse_mod(f[-1], p)
    return [(c * inv) % p for c in f]


def _pgcd(f: Sequence[int], g: Sequence[int], p: int) -> List[int]:
    f, g = _monic(f, p), _monic(g, p)
    while g:
        f, g = g, _monic(_pmod(f, g, p), p)
    return f


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> List[int]:
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def poly_roots(coeffs: Sequence[int], p: int, rng) -> List[int]:
    """Sorted distinct roots in F_p of a nonzero polynomial of small degree.

    The root part is isolated as gcd(T^p - T, f) and then split by
    equal-degree splitting with random shifts; `rng` drives the shifts, so
    results are deterministic for a fixed seed.
    """
    f = _monic(coeffs, p)
    if not f:
        raise ValueError("the zero polynomial has every root")
    if len(f) == 1:
        return []
    xp = _ppowmod([0, 1], p, f, p)
    xp_minus_x = list(xp) + [0] * max(0, 2 - len(xp))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _pgcd(_pstrip(xp_minus_x), f, p)
    return sorted(_split_linear(g, p, rng))


def _split_linear(g: List[int], p: int, rng) -> List[int]:
    """Roots of a monic product of distinct linear factors."""
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0]) % p]
    half = (p - 1) // 2
    while True:
        shift = rng.randrange(p)
        h = _ppowmod([shift, 1], half, g, p)
        h = list(h) if h else [0]
        h[0] = (h[0] - 1) % p
        d = _pgcd(_pstrip(h), g, p)
        if 0 < len(d) - 1 < deg:
            q, r = _pdivmod(g, d, p)
            if r:
                raise ArithmeticError("equal-degree split produced a non-divisor")
            return _split_linear(d, p, rng) + _split_linear(_monic(q, p), p, rng)
