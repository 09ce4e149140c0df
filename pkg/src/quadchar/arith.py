"""Core integer arithmetic.

Prime and smoothness sieves, the Kronecker symbol, fundamental-discriminant
recognition and enumeration, and the small multiplicative helper functions
(Euler phi, Moebius, distinct-prime count).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._kernels import kronecker_jit

__all__ = [
    "PrimeSieve",
    "SmoothnessSieve",
    "sieve_primes",
    "smoothness_sieve",
    "kronecker",
    "is_fundamental",
    "enumerate_fundamental",
    "euler_phi",
    "moebius",
    "omega",
]


def _cache_dir() -> Path | None:
    path = os.environ.get("CHARSUM_CACHE_DIR")
    if not path:
        return None
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


@dataclass
class PrimeSieve:
    """Primes and smallest-prime-factor table up to ``limit`` (inclusive).

    Attributes:
        limit: upper bound of both tables
        primes: ascending int64 array of all primes <= limit
        spf: int32 array with spf[n] = smallest prime factor of n
            for 2 <= n <= limit (spf[0] = spf[1] = 0)
    """

    limit: int
    primes: np.ndarray
    spf: np.ndarray

    def primes_upto(self, y: float) -> np.ndarray:
        """Primes <= y as a view into the sorted prime array."""
        hi = np.searchsorted(self.primes, math.floor(y), side="right")
        return self.primes[:hi]


@dataclass
class SmoothnessSieve:
    """Largest-prime-factor table up to ``limit`` (lpf[1] = 1).

    n is y-friable exactly when lpf[n] <= y; flat int32 storage, ~4 bytes
    per entry, which caps desk scale at a few 10^8 entries.
    """

    limit: int
    lpf: np.ndarray

    def friable_mask(self, y: float, upto: int | None = None) -> np.ndarray:
        """Boolean array f with f[n] = (n is y-friable), indices 0..upto."""
        hi = self.limit if upto is None else upto
        if hi > self.limit:
            raise ValueError(f"smoothness sieve covers {self.limit} < requested {hi}")
        mask = self.lpf[: hi + 1] <= y
        mask[0] = False
        return mask


def sieve_primes(limit: int) -> PrimeSieve:
    """Eratosthenes-style sieve producing primes and smallest prime factors.

    Raises:
        ValueError: if limit < 2.
    """
    if limit < 2:
        raise ValueError("sieve_primes requires limit >= 2")
    cache = _cache_dir()
    if cache is not None:
        f = cache / f"spf_{limit}.npy"
        if f.exists():
            spf = np.load(f)
            primes = _primes_from_spf(spf)
            return PrimeSieve(limit, primes, spf)
    spf = np.zeros(limit + 1, dtype=np.int32)
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
    rest = spf[2:] == 0
    spf[2:][rest] = np.arange(2, limit + 1, dtype=np.int32)[rest]
    if cache is not None:
        np.save(cache / f"spf_{limit}.npy", spf)
    primes = _primes_from_spf(spf)
    return PrimeSieve(limit, primes, spf)


def _primes_from_spf(spf: np.ndarray) -> np.ndarray:
    idx = np.arange(spf.shape[0], dtype=np.int32)
    mask = spf == idx
    mask[:2] = False
    return np.nonzero(mask)[0].astype(np.int64)


def smoothness_sieve(limit: int) -> SmoothnessSieve:
    """Largest-prime-factor table for 1 <= n <= limit."""
    if limit < 2:
        raise ValueError("smoothness_sieve requires limit >= 2")
    cache = _cache_dir()
    if cache is not None:
        f = cache / f"lpf_{limit}.npy"
        if f.exists():
            return SmoothnessSieve(limit, np.load(f))
    lpf = np.zeros(limit + 1, dtype=np.int32)
    lpf[1] = 1
    ps = sieve_primes(limit).primes
    half = limit // 2
    for p in ps[ps <= half]:
        lpf[p::p] = p
    big = ps[ps > half]
    lpf[big] = big.astype(np.int32)
    if cache is not None:
        np.save(cache / f"lpf_{limit}.npy", lpf)
    return SmoothnessSieve(limit, lpf)


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n) in {-1, 0, +1}.

    Total on all integer pairs: (d/0) = 1 iff d = +-1, (d/-1) = sign(d),
    (d/2) by the mod-8 rule, odd part by Jacobi reciprocity.  O(log) per
    call; batch evaluation should go through :mod:`quadchar.charsum`.
    """
    return int(kronecker_jit(d, n))


def _squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            n //= i
            if n % i == 0:
                return False
        i += 1
    return True


def is_fundamental(d: int) -> bool:
    """True iff d indexes a real primitive character chi_d.

    Either d = 1 (mod 4) and squarefree, or d = 4m with m = 2, 3 (mod 4)
    and m squarefree.  d = 1 is excluded (trivial character).
    """
    if d == 0 or d == 1:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def enumerate_fundamental(x: int) -> np.ndarray:
    """All fundamental discriminants with 1 < |d| <= x, both signs.

    Ordered by |d| ascending, negative before positive at equal |d|.

    Raises:
        ValueError: if x < 3.
    """
    if x < 3:
        raise ValueError("enumerate_fundamental requires x >= 3")
    sf = np.ones(x + 1, dtype=bool)
    for i in range(2, math.isqrt(x) + 1):
        sf[i * i :: i * i] = False
    n = np.arange(x + 1)
    r4 = n % 4
    pos = (r4 == 1) & sf
    pos[1] = False
    neg = (r4 == 3) & sf
    div4 = np.zeros(x + 1, dtype=bool)
    div4[4::4] = True
    m = n >> 2
    mr = m % 4
    pos4 = div4 & sf[m] & ((mr == 2) | (mr == 3))
    # d = 4m with m < 0: |d|/4 = k, m = -k, and -k = 2,3 (mod 4) iff k = 1,2 (mod 4)
    neg4 = div4 & sf[m] & ((mr == 1) | (mr == 2))
    ds = np.concatenate([n[pos | pos4], -n[neg | neg4]])
    order = np.lexsort((ds, np.abs(ds)))
    return ds[order]


def euler_phi(n: int) -> int:
    """Euler totient, n >= 1."""
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def moebius(n: int) -> int:
    """Moebius function, n >= 1."""
    if n < 1:
        raise ValueError("moebius requires n >= 1")
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def omega(n: int) -> int:
    """Number of distinct prime factors, n >= 1."""
    if n < 1:
        raise ValueError("omega requires n >= 1")
    count = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            count += 1
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        count += 1
    return count
