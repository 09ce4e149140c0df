"""Batch evaluation of chi_d and its partial sums.

Computes character value tables over a period, the maximum absolute partial
sum M(chi_d) with its least attaining cutoff N, the normalized value
m(chi_d) = M * pi / (e^gamma sqrt|d|), and exact partial sums at arbitrary
fractional cutoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith
from ._kernels import chi_fill_jit, max_partial_sum_jit, partial_sums_jit
from .constants import EXP_GAMMA

__all__ = [
    "CharacterValues",
    "CharSumProfile",
    "char_values",
    "max_partial_sum",
    "max_partial_sum_naive",
    "batch_max_partial_sums",
    "normalized_m",
    "partial_sum_at",
    "batch_partial_sums",
    "profile",
]


@dataclass
class CharacterValues:
    """chi_d on 1..limit as an int8 array.

    ``values[n]`` is chi_d(n) for 0 <= n <= limit (values[0] = 0).
    """

    d: int
    values: np.ndarray

    @property
    def limit(self) -> int:
        return self.values.shape[0] - 1


@dataclass
class CharSumProfile:
    d: int
    M: int
    N: int
    m: float
    parity: str  # "odd" for d < 0, "even" for d > 0


def _check_d(d: int) -> int:
    if not arith.is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    return abs(d)


def _small_sieve(limit: int, sieve: arith.PrimeSieve | None) -> arith.PrimeSieve:
    if sieve is None:
        return arith.sieve_primes(max(limit, 2))
    return sieve


def char_values(d: int, limit: int, sieve: arith.PrimeSieve | None = None) -> CharacterValues:
    """chi_d(n) for n = 1..limit via the smallest-prime-factor recurrence.

    Cost is O(limit) with one Kronecker evaluation per prime.  When
    limit > |d| the first period is filled and tiled (period |d|).

    Raises:
        ValueError: if the provided sieve is smaller than min(limit, |d|).
    """
    q = _check_d(d)
    base = min(limit, q)
    sieve = _small_sieve(base, sieve)
    if sieve.limit < base:
        raise ValueError(f"sieve limit {sieve.limit} < required {base}")
    period = np.zeros(min(q, limit + 1), dtype=np.int8)
    chi_fill_jit(d, period.shape[0] - 1, sieve.spf, period)
    if limit < q:
        return CharacterValues(d, period)
    values = np.empty(limit + 1, dtype=np.int8)
    values[:] = period[np.arange(limit + 1) % q]
    return CharacterValues(d, values)


def batch_max_partial_sums(
    ds: np.ndarray, spf: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """(M, N) for every d in ``ds`` via the parallel half-range kernel.

    ``spf`` must cover (max|d| - 1) // 2.
    """
    ds = np.ascontiguousarray(ds, dtype=np.int64)
    m_out = np.empty(ds.shape[0], dtype=np.int64)
    n_out = np.empty(ds.shape[0], dtype=np.int64)
    max_partial_sum_jit(ds, spf, m_out, n_out)
    return m_out, n_out


def max_partial_sum(d: int, sieve: arith.PrimeSieve | None = None) -> tuple[int, int]:
    """(M, N): max_t |sum_{n<=t} chi_d(n)| over 1 <= t < |d| and least such t."""
    q = _check_d(d)
    sieve = _small_sieve(max((q - 1) // 2, 2), sieve)
    m_out, n_out = batch_max_partial_sums(np.array([d], dtype=np.int64), sieve.spf)
    return int(m_out[0]), int(n_out[0])


def max_partial_sum_naive(d: int, sieve: arith.PrimeSieve | None = None) -> tuple[int, int]:
    """Reference (M, N) by a full scan over 1 <= t < |d| (no reflection)."""
    q = _check_d(d)
    cv = char_values(d, q - 1, sieve)
    sums = np.cumsum(cv.values[1:q], dtype=np.int64)
    best = int(np.max(np.abs(sums)))
    best_t = int(np.argmax(np.abs(sums) == best)) + 1
    return best, best_t


def normalized_m(d: int, sieve: arith.PrimeSieve | None = None) -> float:
    """m(chi_d) = M(chi_d) * pi / (e^gamma sqrt|d|)."""
    q = _check_d(d)
    m_val, _ = max_partial_sum(d, sieve)
    return m_val * math.pi / (EXP_GAMMA * math.sqrt(q))


def _cutoff(beta, q: int) -> int:
    """floor(beta * q) with float betas snapped to nearby exact rationals."""
    if isinstance(beta, float):
        beta = Fraction(beta).limit_denominator(10**12)
    else:
        beta = Fraction(beta)
    if beta < 0 or beta > 1:
        raise ValueError("beta must lie in [0, 1]")
    return int(beta * q)


def partial_sum_at(d: int, beta, sieve: arith.PrimeSieve | None = None) -> int:
    """Exact integer sum_{n <= floor(beta |d|)} chi_d(n), beta in [0, 1]."""
    q = _check_d(d)
    t = _cutoff(beta, q)
    if t == 0:
        return 0
    cv = char_values(d, t, sieve)
    return int(np.sum(cv.values[1 : t + 1], dtype=np.int64))


def batch_partial_sums(ds: np.ndarray, ts: np.ndarray, spf: np.ndarray) -> np.ndarray:
    """S_{d_i}(t_i) for paired arrays, parallel over i.  spf must cover max t."""
    ds = np.ascontiguousarray(ds, dtype=np.int64)
    ts = np.ascontiguousarray(ts, dtype=np.int64)
    out = np.empty(ds.shape[0], dtype=np.int64)
    partial_sums_jit(ds, ts, spf, out)
    return out


def profile(d: int, sieve: arith.PrimeSieve | None = None) -> CharSumProfile:
    """Full per-discriminant profile (M, N, m, parity)."""
    q = _check_d(d)
    m_val, n_val = max_partial_sum(d, sieve)
    return CharSumProfile(
        d=d,
        M=m_val,
        N=n_val,
        m=m_val * math.pi / (EXP_GAMMA * math.sqrt(q)),
        parity="odd" if d < 0 else "even",
    )
