"""Numba kernels for the performance-critical inner loops.

Everything here is plain integer/float code compiled with numba; the public
API wrapping these kernels lives in :mod:`quadchar.arith`,
:mod:`quadchar.charsum` and :mod:`quadchar.dickman`.
"""

import numpy as np
from numba import njit, prange


@njit("int64(int64, int64)", cache=True, nogil=True)
def kronecker_jit(a, n):
    """Kronecker symbol (a/n), total on all integer pairs."""
    if n == 0:
        return 1 if (a == 1 or a == -1) else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        while n % 2 == 0:
            n //= 2
            r = a % 8
            if r == 3 or r == 5:
                k = -k
    a = a % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            r = n % 8
            if r == 3 or r == 5:
                k = -k
        t = a
        a = n
        n = t
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a = a % n
    if n == 1:
        return k
    return 0


@njit("void(int64, int64, int32[:], int8[:])", cache=True, nogil=True)
def chi_fill_jit(d, limit, spf, out):
    """Fill out[n] = chi_d(n) for 0 <= n <= limit.

    Uses complete multiplicativity: chi(n) = chi(spf(n)) * chi(n/spf(n)),
    with a Kronecker evaluation only at primes.  ``spf`` must cover limit.
    """
    out[0] = 0
    if limit >= 1:
        out[1] = 1
    for n in range(2, limit + 1):
        p = spf[n]
        if p == n:
            out[n] = np.int8(kronecker_jit(d, n))
        else:
            out[n] = out[p] * out[n // p]


@njit("void(int64[:], int32[:], int64[:], int64[:])", cache=True, parallel=True)
def max_partial_sum_jit(ds, spf, m_out, n_out):
    """Half-range scan for (M, N) of each fundamental discriminant in ``ds``.

    By the reflection identity S(|d|-1-t) = -chi_d(-1) S(t) the absolute
    partial sums on (|d|/2, |d|) mirror those on the lower half, so scanning
    t <= (|d|-1)//2 finds both the maximum and its least attaining cutoff.
    """
    for i in prange(ds.shape[0]):
        d = ds[i]
        q = -d if d < 0 else d
        top = (q - 1) // 2
        chi = np.zeros(top + 1, dtype=np.int8)
        chi[1] = np.int8(1)
        s = 1
        best = 1
        best_t = 1
        for n in range(2, top + 1):
            p = spf[n]
            if p == n:
                c = np.int8(kronecker_jit(d, n))
            else:
                c = chi[p] * chi[n // p]
            chi[n] = c
            s += c
            a = -s if s < 0 else s
            if a > best:
                best = a
                best_t = n
        m_out[i] = best
        n_out[i] = best_t


@njit("void(int64[:], int64[:], int32[:], int64[:])", cache=True, parallel=True)
def partial_sums_jit(ds, ts, spf, out):
    """out[i] = sum_{n <= ts[i]} chi_{ds[i]}(n), full forward scan."""
    for i in prange(ds.shape[0]):
        d = ds[i]
        t = ts[i]
        chi = np.zeros(t + 1, dtype=np.int8)
        s = 0
        if t >= 1:
            chi[1] = np.int8(1)
            s = 1
        for n in range(2, t + 1):
            p = spf[n]
            if p == n:
                c = np.int8(kronecker_jit(d, n))
            else:
                c = chi[p] * chi[n // p]
            chi[n] = c
            s += c
        out[i] = s


@njit("void(float64[:], int64)", cache=True)
def dickman_fill_jit(rho, spu):
    """Step t*rho'(t) = -rho(t-1) forward on a grid with ``spu`` steps per unit.

    ``rho`` enters with rho[0:spu+1] = 1 and is filled through its last index.
    The right-hand side does not involve rho(t) itself, so the fourth-order
    step is Simpson's rule on g(t) = -rho(t-1)/t; the midpoint of the delayed
    value is cubic-interpolated with a stencil clamped inside one unit
    interval (rho has a derivative kink at each integer).
    """
    steps = rho.shape[0] - 1
    h = 1.0 / spu
    for k in range(spu, steps):
        j = k - spu
        g0 = -rho[j] / (k * h)
        seg = (j // spu) * spu
        s = j - 1
        if s < seg:
            s = seg
        if s > seg + spu - 3:
            s = seg + spu - 3
        x = j + 0.5 - s
        if x < 1.0:
            w0, w1, w2, w3 = 0.3125, 0.9375, -0.3125, 0.0625
        elif x < 2.0:
            w0, w1, w2, w3 = -0.0625, 0.5625, 0.5625, -0.0625
        else:
            w0, w1, w2, w3 = 0.0625, -0.3125, 0.9375, 0.3125
        rho_mid = w0 * rho[s] + w1 * rho[s + 1] + w2 * rho[s + 2] + w3 * rho[s + 3]
        g_mid = -rho_mid / (k * h + 0.5 * h)
        g1 = -rho[j + 1] / ((k + 1) * h)
        rho[k + 1] = rho[k] + (h / 6.0) * (g0 + 4.0 * g_mid + g1)


@njit("int64(int64)", cache=True)
def count_primes_trial_jit(limit):
    """pi(limit) by per-integer trial division (oracle, independent of sieves)."""
    if limit < 2:
        return 0
    count = 1  # n = 2
    for n in range(3, limit + 1, 2):
        is_p = True
        f = 3
        while f * f <= n:
            if n % f == 0:
                is_p = False
                break
            f += 2
        if is_p:
            count += 1
    return count
