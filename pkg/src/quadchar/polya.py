"""Gauss sums, the truncated Fourier expansion of partial character sums,
friable/non-friable exponential sums, and the phase-maximized non-friable
sum S_{y,z} with its grid certificate.

For real chi_d the +-n pairing collapses the two-sided Fourier sum to a real
series: with q = |d| and G the Gauss sum,

    d > 0:  G/(2 pi i) sum_{1<=|n|<=z} ... = (sqrt q / pi) sum_n chi(n) sin(2 pi n a)/n
    d < 0:                                 = (sqrt q / pi) sum_n chi(n) (1 - cos(2 pi n a))/n
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import arith, charsum
from .constants import SQRT3, TWO_PI
from .errors import AccuracyError

__all__ = [
    "GaussSumValue",
    "ExpSumSpec",
    "SyzDetail",
    "gauss_sum",
    "gauss_sum_closed",
    "polya_rhs",
    "polya_rhs_rational",
    "truncation_residual_scan",
    "exp_sum",
    "s_yz_max",
    "c_x_membership",
    "DEFAULT_GRID",
    "GRID_CAP",
]

DEFAULT_GRID = 1 << 16
GRID_CAP = 1 << 24


@dataclass
class GaussSumValue:
    """Gauss sum of chi_d by direct summation, with its closed-form error."""

    d: int
    value: complex

    @property
    def closed_form(self) -> complex:
        return gauss_sum_closed(self.d)

    @property
    def closed_form_error(self) -> float:
        return abs(self.value - self.closed_form)


def gauss_sum_closed(d: int) -> complex:
    """sqrt(d) for d > 0, i sqrt(|d|) for d < 0."""
    if d > 0:
        return complex(math.sqrt(d), 0.0)
    return complex(0.0, math.sqrt(-d))


def gauss_sum(d: int, sieve: arith.PrimeSieve | None = None) -> GaussSumValue:
    """sum_{n <= |d|} chi_d(n) e(n/|d|) summed directly."""
    q = abs(d)
    cv = charsum.char_values(d, q, sieve)
    n = np.arange(1, q + 1, dtype=np.float64)
    phases = np.exp((TWO_PI * 1j / q) * n)
    return GaussSumValue(d, complex(np.sum(cv.values[1:] * phases)))


def _phase_frac(n: np.ndarray, alpha: float) -> np.ndarray:
    """Fractional part of n*alpha with the phase error kept near 1e-12.

    alpha is split into a 24-bit head (whose product with integer n < 2^28
    is exact in float64) plus a small tail; the head product is reduced
    exactly by fmod before the tail is added.
    """
    hi = float(np.float32(alpha))
    lo = alpha - hi
    frac = np.fmod(n * hi, 1.0) + n * lo
    frac -= np.floor(frac)
    return frac


@dataclass
class ExpSumSpec:
    """Specification of a length-z exponential sum over n <= z.

    ``d`` = None means the trivial character (all coefficients 1).
    ``restriction``: "all", "friable" (n in S(y)) or "nonfriable".
    """

    d: int | None
    z: int
    y: float
    restriction: str = "all"
    coprime_to: int = 1

    def __post_init__(self):
        if self.z < 1 or self.y < 2 or self.coprime_to < 1:
            raise ValueError("ExpSumSpec requires z >= 1, y >= 2, coprime_to >= 1")
        if self.restriction not in ("all", "friable", "nonfriable"):
            raise ValueError(f"unknown restriction {self.restriction!r}")


def _chi_upto(d: int | None, z: int, sieve: arith.PrimeSieve | None) -> np.ndarray:
    """chi_d(n) for 0 <= n <= z as float64 (ones for the trivial character)."""
    if d is None:
        vals = np.ones(z + 1)
        vals[0] = 0.0
        return vals
    return charsum.char_values(d, z, sieve).values.astype(np.float64)


def _restriction_mask(spec: ExpSumSpec, smooth: arith.SmoothnessSieve | None) -> np.ndarray:
    n = np.arange(spec.z + 1)
    mask = n >= 1
    if spec.restriction != "all":
        if smooth is None or smooth.limit < spec.z:
            raise ValueError("smoothness sieve missing or smaller than z")
        friable = smooth.lpf[: spec.z + 1] <= spec.y
        mask &= friable if spec.restriction == "friable" else ~friable
    if spec.coprime_to > 1:
        mask &= np.gcd(n, spec.coprime_to) == 1
    return mask


def exp_sum(
    spec: ExpSumSpec,
    alpha: float,
    prime_sieve: arith.PrimeSieve | None = None,
    smooth_sieve: arith.SmoothnessSieve | None = None,
) -> complex:
    """sum over restricted n <= z of chi(n) e(n alpha) / n."""
    mask = _restriction_mask(spec, smooth_sieve)
    chi = _chi_upto(spec.d, spec.z, prime_sieve)
    n = np.nonzero(mask)[0]
    if n.size == 0:
        return 0j
    coeff = chi[n] / n
    phase = _phase_frac(n.astype(np.float64), float(alpha))
    return complex(np.sum(coeff * np.exp((TWO_PI * 1j) * phase)))


def polya_rhs(d: int, alpha: float, z: int, sieve: arith.PrimeSieve | None = None) -> complex:
    """Truncated Fourier main term G/(2 pi i) sum_{1<=|n|<=z} chi(n)(1-e(-n alpha))/n.

    The +-n pairing is done in one pass (see module docstring); the result
    is exactly real for a real character and is returned as a complex with
    zero imaginary part.
    """
    q = abs(d)
    chi = charsum.char_values(d, z, sieve).values
    n = np.arange(1, z + 1, dtype=np.float64)
    phase = _phase_frac(n, float(alpha))
    if d > 0:
        series = np.sin(TWO_PI * phase)
    else:
        series = 1.0 - np.cos(TWO_PI * phase)
    total = float(np.sum(chi[1:].astype(np.float64) * series / n))
    return complex(math.sqrt(q) / math.pi * total, 0.0)


def polya_rhs_rational(
    d: int,
    k: int,
    den: int,
    z: int,
    sieve: arith.PrimeSieve | None = None,
    inv: np.ndarray | None = None,
) -> complex:
    """polya_rhs at alpha = k/den with exact integer phases.

    The summand is periodic mod L = lcm(|d|, den), so the sum collapses to
    L coefficient values against harmonic sums over residue classes; cost
    O(z) with no trigonometric call per term.  ``inv`` may pass a
    precomputed array of 1/n (index n, length > z).
    """
    q = abs(d)
    period = charsum.char_values(d, q, sieve).values
    ell = math.lcm(q, den)
    if inv is None:
        inv = _inverses(z)
    rows = (z + ell - 1) // ell
    padded = np.zeros(rows * ell)
    padded[:z] = inv[1 : z + 1]
    colsum = padded.reshape(rows, ell).sum(axis=0)  # column j <-> n = j+1 (mod ell)
    h_mod = np.empty(ell)
    h_mod[(np.arange(ell) + 1) % ell] = colsum
    r = np.arange(ell)
    chi_r = period[r % q].astype(np.float64)
    phase_num = (r * k) % den
    if d > 0:
        w = np.sin((TWO_PI / den) * phase_num)
    else:
        w = 1.0 - np.cos((TWO_PI / den) * phase_num)
    total = float(np.sum(chi_r * w * h_mod))
    return complex(math.sqrt(q) / math.pi * total, 0.0)


def _inverses(z: int) -> np.ndarray:
    inv = np.empty(z + 1)
    inv[0] = 0.0
    inv[1:] = 1.0 / np.arange(1, z + 1)
    return inv


def truncation_residual_scan(
    x_max: int,
    sieve: arith.PrimeSieve | None = None,
    den: int = 10,
    numerators: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8, 9),
) -> tuple[np.ndarray, np.ndarray]:
    """|exact partial sum - truncated Fourier value| for every fundamental
    |d| <= x_max at alpha = k/den, z = |d|^2.

    Returns (ds, residuals) with residuals shaped (len(ds), len(numerators)).
    """
    if sieve is None:
        sieve = arith.sieve_primes(x_max)
    ds = arith.enumerate_fundamental(x_max)
    inv = _inverses(x_max * x_max)
    res = np.empty((ds.shape[0], len(numerators)))
    ang = TWO_PI / den
    for i, d in enumerate(ds):
        d = int(d)
        q = abs(d)
        z = q * q
        period = charsum.char_values(d, q, sieve).values
        partial = np.cumsum(period.astype(np.int64))  # partial[t] = S(t)
        ell = math.lcm(q, den)
        rows = (z + ell - 1) // ell
        padded = np.zeros(rows * ell)
        padded[:z] = inv[1 : z + 1]
        colsum = padded.reshape(rows, ell).sum(axis=0)
        h_mod = np.empty(ell)
        h_mod[(np.arange(ell) + 1) % ell] = colsum
        r = np.arange(ell)
        chi_h = period[r % q].astype(np.float64) * h_mod
        scale = math.sqrt(q) / math.pi
        for j, k in enumerate(numerators):
            phase_num = (r * k) % den
            if d > 0:
                w = np.sin(ang * phase_num)
            else:
                w = 1.0 - np.cos(ang * phase_num)
            rhs = scale * float(np.sum(chi_h * w))
            lhs = int(partial[(k * q) // den])
            res[i, j] = abs(lhs - rhs)
    return ds, res


@dataclass
class SyzDetail:
    value: float  # certified upper bound: grid max + slack
    grid_max: float
    slack: float
    grid: int
    terms: int  # nonzero coefficients entering the sum


def s_yz_max(
    d: int,
    y: float,
    z: int,
    prime_sieve: arith.PrimeSieve | None = None,
    smooth_sieve: arith.SmoothnessSieve | None = None,
    grid: int = DEFAULT_GRID,
    max_slack: float | None = None,
    return_detail: bool = False,
):
    """max over alpha of |sum_{n <= z, n not in S(y)} chi_d(n) e(n alpha)/n|.

    Evaluated on a uniform grid of G phases by FFT and certified by the
    Lipschitz bound |F'| <= 2 pi #terms: the returned value (grid max plus
    slack) is >= the true maximum and overestimates it by at most slack.
    When ``max_slack`` is given the grid is enlarged as needed.

    Raises:
        AccuracyError: if meeting ``max_slack`` needs a grid beyond GRID_CAP.
    """
    if y < 2 or z < 1:
        raise ValueError("require y >= 2 and z >= 1")
    if smooth_sieve is None or smooth_sieve.limit < z:
        raise ValueError("smoothness sieve missing or smaller than z")
    if y >= z:
        detail = SyzDetail(0.0, 0.0, 0.0, 0, 0)
        return detail if return_detail else 0.0
    n = np.arange(z + 1)
    mask = (n >= 2) & (smooth_sieve.lpf[: z + 1] > y)
    chi = _chi_upto(d, z, prime_sieve)
    mask &= chi[: z + 1] != 0
    idx = np.nonzero(mask)[0]
    terms = int(idx.size)
    if terms == 0:
        detail = SyzDetail(0.0, 0.0, 0.0, 0, 0)
        return detail if return_detail else 0.0
    g = int(grid)
    if max_slack is not None:
        need = math.pi * terms / max_slack
        while g < need:
            g *= 2
        if g > GRID_CAP:
            raise AccuracyError(
                f"slack {max_slack} needs grid {g} > cap {GRID_CAP}; "
                "reduce z or relax the slack"
            )
    coeff = np.bincount(idx % g, weights=chi[idx] / idx, minlength=g)
    grid_max = float(np.abs(np.fft.rfft(coeff)).max())
    slack = math.pi * terms / g
    detail = SyzDetail(grid_max + slack, grid_max, slack, g, terms)
    return detail if return_detail else detail.value


def default_z(d: int) -> int:
    """Truncation default |d| * ceil(log |d|)."""
    q = abs(d)
    return q * math.ceil(math.log(q))


def c_x_membership(
    d: int,
    tau: float,
    z: int | None = None,
    C: float = 2.0,
    c_even: float = 2.0,
    prime_sieve: arith.PrimeSieve | None = None,
    smooth_sieve: arith.SmoothnessSieve | None = None,
    grid: int = DEFAULT_GRID,
    max_slack: float = 0.05,
    m_value: float | None = None,
) -> bool:
    """Membership in the structured set: S_{y,z}(chi_d) <= 1 and m(chi_d) > tau.

    y = e^(tau + C) for odd chi_d (d < 0) and e^(sqrt(3) tau + c_even) for
    even ones.  The S bound uses the certified grid value, so borderline
    discriminants whose true maximum is just below 1 may be rejected.
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    m = charsum.normalized_m(d, prime_sieve) if m_value is None else m_value
    if not m > tau:
        return False
    y = math.exp(tau + C) if d < 0 else math.exp(SQRT3 * tau + c_even)
    if z is None:
        z = default_z(d)
    bound = s_yz_max(d, y, z, prime_sieve, smooth_sieve, grid=grid, max_slack=max_slack)
    return bound <= 1.0
