"""Best rational approximation and the derived exponents.

The approximation convention: among all reduced fractions a/b with b <= B,
minimize b * |alpha - a/b| (ties: smallest b, then smallest a).  The winner
is always a continued-fraction convergent, found by the exact-integer
Stern-Brocot/Euclid descent; it automatically satisfies the Dirichlet bound
|alpha - a/b| <= 1/(b*B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["RationalApprox", "best_approx", "b0_of", "exponent_u", "UCLAMP_DEFAULT"]

#: Clamp value reported by exponent_u for an exact rational hit.
UCLAMP_DEFAULT = 10.0


@dataclass
class RationalApprox:
    a: int
    b: int
    target: Fraction  # exact value of alpha that was approximated
    B: int
    quality: float  # |alpha - a/b|

    @property
    def quality_exact(self) -> Fraction:
        return abs(self.target - Fraction(self.a, self.b))


def _as_fraction(alpha) -> Fraction:
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, tuple):
        return Fraction(alpha[0], alpha[1])
    return Fraction(alpha)  # floats convert exactly


def best_approx(alpha, B: int) -> RationalApprox:
    """Reduced a/b, b <= B, minimizing b*|alpha - a/b| (exact arithmetic).

    ``alpha`` may be a float (converted exactly), a Fraction, or an
    (num, den) tuple.  B >= 1.
    """
    if B < 1:
        raise ValueError("denominator bound B must be >= 1")
    frac = _as_fraction(alpha)
    if frac < 0 or frac > 1:
        raise ValueError("alpha must lie in [0, 1]")
    num, den = frac.numerator, frac.denominator
    # Convergents of num/den by Euclid; keep the last with denominator <= B.
    # |b*alpha - a| strictly decreases along convergents and no fraction with
    # a smaller denominator beats the current one, so that last convergent is
    # the global minimizer of b*|alpha - a/b| over b <= B.
    n, m = num, den
    p_prev, q_prev = 0, 1
    p_cur, q_cur = 1, 0
    a_best, b_best = 0, 1
    while m != 0:
        step = n // m
        n, m = m, n - step * m
        p_nxt = step * p_cur + p_prev
        q_nxt = step * q_cur + q_prev
        if q_nxt > B:
            break
        a_best, b_best = p_nxt, q_nxt
        p_prev, q_prev = p_cur, q_cur
        p_cur, q_cur = p_nxt, q_nxt
    return RationalApprox(
        a=a_best, b=b_best, target=frac, B=B, quality=float(abs(frac - Fraction(a_best, b_best)))
    )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def b0_of(b: int) -> int:
    """b if b is prime, 1 otherwise."""
    if b < 1:
        raise ValueError("b must be >= 1")
    return b if _is_prime(b) else 1


def exponent_u(
    beta,
    k: int,
    ell: int,
    tau: float,
    scale: float = 1.0,
    u_clamp: float = UCLAMP_DEFAULT,
) -> tuple[float, bool]:
    """Solve |beta - k/ell| = 1/(ell * e^(scale * tau * u)) for u.

    Returns (u, clamped).  beta = k/ell exactly gives (u_clamp, True);
    ``scale`` is 1 for the odd-family normalization and sqrt(3) for the
    even one.

    Raises:
        ValueError: if |beta - k/ell| > 1/ell (not a valid approximation),
            or tau <= 0 / ell < 1.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    frac = _as_fraction(beta)
    diff = abs(frac - Fraction(k, ell))
    scaled = ell * diff
    if scaled > 1:
        raise ValueError("|beta - k/ell| exceeds 1/ell; approximation not valid")
    if scaled == 0:
        return u_clamp, True
    u = -math.log(float(scaled)) / (scale * tau)
    if u > u_clamp:
        return u_clamp, True
    return u, False
