"""Pretentious distance, small-conductor primitive character tables, the
nearest-primitive minimizer, and truncated (k-coprime) Euler products.

Character values are stored as exact root-of-unity indices (value at a unit
u is e^(2 pi i value_num[u] / order)) and converted to complex only at use
sites, so repeated distance computations accumulate no phase drift.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .constants import TWO_PI

__all__ = [
    "PrimitiveCharacter",
    "PretenseResult",
    "PretenseBoundReport",
    "primitive_characters",
    "distance_sq",
    "nearest_primitive",
    "truncated_L",
    "pretense_bound_check",
    "chi_prime_map",
]


@dataclass
class PrimitiveCharacter:
    """A primitive Dirichlet character of the given conductor.

    value_num[r] holds t with chi(r) = e^(2 pi i t / order) for units r,
    and -1 for non-units.
    """

    conductor: int
    order: int
    value_num: np.ndarray  # int32, length conductor
    parity: int  # chi(-1): +1 even, -1 odd

    def complex_values(self) -> np.ndarray:
        vals = np.zeros(self.conductor, dtype=np.complex128)
        units = self.value_num >= 0
        vals[units] = np.exp((TWO_PI * 1j / self.order) * self.value_num[units])
        return vals

    def value(self, n: int) -> complex:
        t = int(self.value_num[n % self.conductor])
        if t < 0:
            return 0j
        return complex(np.exp(TWO_PI * 1j * t / self.order))

    def is_real(self) -> bool:
        return self.order <= 2


def _unit_group_generators(q: int) -> list[tuple[int, int]]:
    """Generators (g, order) of (Z/q)* for a prime power q."""
    if q == 1 or q == 2:
        return []
    if q == 4:
        return [(3, 2)]
    if q % 2 == 0:  # q = 2^e, e >= 3
        return [(q - 1, 2), (5, q // 4)]
    # odd prime power: cyclic, find a primitive root by search
    phi = q - q // _odd_prime_of(q)
    factors = _prime_factors(phi)
    for g in range(2, q):
        if math.gcd(g, q) > 1:
            continue
        if all(pow(g, phi // f, q) != 1 for f in factors):
            return [(g, phi)]
    raise RuntimeError(f"no primitive root found mod {q}")


def _odd_prime_of(q: int) -> int:
    p = 3
    while q % p != 0:
        p += 2
    return p


def _prime_factors(n: int) -> list[int]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _characters_mod(q: int) -> list[tuple[np.ndarray, int]]:
    """All characters mod q as (angle-numerator table, common order) pairs.

    A table is an int64 array of length q holding t_r with
    chi(r) = e^(2 pi i t_r / total_order) for units r and -1 elsewhere.
    """
    comps = []
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            pk = 1
            while m % p == 0:
                pk *= p
                m //= p
            comps.append(pk)
        p += 1
    if m > 1:
        comps.append(m)
    gens: list[tuple[int, int]] = []  # (generator lifted mod q, order)
    for pk in comps:
        for g, order in _unit_group_generators(pk):
            gens.append((_crt(g, pk, 1, q // pk), order))
    orders = [o for (_, o) in gens]
    total_order = math.lcm(*orders) if orders else 1
    # every unit factors uniquely as prod g_i^{t_i}; record the exponents
    reps: list[tuple[int, tuple[int, ...]]] = [(1 % q, ())]
    for g, order in gens:
        grown = []
        for u, ex in reps:
            v = u
            for t in range(order):
                grown.append((v, ex + (t,)))
                v = (v * g) % q
        reps = grown
    tables = []
    for exps in itertools.product(*(range(o) for o in orders)):
        tab = np.full(q, -1, dtype=np.int64)
        for u, ex in reps:
            ang = sum(e * t * (total_order // o) for e, t, o in zip(exps, ex, orders))
            tab[u] = ang % total_order
        tables.append((tab, total_order))
    return tables


def _crt(a: int, m: int, b: int, n: int) -> int:
    """x with x = a (mod m), x = b (mod n) for coprime m, n."""
    if n == 1:
        return a % m
    inv = pow(m, -1, n)
    return (a + m * ((b - a) * inv % n)) % (m * n)


def _conductor(tab: np.ndarray, q: int) -> int:
    """Smallest modulus inducing the character with table ``tab`` mod q."""
    for dd in sorted(_divisors(q)):
        ok = True
        for n in range(1, q):
            if math.gcd(n, q) == 1 and n % dd == 1 % dd and tab[n] != 0:
                ok = False
                break
        if ok:
            return dd
    return q


def _divisors(q: int) -> list[int]:
    out = []
    for i in range(1, q + 1):
        if q % i == 0:
            out.append(i)
    return out


def primitive_characters(d_max: int) -> list[PrimitiveCharacter]:
    """All primitive characters of conductor <= d_max, ordered by conductor
    then by enumeration order within a conductor.

    Raises:
        ValueError: if not 2 <= d_max <= 100.
    """
    if not (2 <= d_max <= 100):
        raise ValueError("d_max must lie in [2, 100]")
    out: list[PrimitiveCharacter] = []
    for q in range(3, d_max + 1):
        for tab, total_order in _characters_mod(q):
            if _conductor(tab, q) != q:
                continue
            # reduce the angle denominators to the character's own order
            nums = tab[tab >= 0]
            g = math.gcd(int(np.gcd.reduce(nums)), total_order)
            order = total_order // g
            reduced = np.where(tab >= 0, tab // g, -1).astype(np.int32)
            par_num = int(reduced[q - 1])
            parity = 1 if par_num == 0 else -1  # chi(-1) is +-1, angle 0 or order/2
            out.append(
                PrimitiveCharacter(conductor=q, order=order, value_num=reduced, parity=parity)
            )
    return out


def chi_prime_map(d: int):
    """chi_d as a prime-value callable p -> float in {-1, 0, +1}."""

    def f(p: int) -> float:
        return float(arith.kronecker(d, p))

    return f


def distance_sq(f, g, y: float, sieve: arith.PrimeSieve) -> float:
    """sum_{p <= y} (1 - Re f(p) conj(g(p))) / p for prime-value maps f, g.

    ``f`` and ``g`` are callables p -> complex with |value| <= 1 (Mappings
    with a ``.get`` interface also work).
    """
    fv = _as_callable(f)
    gv = _as_callable(g)
    total = 0.0
    for p in sieve.primes_upto(y):
        p = int(p)
        total += (1.0 - (fv(p) * np.conj(gv(p))).real) / p
    return total


def _as_callable(f):
    if callable(f):
        return f
    return lambda p: f.get(p, 0.0)


@dataclass
class PretenseResult:
    xi: PrimitiveCharacter
    D: int
    distance_sq: float


def nearest_primitive(
    d: int,
    y: float,
    d_max: int | None = None,
    sieve: arith.PrimeSieve | None = None,
) -> PretenseResult:
    """The primitive character closest to chi_d in pretentious distance.

    The minimized quantity skips primes dividing the candidate's conductor
    (a character is at distance 0 from itself), ties break to the smaller
    conductor and then to enumeration order.  d_max defaults to
    max(10, ceil(log y)).
    """
    if d_max is None:
        d_max = max(10, math.ceil(math.log(y)))
    if sieve is None:
        sieve = arith.sieve_primes(max(2, int(y)))
    chars = primitive_characters(d_max)
    primes = sieve.primes_upto(y)
    chi_vals = np.array([arith.kronecker(d, int(p)) for p in primes], dtype=np.float64)
    best_idx, best_val = -1, math.inf
    for i, psi in enumerate(chars):
        re_psi = np.array([psi.value(int(p)).real for p in primes])
        keep = np.array([psi.conductor % int(p) != 0 for p in primes])
        terms = (1.0 - chi_vals * re_psi) / primes
        val = float(np.sum(terms[keep]))
        if val < best_val - 1e-15:
            best_idx, best_val = i, val
    xi = chars[best_idx]
    return PretenseResult(xi=xi, D=xi.conductor, distance_sq=best_val)


def truncated_L(d: int, y: float, k: int, sieve: arith.PrimeSieve) -> float:
    """prod_{p <= y, p not dividing k} (1 - chi_d(p)/p)^(-1)."""
    if sieve.limit < y:
        raise ValueError(f"prime sieve covers {sieve.limit} < y = {y}")
    total = 1.0
    for p in sieve.primes_upto(y):
        p = int(p)
        if k % p == 0:
            continue
        total *= 1.0 / (1.0 - arith.kronecker(d, p) / p)
    return total


@dataclass
class PretenseBoundReport:
    """Measured two-sided comparisons for the friable-sum distance bound and
    the coprime-restriction identity."""

    d: int | None
    y: float
    z: int
    a: int
    friable_sum: float  # |sum_{n<=z, n in S(y)} f(n)/n|
    distance_bound: float  # log(y) * exp(-D(f,1;y)^2 / 2)
    ratio: float
    coprime_lhs: float  # sum_{n<=z, (n,a)=1} f(n)/n
    coprime_rhs: float  # prod_{p|a}(1 - f(p)/p) * sum_{n<=z} f(n)/n
    error_budget: float  # (a/phi(a)) * sum_{p|a} log(p)/p
    within_10x: bool


def pretense_bound_check(
    d: int | None,
    y: float,
    z: int,
    a: int = 6,
    prime_sieve: arith.PrimeSieve | None = None,
    smooth_sieve: arith.SmoothnessSieve | None = None,
) -> PretenseBoundReport:
    """Measure both sides of the distance bound on friable sums of chi_d
    (f = 1 when d is None) and of the coprime-restriction identity with
    its explicit error term; flags whether the identity holds within 10x
    the budget."""
    from . import charsum as _cs

    if smooth_sieve is None or smooth_sieve.limit < z:
        raise ValueError("smoothness sieve missing or smaller than z")
    if d is None:
        chi = np.ones(z + 1)
        chi[0] = 0.0
        dist = 0.0
    else:
        chi = _cs.char_values(d, z, prime_sieve).values.astype(np.float64)
        if prime_sieve is None:
            prime_sieve = arith.sieve_primes(max(2, int(y)))
        dist = distance_sq(chi_prime_map(d), lambda p: 1.0, y, prime_sieve)
    n = np.arange(z + 1, dtype=np.float64)
    n[0] = 1.0
    terms = chi / n
    friable = smooth_sieve.lpf[: z + 1] <= y
    friable[0] = False
    lhs27 = abs(float(np.sum(terms[friable])))
    rhs27 = math.log(y) * math.exp(-dist / 2.0)
    idx = np.arange(z + 1)
    coprime = np.gcd(idx, a) == 1
    coprime[0] = False
    lhs28 = float(np.sum(terms[coprime]))
    all_sum = float(np.sum(terms[1:]))
    prod = 1.0
    budget = 0.0
    for p in _prime_factors(a):
        fp = 1.0 if d is None else float(arith.kronecker(d, p))
        prod *= 1.0 - fp / p
        budget += math.log(p) / p
    budget *= a / arith.euler_phi(a)
    rhs28 = prod * all_sum
    return PretenseBoundReport(
        d=d,
        y=y,
        z=z,
        a=a,
        friable_sum=lhs27,
        distance_bound=rhs27,
        ratio=lhs27 / rhs27 if rhs27 else math.inf,
        coprime_lhs=lhs28,
        coprime_rhs=rhs28,
        error_budget=budget,
        within_10x=abs(lhs28 - rhs28) <= 10.0 * budget + 1e-12,
    )
