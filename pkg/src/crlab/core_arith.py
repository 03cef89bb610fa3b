"""Exact elementary arithmetic functions.

Everything divisor-indexed is computed from prime factorizations with plain
Python integers, so values are exact at any size the factorizer accepts.
Floating-point enters only where the contract is a real number (zeta,
harmonic sums, real-exponent divisor sums).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

# Declared domain bound for factorize(); trial division is exact up to here.
FACTORIZE_LIMIT = 2**63 - 1


@dataclass(frozen=True)
class Factorization:
    """An integer n together with its prime-power decomposition.

    factors is ordered by prime, each exponent >= 1, and the product of
    p**e reconstructs n. n == 1 has an empty factor list.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Factorization requires n >= 1, got {self.n}")
        prod = 1
        prev_p = 0
        for p, e in self.factors:
            if p <= prev_p:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            prod *= p**e
            prev_p = p
        if prod != self.n:
            raise ValueError(f"factors reconstruct {prod}, expected {self.n}")

    def divisors(self) -> list[int]:
        """All positive divisors of n, sorted ascending."""
        divs = [1]
        for p, e in self.factors:
            pk = 1
            block = []
            for _ in range(e):
                pk *= p
                block.extend(d * pk for d in divs)
            divs.extend(block)
        divs.sort()
        return divs


def _check_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def check_exponent(s: int) -> None:
    """Validate the fixed exponent of the theory: an integer s >= 1."""
    _check_positive("s", s)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Factor n by deterministic trial division (2, 3, then 6k+-1).

    Raises ValueError for n < 1 or n above FACTORIZE_LIMIT.
    """
    _check_positive("n", n)
    if n > FACTORIZE_LIMIT:
        raise ValueError(f"n exceeds the declared factorization bound {FACTORIZE_LIMIT}")
    m = n
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    p = 5
    while p * p <= m:
        for q in (p, p + 2):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                factors.append((q, e))
        p += 6
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n."""
    return factorize(n).divisors()


def mobius(n: int) -> int:
    """Mobius function: 0 on non-squarefree n, else (-1)**(number of primes)."""
    f = factorize(n)
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def mobius_range(limit: int) -> list[int]:
    """Mobius values mu[0..limit] by linear sieve (mu[0] is unused, set to 0)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    mu = [0] * (limit + 1)
    mu[1] = 1
    is_comp = [False] * (limit + 1)
    primes: list[int] = []
    for i in range(2, limit + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > limit:
                break
            is_comp[i * p] = True
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


def gcd_s(m: int, n: int, s: int) -> int:
    """Generalized GCD: the largest l**s dividing both m and n.

    Equals the largest s-th power dividing gcd(m, n); s=1 recovers the
    ordinary gcd. With one argument zero it is the largest s-th power
    dividing the other (everything divides 0). Both zero is a domain error.
    """
    check_exponent(s)
    if m < 0 or n < 0:
        raise ValueError("gcd_s takes nonnegative arguments")
    g = math.gcd(m, n)
    if g == 0:
        raise ValueError("gcd_s(0, 0, s) is undefined")
    if s == 1:
        return g
    out = 1
    for p, e in factorize(g).factors:
        out *= p ** (s * (e // s))
    return out


def is_s_prime(m: int, n: int, s: int) -> bool:
    """True iff m and n are relatively s-prime: gcd_s(m, n, s) == 1."""
    return gcd_s(m, n, s) == 1


def is_power_free(n: int, s: int) -> bool:
    """True iff no k**s with k > 1 divides n (n is s-th power free)."""
    check_exponent(s)
    _check_positive("n", n)
    return all(e < s for _, e in factorize(n).factors)


def jordan_totient(n: int, s: int) -> int:
    """Jordan totient J_s(n) = n**s * prod(1 - p**-s), computed exactly."""
    check_exponent(s)
    out = 1
    for p, e in factorize(n).factors:
        out *= p ** (s * e) - p ** (s * (e - 1))
    return out


def klee_phi(n: int, s: int) -> int:
    """Count of 1 <= m <= n with gcd_s(m, n, s) == 1.

    Computed by Mobius inversion over the s-th power divisors of n:
    sum over squarefree d with d**s | n of mu(d) * n / d**s. Satisfies
    klee_phi(n**s, s) == jordan_totient(n, s) and klee_phi(n, 1) = Euler phi.
    """
    check_exponent(s)
    ps = [p for p, e in factorize(n).factors if e >= s]
    total = 0
    for mask in range(1 << len(ps)):
        d = 1
        bits = 0
        for i, p in enumerate(ps):
            if mask >> i & 1:
                d *= p
                bits += 1
        total += (-1) ** bits * (n // d**s)
    return total


def tau_s(n: int, s: int) -> int:
    """Number of s-th powers l**s dividing n; tau_s(n, 1) is the divisor count."""
    check_exponent(s)
    out = 1
    for _, e in factorize(n).factors:
        out *= e // s + 1
    return out


def sigma_ks(n: int, k: int, s: int) -> int:
    """Sum of (d**s)**k over all d with d**s | n, exactly."""
    check_exponent(s)
    _check_positive("k", k)
    out = 1
    for p, e in factorize(n).factors:
        q = p ** (s * k)
        out *= sum(q**j for j in range(e // s + 1))
    return out


def sigma_real(n: int, x: float) -> float:
    """Classical divisor power sum with real exponent: sum of d**x over d | n.

    Accumulated over divisors in ascending order.
    """
    total = 0.0
    for d in divisors(n):
        total += float(d) ** x
    return total


def zeta(x: float) -> float:
    """Riemann zeta for real x > 1 to absolute accuracy <= 1e-10.

    Partial sum to N plus the integral tail N**(1-x)/(x-1) and the endpoint
    correction -N**-x/2, with N chosen so the next Euler-Maclaurin term
    x/12 * N**-(x+1) is below 1e-12.
    """
    if not x > 1:
        raise ValueError(f"zeta requires x > 1, got {x}")
    n_terms = max(10, math.ceil((x / (12 * 1e-12)) ** (1.0 / (x + 1.0))))
    partial = math.fsum(k ** (-x) for k in range(1, n_terms + 1))
    tail = n_terms ** (1.0 - x) / (x - 1.0)
    return partial + tail - 0.5 * n_terms ** (-x)


def harmonic_sum(x: float) -> float:
    """Sum of 1/n over n <= x, accumulated as floats in increasing n."""
    if x < 1:
        raise ValueError(f"harmonic_sum requires x >= 1, got {x}")
    total = 0.0
    for n in range(1, math.floor(x) + 1):
        total += 1.0 / n
    return total
