"""Exact integer arithmetic: primality, factorization, phi, multiplicative order.

Everything here is deterministic for inputs below the proven Miller-Rabin
witness bound (~3.3e24); beyond that, primality falls back to randomized
Miller-Rabin with many rounds and callers can ask whether a given prime
was only probabilistically certified.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache, reduce

# Smallest composite that fools the first twelve prime bases is
# 3_317_044_064_679_887_385_961_981 (Sorenson-Webster), so below that limit
# Miller-Rabin with these bases is a proof, comfortably covering 2**64.
_MR_PROVEN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_PROVEN_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_RANDOM_ROUNDS = 40

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True if a witnesses the compositeness of n = d*2^s + 1, d odd."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Primality test; a proof for n < MR_PROVEN_LIMIT, else 40-round Miller-Rabin."""
    if n < 0:
        raise ValueError(f"is_prime expects n >= 0, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_PROVEN_BASES:
        if _mr_witness(a, d, s, n):
            return False
    if n < MR_PROVEN_LIMIT:
        return True
    # Deterministically seeded so that repeated runs agree on the same input.
    rng = random.Random(n)
    for _ in range(_MR_RANDOM_ROUNDS):
        if _mr_witness(rng.randrange(2, n - 1), d, s, n):
            return False
    return True


def probable_prime_only(n: int) -> bool:
    """True when is_prime(n) holds but rests on randomized rounds, not a proof."""
    return n >= MR_PROVEN_LIMIT and is_prime(n)


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho: a nontrivial factor of composite n, deterministic in n."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
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
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # Backtrack one step at a time to recover the factor lost in batching.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        # Degenerate cycle; retry with fresh deterministic parameters.


@dataclass(frozen=True)
class PrimeFactorization:
    """n = prod(p**e), primes strictly increasing, exponents >= 1."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def verify(self) -> None:
        """Recheck every structural invariant; raises ValueError on failure."""
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError(f"primes not strictly increasing: {self.factors}")
            if e < 1:
                raise ValueError(f"exponent < 1 for prime {p}")
            if not is_prime(p):
                raise ValueError(f"listed factor {p} is not prime")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return str(self.value)
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        return " * ".join(parts)


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


@lru_cache(maxsize=None)
def factorize(n: int) -> PrimeFactorization:
    """Full prime factorization; trial division then Pollard rho on what is left."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    m = n
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    # Trial division up to 10^4 clears every factor Pollard rho would find slowly.
    d = 49
    while d * d <= m and d < 10_000:
        while m % d == 0:
            found[d] = found.get(d, 0) + 1
            m //= d
        d += 2
    if m > 1:
        _factor_into(m, found)
    fact = PrimeFactorization(n, tuple(sorted(found.items())))
    fact.verify()
    return fact


def euler_phi(n: int) -> int:
    """Euler totient."""
    if n < 1:
        raise ValueError(f"euler_phi expects n >= 1, got {n}")
    result = n
    for p, _ in factorize(n).factors:
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def carmichael_lambda(n: int) -> int:
    """Exponent of (Z/n)^*: lcm of local exponents."""
    if n < 1:
        raise ValueError(f"carmichael_lambda expects n >= 1, got {n}")
    parts = []
    for p, e in factorize(n).factors:
        if p == 2:
            parts.append(1 if e == 1 else 2 if e == 2 else 2 ** (e - 2))
        else:
            parts.append(p ** (e - 1) * (p - 1))
    return reduce(math.lcm, parts, 1)


def multiplicative_order(a: int, n: int) -> int:
    """Least k >= 1 with a^k == 1 (mod n); requires gcd(a, n) == 1."""
    if n < 1:
        raise ValueError(f"multiplicative_order expects modulus >= 1, got {n}")
    a %= n
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    # Start from the Carmichael exponent and strip primes while the power stays 1.
    e = carmichael_lambda(n)
    for q, _ in factorize(e).factors:
        while e % q == 0 and pow(a, e // q, n) == 1:
            e //= q
    return e
