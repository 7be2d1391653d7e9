"""Primality, small-integer factorization and semiprime generation."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceeded, DomainError

__all__ = [
    "Semiprime",
    "Factorization",
    "is_prime",
    "factorize_small",
    "gen_hard_semiprime",
    "enumerate_hard_semiprimes",
    "prime_power_root",
]

# Deterministic for n < 3.3e24 (Sorenson & Webster), which covers 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
TRIAL_BOUND = 100_000

Factorization = tuple  # tuple[tuple[int, int], ...]; (prime, multiplicity), primes ascending


@dataclass(frozen=True)
class Semiprime:
    """N = p1 * p2 with distinct odd primes p1 < p2.

    ``hard_form`` is true when both (p_i - 1) / 2 are odd, i.e. p_i = 3 mod 4.
    """

    N: int
    p1: int
    p2: int
    hard_form: bool

    @classmethod
    def from_primes(cls, p1: int, p2: int) -> "Semiprime":
        p1, p2 = sorted((p1, p2))
        if p1 == p2:
            raise DomainError(f"repeated prime {p1}")
        for p in (p1, p2):
            if p == 2 or not is_prime(p):
                raise DomainError(f"{p} is not an odd prime")
        return cls(p1 * p2, p1, p2, p1 % 4 == 3 and p2 % 4 == 3)

    @property
    def q1(self) -> int:
        return (self.p1 - 1) // 2

    @property
    def q2(self) -> int:
        return (self.p2 - 1) // 2


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin; exact below 3.3e24, error below 4**-rounds above that.

    The random witnesses for large n are drawn from a stream seeded by n
    itself, so repeated calls agree.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < _DETERMINISTIC_LIMIT:
        return _miller_rabin(n, _MR_BASES)
    rng = random.Random(n)
    return _miller_rabin(n, [rng.randrange(2, n - 1) for _ in range(rounds)])


@lru_cache(maxsize=None)
def _small_primes(bound: int = TRIAL_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i in range(bound + 1) if sieve[i])


@lru_cache(maxsize=None)
def _prime_blocks(size: int = 256) -> tuple[tuple[int, tuple[int, ...]], ...]:
    # Products of consecutive primes; one gcd screens a whole block.
    primes = _small_primes()
    blocks = []
    for i in range(0, len(primes), size):
        chunk = primes[i : i + size]
        blocks.append((math.prod(chunk), chunk))
    return tuple(blocks)


def _pollard_brent(n: int, seed: int, max_iter: int) -> int | None:
    """One Brent-cycle run; returns a nontrivial divisor or None."""
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g, r, q = 1, 1, 1
    x = ys = y
    steps = 0
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
        steps += r
        if steps > max_iter:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, max_iter: int, attempts: int) -> int:
    for seed in range(attempts):
        d = _pollard_brent(n, seed, max_iter)
        if d is not None:
            return d
    raise BudgetExceeded(f"Pollard rho could not split {n}")


@lru_cache(maxsize=4096)
def factorize_small(n: int, max_iter: int = 1 << 22, attempts: int = 20) -> Factorization:
    """Factor n by trial division to 1e5 followed by Pollard rho.

    Returns ``((prime, multiplicity), ...)`` with primes increasing; empty
    for n == 1.  Raises ``BudgetExceeded`` instead of ever returning an
    unproven composite.
    """
    if n < 1:
        raise DomainError(f"factorize_small needs n >= 1, got {n}")
    counts: dict[int, int] = {}
    for block, chunk in _prime_blocks():
        if n == 1:
            break
        if math.gcd(n, block) == 1:
            continue
        for p in chunk:
            while n % p == 0:
                n //= p
                counts[p] = counts.get(p, 0) + 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < TRIAL_BOUND * TRIAL_BOUND or is_prime(m):
            # Every prime below the trial bound is gone, so m is prime here.
            counts[m] = counts.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _split(m, max_iter, attempts)
        stack += [d, m // d]
    return tuple(sorted(counts.items()))


def prime_power_root(n: int) -> int | None:
    """Return p if n == p**k for a prime p and k >= 1, else None."""
    if n < 2:
        return None
    if is_prime(n):
        return n
    for k in range(2, n.bit_length() + 1):
        r = _iroot(n, k)
        if r < 2:
            break
        if r**k == n:
            return r if is_prime(r) else prime_power_root(r)
    return None


def _iroot(n: int, k: int) -> int:
    # Floor k-th root by Newton iteration on integers.
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _hard_candidates(half_bits: int) -> range:
    lo, hi = 1 << (half_bits - 1), 1 << half_bits
    if half_bits <= 16:
        qualifying = [p for p in range(lo | 3, hi, 4) if is_prime(p)]
        if len(qualifying) < 2:
            # Too few primes = 3 mod 4 of exactly this length (bits 6..8).
            lo = 3
    return range(lo, hi)


def gen_hard_semiprime(bits: int, rng: random.Random, budget: int = 100_000) -> Semiprime:
    """Sample a hard-form semiprime from two distinct primes of ceil(bits/2) bits.

    For tiny ``bits`` the prime range is widened down to 3 so that two
    distinct primes = 3 mod 4 exist (bits=6 can give 21).
    """
    if bits < 6:
        raise DomainError(f"bits must be >= 6, got {bits}")
    candidates = _hard_candidates(-(-bits // 2))
    found: list[int] = []
    for _ in range(budget):
        p = rng.randrange(candidates.start, candidates.stop) | 3
        if p >= candidates.stop or p in found or not is_prime(p):
            continue
        found.append(p)
        if len(found) == 2:
            return Semiprime.from_primes(*found)
    raise BudgetExceeded(f"no hard-form semiprime of {bits} bits within {budget} draws")


def enumerate_hard_semiprimes(limit: int) -> list[Semiprime]:
    """All N = p1*p2 < limit with distinct odd primes, ascending by N.

    Every semiprime is listed; ``hard_form`` flags the ones to keep for
    hard-only sweeps.
    """
    if limit > 10**7:
        raise DomainError(f"limit {limit} too large for enumeration")
    primes = [p for p in _sieve(max(limit // 3 + 1, 2)) if p > 2]
    out = []
    for i, p1 in enumerate(primes):
        if p1 * p1 >= limit:
            break
        for p2 in primes[i + 1 :]:
            if p1 * p2 >= limit:
                break
            out.append(Semiprime(p1 * p2, p1, p2, p1 % 4 == 3 and p2 % 4 == 3))
    out.sort(key=lambda s: s.N)
    return out


def _sieve(bound: int) -> list[int]:
    if bound <= TRIAL_BOUND:
        return [p for p in _small_primes() if p <= bound]
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i in range(bound + 1) if sieve[i]]
