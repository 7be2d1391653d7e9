"""Classical multiplicative-order oracles.

These stand in for quantum order finding.  Two independent routes are
provided: a plain multiplication chain, and a reduction from the group
order that needs the factorization of p - 1 for each prime p of N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import lcm, two_adic_split
from .errors import BudgetExceeded, DomainError, NotCoprimeError
from .primes import Semiprime, factorize_small

__all__ = [
    "OrderRecord",
    "CrtOrderView",
    "DEFAULT_ITERATION_CAP",
    "order_bruteforce",
    "order_mod_prime",
    "order_with_factors",
    "order_from_factorization",
    "component_orders",
    "ComponentOrderTable",
]

DEFAULT_ITERATION_CAP = 1 << 24


@dataclass(frozen=True)
class OrderRecord:
    modulus: int
    coprime: int
    order: int
    split: tuple[int, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "split", two_adic_split(self.order))

    @property
    def is_even(self) -> bool:
        return self.split[0] > 0


@dataclass(frozen=True)
class CrtOrderView:
    c1: int
    c2: int
    t1: int
    t2: int

    @property
    def order(self) -> int:
        return lcm(self.t1, self.t2)


def _check_base(c: int, n: int) -> None:
    if not 1 < c < n:
        raise DomainError(f"coprime must satisfy 1 < c < N, got c={c}, N={n}")
    if math.gcd(c, n) != 1:
        raise NotCoprimeError(c, n)


def order_bruteforce(c: int, N: int, cap: int = DEFAULT_ITERATION_CAP) -> OrderRecord:
    """Walk c, c^2, c^3, ... mod N until it returns to 1."""
    _check_base(c, N)
    x, t = c, 1
    while x != 1:
        if t >= cap:
            raise BudgetExceeded(f"order of {c} mod {N} exceeds {cap} steps")
        x = x * c % N
        t += 1
    return OrderRecord(N, c, t)


def _reduce_order(c: int, modulus: int, d: int, prime_factors) -> int:
    # d is a multiple of the order; strip each prime while the power stays 1.
    for f in prime_factors:
        while d % f == 0 and pow(c, d // f, modulus) == 1:
            d //= f
    return d


def order_mod_prime(c: int, p: int) -> int:
    """Order of c modulo the prime p, starting from the group order p - 1."""
    c %= p
    if c == 0:
        raise NotCoprimeError(c, p)
    if c == 1:
        return 1
    return _reduce_order(c, p, p - 1, [f for f, _ in factorize_small(p - 1)])


def component_orders(c: int, sp: Semiprime) -> CrtOrderView:
    _check_base(c, sp.N)
    c1, c2 = c % sp.p1, c % sp.p2
    return CrtOrderView(c1, c2, order_mod_prime(c1, sp.p1), order_mod_prime(c2, sp.p2))


def order_with_factors(c: int, sp: Semiprime) -> OrderRecord:
    """Order of c mod N as the lcm of its orders mod p1 and mod p2."""
    return OrderRecord(sp.N, c, component_orders(c, sp).order)


def order_from_factorization(c: int, N: int, factorization=None) -> OrderRecord:
    """Order of c mod an arbitrary odd N from N's prime factorization.

    Used where N is not known to be a semiprime (``full_factor`` on inputs
    like 45).  The factorization is computed when not given.
    """
    _check_base(c, N)
    if factorization is None:
        factorization = factorize_small(N)
    t = 1
    for p, k in factorization:
        pk = p**k
        group = p ** (k - 1) * (p - 1)
        primes = {f for f, _ in factorize_small(p - 1)}
        if k > 1:
            primes.add(p)
        t = lcm(t, _reduce_order(c % pk, pk, group, sorted(primes)))
    return OrderRecord(N, c, t)


class ComponentOrderTable:
    """Orders of every residue mod p1 and mod p2, for sweeping all c < N.

    Each residue's order comes from ``order_mod_prime``, so a lookup
    ``lcm(t1[c % p1], t2[c % p2])`` equals ``order_with_factors(c, sp)``
    while costing O(p1 + p2) order computations instead of O(N).
    """

    def __init__(self, sp: Semiprime):
        self.semiprime = sp
        self.t1 = [0] + [order_mod_prime(r, sp.p1) for r in range(1, sp.p1)]
        self.t2 = [0] + [order_mod_prime(r, sp.p2) for r in range(1, sp.p2)]

    def view(self, c: int) -> CrtOrderView:
        c1, c2 = c % self.semiprime.p1, c % self.semiprime.p2
        return CrtOrderView(c1, c2, self.t1[c1], self.t2[c2])

    def order(self, c: int) -> int:
        sp = self.semiprime
        return lcm(self.t1[c % sp.p1], self.t2[c % sp.p2])

    def record(self, c: int) -> OrderRecord:
        _check_base(c, self.semiprime.N)
        return OrderRecord(self.semiprime.N, c, self.order(c))
