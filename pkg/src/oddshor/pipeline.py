"""Classical post-processing of an order, including odd-order recovery.

Given c and its order t mod N, the witness ``x = c**(t/2) mod N`` yields
the factors ``gcd(x - 1, N)`` and ``gcd(x + 1, N)`` unless ``x = -1``.
When t is odd but c is a perfect square ``a**(2**m)``, the witness is
still an integer (``a**(2**(m-1) * t)``), and when that witness is 1 the
relation can be pushed down the square tower toward the root.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Union

from .arith import decompose_square, is_perfect_square, jacobi
from .errors import BudgetExceeded, DomainError, InvariantViolation, PreconditionError
from .orderfind import OrderRecord, order_bruteforce, order_from_factorization
from .primes import is_prime, prime_power_root

__all__ = [
    "Method",
    "Factors",
    "TrivialFailure",
    "UnusableOddOrder",
    "FactorOutcome",
    "CoprimeStrategy",
    "EarlyFactor",
    "Attempt",
    "FactorRun",
    "classical_postprocess",
    "odd_order_square_factor",
    "root_collapse",
    "factor_with_recovery",
    "pick_coprime",
    "check_factorable",
    "full_factor",
    "ORACLES",
]


class Method(enum.Enum):
    STANDARD = "standard"
    ODD_ORDER_SQUARE = "odd-order-square"
    ROOT_COLLAPSE = "root-collapse"


@dataclass(frozen=True)
class Factors:
    p: int
    q: int
    method: Method
    witness: int
    steps: int | None = None  # only for ROOT_COLLAPSE

    @property
    def success(self) -> bool:
        return True


@dataclass(frozen=True)
class TrivialFailure:
    witness: int

    @property
    def success(self) -> bool:
        return False


@dataclass(frozen=True)
class UnusableOddOrder:
    @property
    def success(self) -> bool:
        return False


FactorOutcome = Union[Factors, TrivialFailure, UnusableOddOrder]


class CoprimeStrategy(enum.Enum):
    UNIFORM = "uniform"
    AVOID_SQUARES = "avoid-squares"
    JACOBI_SCREEN = "jacobi"


def _from_witness(x: int, N: int, method: Method, steps: int | None = None) -> FactorOutcome:
    # x*x = 1 mod N and x != 1 is required of every caller.
    if x == N - 1:
        return TrivialFailure(x)
    p, q = sorted((math.gcd(x - 1, N), math.gcd(x + 1, N)))
    if p * q != N or p == 1:
        raise InvariantViolation(f"witness {x} gave {p}*{q} != {N}")
    return Factors(p, q, method, x, steps)


def classical_postprocess(rec: OrderRecord) -> FactorOutcome:
    """Standard step for an even order: gcds of c**(t/2) -+ 1 with N."""
    if rec.order % 2:
        raise DomainError(f"classical_postprocess needs an even order, got {rec.order}")
    N = rec.modulus
    x = pow(rec.coprime, rec.order // 2, N)
    if x == 1:
        raise InvariantViolation(f"{rec.coprime}^{rec.order // 2} = 1 mod {N}; order not minimal")
    return _from_witness(x, N, Method.STANDARD)


def odd_order_square_factor(b: int, s: int, N: int) -> FactorOutcome:
    """Factor from a square coprime b with odd order s.

    ``b**(s/2)`` is evaluated as ``a**(2**(m-1) * s)`` for ``b = a**(2**m)``.
    A witness of 1 means the relation really belongs to sqrt(b), and the
    work is handed to :func:`root_collapse`.
    """
    if s % 2 == 0:
        raise DomainError(f"order must be odd, got {s}")
    if not is_perfect_square(b) or b < 4:
        raise DomainError(f"{b} is not a perfect square")
    dec = decompose_square(b)
    x = pow(dec.root, (1 << (dec.exponent - 1)) * s, N)
    if x == 1:
        return root_collapse(dec.root, dec.exponent, s, N)
    return _from_witness(x, N, Method.ODD_ORDER_SQUARE)


def root_collapse(a: int, m: int, s: int, N: int) -> FactorOutcome:
    """Walk down the tower a**(2**j * s), j = m-1 .. 0, to the first value != 1.

    ``steps`` counts how many levels were passed with witness 1, which is
    m - n when the root a has order 2**n * s.
    """
    if s % 2 == 0:
        raise DomainError(f"order must be odd, got {s}")
    if m < 1:
        raise DomainError(f"tower height must be >= 1, got {m}")
    if is_perfect_square(a):
        raise DomainError(f"root {a} is itself a square")
    if math.gcd(a, N) != 1:
        raise DomainError(f"root {a} shares a factor with {N}")
    for j in range(m - 1, -1, -1):
        x = pow(a, (1 << j) * s, N)
        if x != 1:
            return _from_witness(x, N, Method.ROOT_COLLAPSE, steps=m - 1 - j)
    return UnusableOddOrder()


def factor_with_recovery(rec: OrderRecord) -> FactorOutcome:
    if rec.order % 2 == 0:
        return classical_postprocess(rec)
    if not is_perfect_square(rec.coprime):
        return UnusableOddOrder()
    return odd_order_square_factor(rec.coprime, rec.order, rec.modulus)


@dataclass(frozen=True)
class EarlyFactor:
    """A draw that shared a factor with N; no order finding needed."""

    coprime: int
    factor: int


def _accepts(c: int, N: int, strategy: CoprimeStrategy) -> bool:
    if strategy is CoprimeStrategy.AVOID_SQUARES:
        return not is_perfect_square(c)
    if strategy is CoprimeStrategy.JACOBI_SCREEN:
        return jacobi(c, N) == -1
    return True


def pick_coprime(
    N: int,
    strategy: CoprimeStrategy,
    rng: random.Random,
    budget: int = 10_000,
) -> int | EarlyFactor:
    """Draw c uniformly from (1, N) until the strategy accepts it.

    A draw sharing a factor with N is returned as an :class:`EarlyFactor`.
    """
    if N < 15 or N % 2 == 0:
        raise DomainError(f"pick_coprime needs odd N >= 15, got {N}")
    for _ in range(budget):
        c = rng.randrange(2, N)
        g = math.gcd(c, N)
        if g > 1:
            return EarlyFactor(c, g)
        if _accepts(c, N, strategy):
            return c
    raise BudgetExceeded(f"no {strategy.value} coprime of {N} in {budget} draws")


def check_factorable(N: int) -> None:
    """Reject N that needs no order finding: even, prime, or a prime power."""
    if N < 15:
        raise PreconditionError(N, "N must be at least 15")
    if N % 2 == 0:
        raise PreconditionError(N, "N is even; 2 is a factor")
    if is_prime(N):
        raise PreconditionError(N, "N is prime")
    p = prime_power_root(N)
    if p is not None:
        raise PreconditionError(N, f"N is a power of the prime {p}; take integer roots")


ORACLES: dict[str, Callable[[int, int], OrderRecord]] = {
    "bruteforce": order_bruteforce,
    "factored": order_from_factorization,
}


@dataclass(frozen=True)
class Attempt:
    coprime: int
    record: OrderRecord | None = None
    outcome: FactorOutcome | None = None
    early_factor: int | None = None


@dataclass(frozen=True)
class FactorRun:
    N: int
    strategy: CoprimeStrategy
    oracle: str
    seed: int
    attempts: tuple[Attempt, ...] = field(default=())

    @property
    def factors(self) -> tuple[int, int] | None:
        if not self.attempts:
            return None
        last = self.attempts[-1]
        if last.early_factor is not None:
            p = last.early_factor
            return tuple(sorted((p, self.N // p)))
        if isinstance(last.outcome, Factors):
            return last.outcome.p, last.outcome.q
        return None


def full_factor(
    N: int,
    strategy: CoprimeStrategy = CoprimeStrategy.UNIFORM,
    oracle: str = "bruteforce",
    max_attempts: int = 100,
    seed: int = 0,
) -> FactorRun:
    """Retry loop: pick a coprime, find its order, post-process, repeat.

    Every attempt is kept in the returned run for auditing.
    """
    check_factorable(N)
    if oracle not in ORACLES:
        raise DomainError(f"unknown oracle {oracle!r}")
    order = ORACLES[oracle]
    rng = random.Random(seed)
    attempts: list[Attempt] = []
    for _ in range(max_attempts):
        picked = pick_coprime(N, strategy, rng)
        if isinstance(picked, EarlyFactor):
            attempts.append(Attempt(picked.coprime, early_factor=picked.factor))
            break
        rec = order(picked, N)
        outcome = factor_with_recovery(rec)
        attempts.append(Attempt(picked, rec, outcome))
        if isinstance(outcome, Factors):
            break
    return FactorRun(N, strategy, oracle, seed, tuple(attempts))
