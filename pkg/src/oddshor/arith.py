"""Exact integer kernels.

Everything here is pure integer arithmetic on Python ints; no floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "SquareDecomposition",
    "gcd",
    "lcm",
    "mod_pow",
    "integer_sqrt",
    "is_perfect_square",
    "decompose_square",
    "two_adic_split",
    "jacobi",
    "crt_split",
]


@dataclass(frozen=True)
class SquareDecomposition:
    """``base == root ** (2 ** exponent)`` with a non-square ``root``."""

    base: int
    root: int
    exponent: int


def gcd(x: int, y: int) -> int:
    return math.gcd(x, y)


def lcm(x: int, y: int) -> int:
    if x == 0 or y == 0:
        return 0
    return x // math.gcd(x, y) * y


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """Square-and-multiply ``base ** exp % modulus``."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise DomainError(f"exponent must be >= 0, got {exp}")
    return pow(base, exp, modulus)


def integer_sqrt(x: int) -> int:
    if x < 0:
        raise DomainError(f"integer_sqrt of negative {x}")
    return math.isqrt(x)


def is_perfect_square(x: int) -> bool:
    if x < 0:
        return False
    r = math.isqrt(x)
    return r * r == x


def decompose_square(b: int) -> SquareDecomposition:
    """Peel exact square roots off ``b`` until a non-square remains.

    Only towers of squares are recognised: 27 = 3**3 comes back as (27, 0).

    >>> decompose_square(16)
    SquareDecomposition(base=16, root=2, exponent=2)
    """
    if b < 2:
        raise DomainError(f"decompose_square needs b >= 2, got {b}")
    root, m = b, 0
    while True:
        r = math.isqrt(root)
        if r * r != root:
            return SquareDecomposition(b, root, m)
        root, m = r, m + 1


def two_adic_split(t: int) -> tuple[int, int]:
    """Return ``(n, t0)`` with ``t == 2**n * t0`` and ``t0`` odd."""
    if t < 1:
        raise DomainError(f"two_adic_split needs t >= 1, got {t}")
    n = (t & -t).bit_length() - 1
    return n, t >> n


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n >= 3, by quadratic reciprocity."""
    if n < 3 or n % 2 == 0:
        raise DomainError(f"jacobi needs odd n >= 3, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def crt_split(c: int, p1: int, p2: int) -> tuple[int, int]:
    if not 0 <= c < p1 * p2:
        raise DomainError(f"c={c} outside [0, {p1 * p2})")
    return c % p1, c % p2
