"""Classical side of Shor's factoring algorithm, with odd-order recovery.

Modules: ``arith`` (integer kernels), ``primes`` (primality, factoring
helpers, semiprimes), ``orderfind`` (classical order oracles),
``pipeline`` (post-processing and the retry loop), ``stats`` (exact and
sampled success statistics) and ``cli``.
"""

__version__ = "0.1.0"

from .arith import SquareDecomposition, decompose_square, jacobi, two_adic_split  # noqa: E402
from .orderfind import OrderRecord, order_bruteforce, order_with_factors  # noqa: E402
from .pipeline import (  # noqa: E402
    CoprimeStrategy,
    Factors,
    Method,
    TrivialFailure,
    UnusableOddOrder,
    factor_with_recovery,
    full_factor,
)
from .primes import Semiprime, gen_hard_semiprime, is_prime  # noqa: E402
from .stats import enumerate_report, even_order_probability, monte_carlo_report  # noqa: E402

__all__ = [
    "__version__",
    "SquareDecomposition",
    "decompose_square",
    "jacobi",
    "two_adic_split",
    "OrderRecord",
    "order_bruteforce",
    "order_with_factors",
    "CoprimeStrategy",
    "Factors",
    "Method",
    "TrivialFailure",
    "UnusableOddOrder",
    "factor_with_recovery",
    "full_factor",
    "Semiprime",
    "gen_hard_semiprime",
    "is_prime",
    "enumerate_report",
    "even_order_probability",
    "monte_carlo_report",
]
