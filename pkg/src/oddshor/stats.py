"""Exact enumeration and Monte Carlo statistics over the coprimes of a semiprime.

Counting conventions
--------------------
Factoring statistics range over ``1 < c < N`` with ``gcd(c, N) == 1``
(``total_coprimes``).  The even-order probability ranges over the whole
unit group including ``c = 1`` (``group_order = phi(N)``); since 1 has odd
order the even count is the same under both conventions.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .arith import decompose_square, integer_sqrt, is_perfect_square
from .errors import BudgetExceeded, DomainError, InvariantViolation
from .orderfind import ComponentOrderTable, OrderRecord, component_orders, order_bruteforce
from .pipeline import Factors, Method, TrivialFailure, classical_postprocess, factor_with_recovery
from .primes import Semiprime, enumerate_hard_semiprimes

__all__ = [
    "EnumerationReport",
    "MonteCarloReport",
    "BoundCheck",
    "ENUMERATION_LIMIT",
    "classify",
    "enumerate_report",
    "even_order_probability",
    "ratio_bound_check",
    "ratio_bound",
    "sweep",
    "monte_carlo_report",
]

ENUMERATION_LIMIT = 10**6

COUNT_KEYS = (
    "total_coprimes",
    "square_coprimes",
    "nonsquare_coprimes",
    "even_order_count",
    "odd_order_count",
    "trivial_failures",
    "standard_success",
    "recovery_success",
    "odd_order_square_success",
    "root_collapse_success",
    "nonsquare_success",
    "equivalence_mismatches",
    "parity_mismatches",
)


def _witness(outcome):
    return getattr(outcome, "witness", None)


def classify(c: int, N: int, order: Callable[[int], int], tally: Counter, parity=None) -> None:
    """Add coprime c's contribution to ``tally``.

    ``order`` maps a coprime to its order mod N.  For square c the outcome
    of the recovery procedure is compared against plain post-processing of
    c's non-square root; any disagreement in success or witness is counted
    in ``equivalence_mismatches``.  ``parity``, when given, returns the two
    component orders and checks that t is odd iff both are.
    """
    t = order(c)
    rec = OrderRecord(N, c, t)
    square = is_perfect_square(c)
    tally["total_coprimes"] += 1
    tally["square_coprimes" if square else "nonsquare_coprimes"] += 1
    tally["even_order_count" if t % 2 == 0 else "odd_order_count"] += 1

    standard = classical_postprocess(rec) if t % 2 == 0 else None
    if isinstance(standard, TrivialFailure):
        tally["trivial_failures"] += 1
    std_ok = isinstance(standard, Factors)
    if std_ok:
        tally["standard_success"] += 1
        if not square:
            tally["nonsquare_success"] += 1

    recovered = standard if standard is not None else factor_with_recovery(rec)
    if isinstance(recovered, Factors):
        tally["recovery_success"] += 1
        if recovered.method is Method.ODD_ORDER_SQUARE:
            tally["odd_order_square_success"] += 1
        elif recovered.method is Method.ROOT_COLLAPSE:
            tally["root_collapse_success"] += 1

    if square:
        a = decompose_square(c).root
        r = order(a)
        root_outcome = classical_postprocess(OrderRecord(N, a, r)) if r % 2 == 0 else None
        same_success = isinstance(root_outcome, Factors) == isinstance(recovered, Factors)
        if not same_success or _witness(root_outcome) != _witness(recovered):
            tally["equivalence_mismatches"] += 1

    if parity is not None:
        t1, t2 = parity(c)
        if (t % 2 == 1) != (t1 % 2 == 1 and t2 % 2 == 1):
            tally["parity_mismatches"] += 1


def ratio_bound(N: int) -> Fraction:
    """1 - 1/(4*floor(sqrt(N))): flooring the root makes the bound smaller."""
    return 1 - Fraction(1, 4 * integer_sqrt(N))


def _ratio(num: int, den: int) -> Fraction | None:
    return Fraction(num, den) if den else None


@dataclass(frozen=True)
class EnumerationReport:
    semiprime: Semiprime
    oracle: str
    group_order: int
    total_coprimes: int
    square_coprimes: int
    nonsquare_coprimes: int
    even_order_count: int
    odd_order_count: int
    trivial_failures: int
    standard_success: int
    recovery_success: int
    odd_order_square_success: int
    root_collapse_success: int
    nonsquare_success: int
    equivalence_mismatches: int
    parity_mismatches: int

    @property
    def p_even_order(self) -> Fraction:
        return Fraction(self.even_order_count, self.group_order)

    @property
    def p_standard(self) -> Fraction:
        return Fraction(self.standard_success, self.total_coprimes)

    @property
    def p_recovery(self) -> Fraction:
        return Fraction(self.recovery_success, self.total_coprimes)

    @property
    def p_nonsquare(self) -> Fraction | None:
        return _ratio(self.nonsquare_success, self.nonsquare_coprimes)

    @property
    def ratio_standard_to_nonsquare(self) -> Fraction | None:
        if not self.p_nonsquare:
            return None
        return self.p_standard / self.p_nonsquare

    @property
    def ratio_bound(self) -> Fraction:
        return ratio_bound(self.semiprime.N)

    @property
    def bound_holds(self) -> bool | None:
        lhs = self.ratio_standard_to_nonsquare
        return None if lhs is None else lhs <= self.ratio_bound

    def counts(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in COUNT_KEYS}


def _tally_range(sp: Semiprime, oracle: str, lo: int, hi: int) -> Counter:
    N = sp.N
    table = ComponentOrderTable(sp)
    if oracle == "factored":
        order = table.order
    elif oracle == "bruteforce":
        order = lambda c: order_bruteforce(c, N).order  # noqa: E731
    else:
        raise DomainError(f"unknown oracle {oracle!r}")
    parity = lambda c: (table.t1[c % sp.p1], table.t2[c % sp.p2])  # noqa: E731
    tally = Counter({k: 0 for k in COUNT_KEYS})
    for c in range(lo, hi):
        if math.gcd(c, N) == 1:
            classify(c, N, order, tally, parity)
    return tally


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    step = -(-(hi - lo) // parts)
    return [(a, min(a + step, hi)) for a in range(lo, hi, step)]


def _check_budget(sp: Semiprime) -> None:
    if sp.N > ENUMERATION_LIMIT:
        raise BudgetExceeded(f"N={sp.N} exceeds the enumeration limit {ENUMERATION_LIMIT}")


def enumerate_report(sp: Semiprime, oracle: str = "factored", workers: int = 1) -> EnumerationReport:
    """Classify every coprime 1 < c < N exactly.

    With ``workers > 1`` the range of c is split across processes; the
    counts are summed, so the report does not depend on the worker count.
    """
    _check_budget(sp)
    if workers > 1:
        spans = _chunks(2, sp.N, workers)
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_tally_range, *zip(*[(sp, oracle, a, b) for a, b in spans]))
            tally = sum(parts, Counter())
    else:
        tally = _tally_range(sp, oracle, 2, sp.N)
    group_order = (sp.p1 - 1) * (sp.p2 - 1)
    return EnumerationReport(sp, oracle, group_order, **{k: tally[k] for k in COUNT_KEYS})


def even_order_probability(sp: Semiprime) -> Fraction:
    """Exact fraction of the unit group mod N (c = 1 included) with even order."""
    _check_budget(sp)
    table = ComponentOrderTable(sp)
    # t = lcm(t1, t2) is odd iff both components are odd, so count pairs.
    odd1 = sum(1 for t in table.t1[1:] if t % 2)
    odd2 = sum(1 for t in table.t2[1:] if t % 2)
    even = 0
    for c in range(1, sp.N):
        if math.gcd(c, sp.N) == 1 and table.order(c) % 2 == 0:
            even += 1
    group = (sp.p1 - 1) * (sp.p2 - 1)
    if group - even != odd1 * odd2:
        raise InvariantViolation(f"odd-order count {group - even} != {odd1}*{odd2} for N={sp.N}")
    return Fraction(even, group)


@dataclass(frozen=True)
class BoundCheck:
    semiprime: Semiprime
    lhs: Fraction
    rhs: Fraction
    holds: bool


def ratio_bound_check(sp: Semiprime, report: EnumerationReport | None = None) -> BoundCheck:
    """Compare p_standard / p_nonsquare with 1 - 1/(4*floor(sqrt N))."""
    if report is None:
        report = enumerate_report(sp)
    lhs = report.ratio_standard_to_nonsquare
    if lhs is None:
        raise DomainError(f"no standard successes among non-square coprimes of {sp.N}")
    rhs = ratio_bound(sp.N)
    return BoundCheck(sp, lhs, rhs, lhs <= rhs)


def sweep(limit: int, hard_only: bool = False, oracle: str = "factored", workers: int = 1,
          lower: int = 15) -> list[EnumerationReport]:
    """Enumeration reports for every semiprime lower <= N < limit."""
    sps = [s for s in enumerate_hard_semiprimes(limit) if s.N >= lower and (s.hard_form or not hard_only)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(enumerate_report, sps, [oracle] * len(sps)))
    return [enumerate_report(s, oracle) for s in sps]


@dataclass(frozen=True)
class MonteCarloReport:
    """Sampled counterpart of :class:`EnumerationReport`.

    Counts are over accepted coprime samples; draws that shared a factor
    with N are tallied separately in ``early_factor_events``.
    """

    semiprime: Semiprime
    seed: int
    samples: int
    early_factor_events: int
    total_coprimes: int
    square_coprimes: int
    nonsquare_coprimes: int
    even_order_count: int
    odd_order_count: int
    trivial_failures: int
    standard_success: int
    recovery_success: int
    odd_order_square_success: int
    root_collapse_success: int
    nonsquare_success: int
    equivalence_mismatches: int
    parity_mismatches: int

    def estimate(self, count: str, denominator: str = "total_coprimes") -> tuple[float, float]:
        """Fraction and binomial standard error for one of the counts."""
        n = getattr(self, denominator)
        if n == 0:
            return math.nan, math.nan
        p = getattr(self, count) / n
        return p, math.sqrt(p * (1 - p) / n)

    @property
    def p_even_order(self) -> tuple[float, float]:
        return self.estimate("even_order_count")

    @property
    def p_standard(self) -> tuple[float, float]:
        return self.estimate("standard_success")

    @property
    def p_recovery(self) -> tuple[float, float]:
        return self.estimate("recovery_success")

    @property
    def p_nonsquare(self) -> tuple[float, float]:
        return self.estimate("nonsquare_success", "nonsquare_coprimes")


def _sample_range(sp: Semiprime, seed: int, lo: int, hi: int, budget: int = 10_000) -> Counter:
    N = sp.N

    @lru_cache(maxsize=None)
    def view(c):
        return component_orders(c, sp)

    order = lambda c: view(c).order  # noqa: E731
    parity = lambda c: (view(c).t1, view(c).t2)  # noqa: E731
    tally = Counter({k: 0 for k in COUNT_KEYS + ("early_factor_events",)})
    for i in range(lo, hi):
        # Each sample owns a stream keyed by (seed, index): worker-count independent.
        rng = random.Random((seed << 64) | i)
        for _ in range(budget):
            c = rng.randrange(2, N)
            if math.gcd(c, N) == 1:
                break
            tally["early_factor_events"] += 1
        else:
            raise BudgetExceeded(f"sample {i}: no coprime of {N} in {budget} draws")
        classify(c, N, order, tally, parity)
    return tally


def monte_carlo_report(sp: Semiprime, samples: int, seed: int = 0, workers: int = 1) -> MonteCarloReport:
    if samples < 100:
        raise DomainError(f"need at least 100 samples, got {samples}")
    if seed < 0 or seed >= 1 << 64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if workers > 1:
        spans = _chunks(0, samples, workers)
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_sample_range, *zip(*[(sp, seed, a, b) for a, b in spans]))
            tally = sum(parts, Counter())
    else:
        tally = _sample_range(sp, seed, 0, samples)
    names = [f.name for f in fields(MonteCarloReport)][3:]
    return MonteCarloReport(sp, seed, samples, **{k: tally[k] for k in names})
