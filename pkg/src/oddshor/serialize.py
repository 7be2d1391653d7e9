"""Canonical plain-data views of results for JSON, CSV and text output.

Integers (and exact fractions, as ``"num/den"``) become decimal strings so
that no consumer loses precision.  Field order is fixed by construction.
"""
from __future__ import annotations

import enum
import json
from fractions import Fraction

from .arith import SquareDecomposition
from .orderfind import OrderRecord
from .pipeline import Attempt, Factors, FactorRun, TrivialFailure, UnusableOddOrder
from .primes import Semiprime
from .stats import COUNT_KEYS, EnumerationReport, MonteCarloReport

CSV_SCHEMA_VERSION = 1


def scalar(v):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, enum.Enum):
        return v.value
    raise TypeError(f"cannot serialize {type(v).__name__}")


def semiprime(sp: Semiprime) -> dict:
    return {"N": scalar(sp.N), "p1": scalar(sp.p1), "p2": scalar(sp.p2), "hard_form": sp.hard_form}


def order_record(rec: OrderRecord) -> dict:
    n, t0 = rec.split
    return {
        "modulus": scalar(rec.modulus),
        "coprime": scalar(rec.coprime),
        "order": scalar(rec.order),
        "two_adic_exponent": scalar(n),
        "odd_part": scalar(t0),
    }


def outcome(o) -> dict:
    if isinstance(o, Factors):
        return {
            "kind": "factors",
            "p": scalar(o.p),
            "q": scalar(o.q),
            "method": o.method.value,
            "steps": scalar(o.steps),
            "witness": scalar(o.witness),
        }
    if isinstance(o, TrivialFailure):
        return {"kind": "trivial-failure", "witness": scalar(o.witness)}
    if isinstance(o, UnusableOddOrder):
        return {"kind": "unusable-odd-order"}
    raise TypeError(f"not an outcome: {o!r}")


def attempt(a: Attempt) -> dict:
    return {
        "coprime": scalar(a.coprime),
        "early_factor": scalar(a.early_factor),
        "record": None if a.record is None else order_record(a.record),
        "outcome": None if a.outcome is None else outcome(a.outcome),
    }


def factor_run(run: FactorRun) -> dict:
    factors = run.factors
    method = None
    if factors is not None:
        last = run.attempts[-1]
        method = "early-gcd" if last.early_factor is not None else last.outcome.method.value
    return {
        "N": scalar(run.N),
        "attempts": [attempt(a) for a in run.attempts],
        "factors": None if factors is None else [scalar(f) for f in factors],
        "method": method,
    }


def decomposition(d: SquareDecomposition) -> dict:
    return {"base": scalar(d.base), "root": scalar(d.root), "exponent": scalar(d.exponent)}


def enumeration_report(r: EnumerationReport) -> dict:
    out = {"semiprime": semiprime(r.semiprime), "oracle": r.oracle, "group_order": scalar(r.group_order)}
    out.update((k, scalar(getattr(r, k))) for k in COUNT_KEYS)
    out.update(
        p_even_order=scalar(r.p_even_order),
        p_standard=scalar(r.p_standard),
        p_recovery=scalar(r.p_recovery),
        p_nonsquare=scalar(r.p_nonsquare),
        ratio_standard_to_nonsquare=scalar(r.ratio_standard_to_nonsquare),
        ratio_bound=scalar(r.ratio_bound),
        ratio_bound_note="1 - 1/(4*floor(sqrt(N))); floor makes the bound conservative",
        bound_holds=r.bound_holds,
    )
    return out


def monte_carlo_report(r: MonteCarloReport) -> dict:
    out = {
        "semiprime": semiprime(r.semiprime),
        "seed": scalar(r.seed),
        "samples": scalar(r.samples),
        "early_factor_events": scalar(r.early_factor_events),
    }
    out.update((k, scalar(getattr(r, k))) for k in COUNT_KEYS)
    for name in ("p_even_order", "p_standard", "p_recovery", "p_nonsquare"):
        p, se = getattr(r, name)
        out[name] = {"estimate": scalar(p), "std_error": scalar(se)}
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


# Flat CSV rows; the column tuples below are part of the versioned schema.
ENUMERATION_COLUMNS = (
    ("N", "p1", "p2", "hard_form", "oracle", "group_order")
    + COUNT_KEYS
    + ("p_even_order", "p_standard", "p_recovery", "p_nonsquare",
       "ratio_standard_to_nonsquare", "ratio_bound", "bound_holds")
)
ATTEMPT_COLUMNS = ("index", "coprime", "early_factor", "order", "kind", "p", "q", "method", "steps", "witness")


def flatten(d: dict, prefix: str = "") -> dict:
    """One level of keys; nested dicts other than ``semiprime`` get a name prefix."""
    out = {}
    for k, v in d.items():
        if isinstance(v, dict):
            out.update(flatten(v, "" if k == "semiprime" else f"{prefix}{k}_"))
        else:
            out[prefix + k] = v
    return out
