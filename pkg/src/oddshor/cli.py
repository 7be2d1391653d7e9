"""Command-line front end.

Exit codes: 0 success, 1 factoring gave up without factors, 2 rejected
input, 3 resource budget exhausted, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import random
import sys

from . import __version__, serialize
from .arith import decompose_square, jacobi
from .errors import BudgetExceeded, DomainError, InvariantViolation
from .pipeline import ORACLES, CoprimeStrategy, full_factor
from .primes import Semiprime, factorize_small, gen_hard_semiprime
from .stats import enumerate_report, monte_carlo_report, sweep

DEFAULT_SEED = 0
U64 = 1 << 64


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < U64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=DEFAULT_SEED, help="u64 seed (default 0)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--workers", type=_positive, default=1,
                        help="worker processes; never changes the output")

    parser = argparse.ArgumentParser(prog="oddshor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", parents=[common], help="multiplicative order of c mod N")
    p.add_argument("N", type=int)
    p.add_argument("c", type=int)
    p.add_argument("--oracle", choices=sorted(ORACLES), default="bruteforce")

    p = sub.add_parser("factor", parents=[common], help="run the factoring loop on N")
    p.add_argument("N", type=int)
    p.add_argument("--strategy", choices=[s.value for s in CoprimeStrategy], default="uniform")
    p.add_argument("--oracle", choices=sorted(ORACLES), default="bruteforce")
    p.add_argument("--max-attempts", type=_positive, default=100)

    p = sub.add_parser("enumerate", parents=[common], help="exact or sampled statistics for semiprimes")
    p.add_argument("N", type=int, nargs="?")
    p.add_argument("--sweep", type=int, metavar="LIMIT", help="every semiprime 15 <= N < LIMIT")
    p.add_argument("--hard-only", action="store_true")
    p.add_argument("--oracle", choices=sorted(ORACLES), default="factored")
    p.add_argument("--samples", type=_positive, help="Monte Carlo with this many samples instead")

    p = sub.add_parser("gen", parents=[common], help="random hard-form semiprime")
    p.add_argument("--bits", type=int, required=True)

    p = sub.add_parser("jacobi", parents=[common], help="Jacobi symbol (c|N)")
    p.add_argument("c", type=int)
    p.add_argument("N", type=int)

    p = sub.add_parser("decompose", parents=[common], help="write b as root**(2**m)")
    p.add_argument("b", type=int)
    return parser


def _header(args) -> dict:
    return {
        "tool": "oddshor",
        "version": __version__,
        "command": args.command,
        "seed": str(args.seed),
        "oracle": getattr(args, "oracle", None),
        "strategy": getattr(args, "strategy", None),
    }


def _semiprime_of(N: int) -> Semiprime:
    fac = factorize_small(N)
    if len(fac) != 2 or any(k != 1 for _, k in fac) or N % 2 == 0:
        raise DomainError(f"{N} is not a product of two distinct odd primes")
    return Semiprime.from_primes(fac[0][0], fac[1][0])


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in value.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines += _text(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for i, item in enumerate(v):
                lines.append(f"{pad}  [{i}]")
                lines += _text(item, indent + 2)
        else:
            if isinstance(v, list):
                v = " ".join(map(str, v))
            lines.append(f"{pad}{k}: {'-' if v is None else v}")
    return lines


def _csv(header: dict, columns, rows) -> str:
    buf = io.StringIO()
    meta = " ".join(f"{k}={v}" for k, v in header.items() if v is not None)
    buf.write(f"# csv-schema={serialize.CSV_SCHEMA_VERSION} {meta}\n")
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


def _emit(args, result, columns=None, rows=None) -> str:
    header = _header(args)
    if args.format == "json":
        return serialize.dumps({"header": header, "result": result})
    if args.format == "csv":
        if columns is None:
            columns, rows = tuple(serialize.flatten(result)), [serialize.flatten(result)]
        return _csv(header, columns, rows)
    head = " ".join(f"{k}={v}" for k, v in header.items() if v is not None)
    return "\n".join([f"# {head}"] + _text(result)) + "\n"


def cmd_order(args) -> tuple[str, int]:
    rec = ORACLES[args.oracle](args.c, args.N)
    return _emit(args, serialize.order_record(rec)), 0


def cmd_factor(args) -> tuple[str, int]:
    run = full_factor(args.N, CoprimeStrategy(args.strategy), args.oracle, args.max_attempts, args.seed)
    result = serialize.factor_run(run)
    rows = []
    for i, a in enumerate(result["attempts"]):
        row = {"index": str(i), "coprime": a["coprime"], "early_factor": a["early_factor"]}
        if a["record"]:
            row["order"] = a["record"]["order"]
        if a["outcome"]:
            row.update(a["outcome"])
        rows.append(row)
    return _emit(args, result, serialize.ATTEMPT_COLUMNS, rows), 0 if run.factors else 1


def cmd_enumerate(args) -> tuple[str, int]:
    if (args.N is None) == (args.sweep is None):
        raise DomainError("give exactly one of N or --sweep LIMIT")
    if args.sweep is not None:
        if args.samples:
            raise DomainError("--samples applies to a single N")
        reports = sweep(args.sweep, args.hard_only, args.oracle, args.workers)
        result = {"sweep_limit": str(args.sweep), "hard_only": args.hard_only,
                  "reports": [serialize.enumeration_report(r) for r in reports]}
        if args.format == "text":
            return _sweep_table(args, reports), 0
        rows = [serialize.flatten(r) for r in result["reports"]]
        return _emit(args, result, serialize.ENUMERATION_COLUMNS, rows), 0
    sp = _semiprime_of(args.N)
    if args.samples:
        rep = monte_carlo_report(sp, args.samples, args.seed, args.workers)
        return _emit(args, serialize.monte_carlo_report(rep)), 0
    result = serialize.enumeration_report(enumerate_report(sp, args.oracle, args.workers))
    return _emit(args, result, serialize.ENUMERATION_COLUMNS, [serialize.flatten(result)]), 0


def _sweep_table(args, reports) -> str:
    head = " ".join(f"{k}={v}" for k, v in _header(args).items() if v is not None)
    lines = [f"# {head}", f"{'N':>8} {'p1':>6} {'p2':>6} hard {'lhs':>14} {'rhs':>12} holds"]
    for r in reports:
        sp = r.semiprime
        lhs = r.ratio_standard_to_nonsquare
        lines.append(f"{sp.N:>8} {sp.p1:>6} {sp.p2:>6} {'yes' if sp.hard_form else 'no ':>4} "
                     f"{str(lhs):>14} {str(r.ratio_bound):>12} {r.bound_holds}")
    failed = [r.semiprime.N for r in reports if r.bound_holds is False]
    lines.append(f"# {len(reports)} semiprimes, {len(failed)} bound violations"
                 + (f": {' '.join(map(str, failed))}" if failed else ""))
    return "\n".join(lines) + "\n"


def cmd_gen(args) -> tuple[str, int]:
    sp = gen_hard_semiprime(args.bits, random.Random(args.seed))
    return _emit(args, serialize.semiprime(sp)), 0


def cmd_jacobi(args) -> tuple[str, int]:
    return _emit(args, {"c": str(args.c), "N": str(args.N), "symbol": str(jacobi(args.c, args.N))}), 0


def cmd_decompose(args) -> tuple[str, int]:
    return _emit(args, serialize.decomposition(decompose_square(args.b))), 0


COMMANDS = {
    "order": cmd_order,
    "factor": cmd_factor,
    "enumerate": cmd_enumerate,
    "gen": cmd_gen,
    "jacobi": cmd_jacobi,
    "decompose": cmd_decompose,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except DomainError as e:
        print(f"oddshor: error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"oddshor: budget exhausted: {e}", file=sys.stderr)
        return 3
    except InvariantViolation as e:
        print(f"oddshor: internal invariant violated: {e}", file=sys.stderr)
        return 4
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
