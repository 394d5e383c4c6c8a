"""Command-line interface.

Output is a stream of records, one JSON object per line (``--format json``,
the default) or CSV rows. Rationals are written as exact ``p/q`` strings and
complex numbers as ``{"re", "im", "digits"}`` with a digit count fixed by the
working precision, so identical arguments give byte-identical output.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
Errors go to stderr as a JSON object with a ``code`` field.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from . import analytic
from .bernoulli import divisibility_scan, incomplete_poly_bernoulli
from .errors import IPBError
from .series import gf_incomplete_bernoulli, gf_iterated_integral
from .stirling import partition_count_oracle, stirling_row, stirling_value
from .variant import CLASSICAL, KINDS, RESTRICTED, Variant

__all__ = ["run", "main", "build_parser", "format_rational", "format_decimal", "format_complex"]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# formatting


def format_rational(x) -> str:
    return str(Fraction(x))


def format_decimal(x, digits: int) -> str:
    """Exact rational rounded half-up to ``digits`` places after the point."""
    x = Fraction(x)
    scaled = math.floor(abs(x) * 10**digits + Fraction(1, 2))
    sign = "-" if x < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def complex_digits(precision: int) -> int:
    return math.ceil(precision * math.log10(2))


def format_real(x, precision: int) -> str:
    ctx = mpmath.MPContext()
    ctx.prec = precision
    return ctx.nstr(ctx.convert(x), complex_digits(precision), strip_zeros=False)


def format_complex(z, precision: int) -> dict:
    ctx = mpmath.MPContext()
    ctx.prec = precision
    z = ctx.mpc(z)
    return {
        "re": format_real(z.real, precision),
        "im": format_real(z.imag, precision),
        "digits": complex_digits(precision),
    }


def _flatten(record: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            flat[name] = ";".join("" if v is None else str(v) for v in value)
        elif value is None:
            flat[name] = ""
        else:
            flat[name] = value
    return flat


class _Emitter:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out
        self._writer = None

    def __call__(self, record: dict):
        if self.fmt == "json":
            self.out.write(json.dumps(record, separators=(", ", ": ")) + "\n")
            return
        flat = _flatten(record)
        if self._writer is None:
            self._writer = csv.DictWriter(self.out, fieldnames=list(flat), lineterminator="\n")
            self._writer.writeheader()
        self._writer.writerow(flat)


# ---------------------------------------------------------------------------
# argument parsing


def _variant(args) -> Variant:
    if args.variant == CLASSICAL:
        return Variant.classical()
    if args.m is None:
        raise UsageError(f"--variant {args.variant} needs -m")
    return Variant(args.variant, args.m)


def _complex_arg(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) > 2:
        raise argparse.ArgumentTypeError("expected <real>[,<imag>]")
    for part in parts:
        try:
            float(part)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parts[0], parts[1] if len(parts) == 2 else "0"


def _prime_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--decimal", type=_nonneg, metavar="DIGITS", default=argparse.SUPPRESS,
                        help="also render rationals as decimals with this many places")

    parser = _Parser(prog="ipb", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stirling", parents=[common], help="Stirling numbers of the second kind")
    p.add_argument("--variant", choices=KINDS, required=True)
    p.add_argument("-n", type=_nonneg, required=True)
    p.add_argument("-k", type=_nonneg)
    p.add_argument("-m", type=_positive)
    p.add_argument("--oracle", action="store_true", help="cross-check by brute-force enumeration")

    p = sub.add_parser("bernoulli", parents=[common], help="incomplete poly-Bernoulli numbers")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--variant", choices=KINDS, required=True)
    p.add_argument("-m", type=_positive)
    p.add_argument("--n-max", type=_nonneg, required=True)

    p = sub.add_parser("verify", parents=[common], help="verification suites")
    vsub = p.add_subparsers(dest="suite", required=True, parser_class=_Parser)
    g = vsub.add_parser("gf", parents=[common], help="definition vs generating function vs iterated integral")
    g.add_argument("--mu", type=_positive, required=True)
    g.add_argument("--variant", choices=KINDS, required=True)
    g.add_argument("-m", type=_positive)
    g.add_argument("--order", type=_nonneg, required=True)

    p = sub.add_parser("divisibility", parents=[common], help="residues of B_p modulo p for mu <= 0")
    p.add_argument("--primes", type=_prime_list, required=True)
    p.add_argument("--mu-min", type=int, required=True)
    p.add_argument("--mu-max", type=int, default=0)
    p.add_argument("--m-min", type=_positive, required=True)
    p.add_argument("--m-max", type=_positive, required=True)

    p = sub.add_parser("zeta", parents=[common], help="Lambert-W series for zeta(s)")
    p.add_argument("--s", type=_complex_arg, required=True, metavar="RE[,IM]")
    p.add_argument("--branch", type=int, choices=(0, -1), required=True)
    p.add_argument("--terms", type=_nonneg, required=True)
    p.add_argument("--precision", type=int, default=analytic.DEFAULT_PRECISION)
    p.add_argument("--partial-sums", action="store_true", help="include every partial sum")
    return parser


# ---------------------------------------------------------------------------
# commands


def _rational_fields(value, args) -> dict:
    fields = {"value": format_rational(value)}
    if getattr(args, "decimal", None) is not None:
        fields["decimal"] = format_decimal(value, args.decimal)
    return fields


def _cmd_stirling(args, emit) -> int:
    v = _variant(args)
    record = {"kind": "stirling", "variant": v.kind, "m": v.m, "n": args.n, "k": args.k}
    if args.k is not None:
        value = stirling_value(args.n, args.k, v)
        record["value"] = str(value)
        oracle = (lambda: partition_count_oracle(args.n, args.k, v.min_block, v.m if v.kind == RESTRICTED else None))
    else:
        value = stirling_row(args.n, v)
        record["values"] = [str(x) for x in value]
        oracle = (lambda: [partition_count_oracle(args.n, k, v.min_block,
                                                  v.m if v.kind == RESTRICTED else None)
                           for k in range(args.n + 1)])
    status = EXIT_OK
    if args.oracle:
        expected = oracle()
        record["oracle"] = str(expected) if args.k is not None else [str(x) for x in expected]
        record["agree"] = expected == value
        if not record["agree"]:
            status = EXIT_FAILED
    emit(record)
    return status


def _cmd_bernoulli(args, emit) -> int:
    v = _variant(args)
    for n in range(args.n_max + 1):
        value = incomplete_poly_bernoulli(n, args.mu, v)
        record = {"kind": "bernoulli", "n": n, "mu": args.mu, "variant": v.kind, "m": v.m}
        record.update(_rational_fields(value, args))
        emit(record)
    return EXIT_OK


def _cmd_verify_gf(args, emit) -> int:
    v = _variant(args)
    definition = [incomplete_poly_bernoulli(n, args.mu, v) for n in range(args.order + 1)]
    quotient = gf_incomplete_bernoulli(args.mu, v, args.order)
    nested = gf_iterated_integral(args.mu, v, args.order)
    mismatches = [n for n in range(args.order + 1)
                  if not definition[n] == quotient[n] == nested[n]]
    emit({
        "kind": "gf-check",
        "mu": args.mu,
        "variant": v.kind,
        "m": v.m,
        "order": args.order,
        "equal": not mismatches,
        "mismatches": mismatches,
        "values": [format_rational(x) for x in definition],
    })
    return EXIT_OK if not mismatches else EXIT_FAILED


def _cmd_divisibility(args, emit) -> int:
    if args.mu_max > 0 or args.mu_min > args.mu_max:
        raise UsageError("need --mu-min <= --mu-max <= 0")
    if args.m_min > args.m_max:
        raise UsageError("need --m-min <= --m-max")
    rows = divisibility_scan(args.primes, range(args.mu_min, args.mu_max + 1),
                             range(args.m_min, args.m_max + 1))
    ok = True
    for r in rows:
        emit({
            "kind": "residue",
            "p": r.p,
            "mu": r.mu,
            "m": r.m,
            "variant": r.variant.kind,
            "residue": r.residue,
            "predicted": r.predicted,
            "in_range": r.in_range,
            "passed": r.passed,
        })
        if r.in_range and not r.passed:
            ok = False
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_zeta(args, emit) -> int:
    P = args.precision
    ctx = mpmath.MPContext()
    ctx.prec = P + 32
    s = ctx.mpc(ctx.mpf(args.s[0]), ctx.mpf(args.s[1]))
    run = analytic.zeta_series(s, args.branch, args.terms, P)
    reference = analytic.zeta_reference(s, precision=P)
    record = {
        "kind": "zeta-run",
        "s": format_complex(run.s, P),
        "branch": run.branch,
        "terms": run.n_terms,
        "precision": P,
        "w": format_complex(run.w, P),
        "final": format_complex(run.final, P),
        "est_error": format_real(run.est_error, P),
        "est_error_kind": "heuristic: |P_N - P_(N-1)|",
        "reference": format_complex(reference, P),
        "abs_error": format_real(abs(mpmath.mpc(run.final) - mpmath.mpc(reference)), P),
    }
    if args.partial_sums:
        record["partial_sums"] = [format_complex(x, P) for x in run.terms]
    emit(record)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if not hasattr(args, "format"):
            args.format = "json"
        if not hasattr(args, "decimal"):
            args.decimal = None
        if args.command == "zeta" and args.precision < analytic.MIN_PRECISION:
            raise UsageError(f"--precision must be at least {analytic.MIN_PRECISION}")
        emit = _Emitter(args.format, out)
        handler = {
            "stirling": _cmd_stirling,
            "bernoulli": _cmd_bernoulli,
            "verify": _cmd_verify_gf,
            "divisibility": _cmd_divisibility,
            "zeta": _cmd_zeta,
        }[args.command]
        return handler(args, emit)
    except UsageError as exc:
        _report(err, UsageError.code, str(exc))
        return EXIT_USAGE
    except IPBError as exc:
        _report(err, exc.code, str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def _report(err, code: str, message: str):
    err.write(json.dumps({"code": code, "error": message}) + "\n")


def main(argv: Iterable[str] | None = None):
    sys.exit(run(None if argv is None else list(argv)))


if __name__ == "__main__":
    main()

