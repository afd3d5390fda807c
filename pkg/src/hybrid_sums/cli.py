"""Command-line entry point.

Exit codes: 0 success (audit findings included), 1 an exact check failed,
2 configuration error, 3 numeric fault (imaginary residue, series failure).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .arith import NotInvertibleError
from .characters import character_group
from .exp_sums import ImaginaryResidueError, kloosterman
from .hp_numeric import EulerMaclaurinError, PrecisionContext, format_hp
from .lfunc import l_value
from .rational_core import format_rational
from .report import write_report
from .runner import LEMMA_IDS, ConfigError, RunConfig, run
from .sums import HARDY_VARIANTS, dedekind, hardy

__all__ = ["main", "build_parser", "parse_int_list"]

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def _error(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": {"type": kind, "message": message}}, sort_keys=True), file=sys.stderr)
    return code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.exit(_error("config", f"{self.prog}: {message}", EXIT_CONFIG))


def parse_int_list(text: str) -> Tuple[int, ...]:
    """"4,8,9" or "3-7,12" -> sorted unique ints."""
    values = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        if sep and lo:
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            values.update(range(lo_i, hi_i + 1))
        else:
            values.add(int(part))
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return tuple(sorted(values))


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _report_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bits", type=int, help="working precision in bits (default: chosen per modulus)")
    p.add_argument("--tol", type=float, help="relative tolerance (default: 2^(-bits/2))")
    p.add_argument("--out", help="write the report here (a .meta.json sidecar gets the timestamp)")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--cache", help="append-only JSON-lines result cache")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hybrid-sums", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = top.add_parser("compute", help="evaluate a single quantity")
    csub = compute.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = csub.add_parser("dedekind", help="S(h,m,n,q)")
    for name in ("h", "m", "n", "q"):
        p.add_argument(f"--{name}", type=int, required=True)
    p = csub.add_parser("hardy", help="generalized Hardy sums s1, s2, s3, s5")
    p.add_argument("--variant", choices=HARDY_VARIANTS, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, required=True)
    p = csub.add_parser("kloosterman", help="K(n,q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--bits", type=int)
    p = csub.add_parser("lvalue", help="L(m,chi) for the character of the given index mod q")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--char-index", type=int, required=True)
    p.add_argument("--bits", type=int)

    verify = top.add_parser("verify", help="run identity checks")
    vsub = verify.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = vsub.add_parser("lemma", help="check one lemma over parameter lists")
    p.add_argument("--id", dest="identity", choices=LEMMA_IDS, required=True)
    p.add_argument("--q", type=_int_list, required=True)
    p.add_argument("--m", type=_int_list)
    p.add_argument("--n", type=_int_list)
    p.add_argument("--h", type=_int_list)
    _report_options(p)
    p = vsub.add_parser("prop11", help="Hardy-sum reductions and vanishing for q <= N")
    p.add_argument("--q-max", type=int, required=True)
    _report_options(p)
    p = vsub.add_parser("reciprocity", help="reciprocity and sawtooth checks for k <= N")
    p.add_argument("--k-max", type=int, required=True)
    _report_options(p)

    audit = top.add_parser("audit", help="audit the hybrid mean-value theorems")
    asub = audit.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = asub.add_parser("theorem")
    p.add_argument("--id", dest="identity", choices=("1", "2", "3", "4", "5"), required=True)
    p.add_argument("--q", type=_int_list, required=True)
    p.add_argument("--m", type=_int_list)
    p.add_argument("--n", type=_int_list)
    p.add_argument("--alt-ranges", action="store_true", help="also report the units-only range for Theorem 5")
    _report_options(p)

    p = top.add_parser("scan", help="lemma checks and theorem audits over a modulus range")
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--square-full-only", action="store_true")
    p.add_argument("--alt-ranges", action="store_true")
    _report_options(p)
    return parser


def _config(args) -> RunConfig:
    common = dict(
        bits=args.bits, tol=args.tol, out=args.out, fmt=args.fmt, cache=args.cache, jobs=args.jobs
    )
    if args.command == "verify" and args.what == "lemma":
        m_default = (1, 3) if args.identity == "2.2" else (1,)
        return RunConfig(
            "verify-lemma",
            moduli=args.q,
            m_values=args.m or m_default,
            n_values=args.n or (1,),
            h_values=args.h,
            identity=args.identity,
            **common,
        )
    if args.command == "verify" and args.what == "prop11":
        return RunConfig("verify-prop11", moduli=tuple(range(1, args.q_max + 1)), **common)
    if args.command == "verify":
        return RunConfig("verify-reciprocity", moduli=tuple(range(1, args.k_max + 1)), **common)
    if args.command == "audit":
        return RunConfig(
            "audit-theorem",
            moduli=args.q,
            m_values=args.m or (1,),
            n_values=args.n or (1,),
            identity=args.identity,
            secondary=args.alt_ranges,
            **common,
        )
    return RunConfig(
        "scan",
        moduli=tuple(range(1, args.q_max + 1)),
        square_full_only=args.square_full_only,
        secondary=args.alt_ranges,
        **common,
    )


def _compute(args) -> int:
    if args.q < 1:
        raise ConfigError("q must be >= 1")
    if args.what == "dedekind":
        print(format_rational(dedekind(args.h, args.m, args.n, args.q)))
        return EXIT_OK
    if args.what == "hardy":
        if args.variant == "s3" and args.n is None:
            raise ConfigError("s3 needs --n")
        if args.variant != "s3" and args.m is None:
            raise ConfigError(f"{args.variant} needs --m")
        if args.variant == "s2" and args.n is None:
            raise ConfigError("s2 needs --n")
        print(format_rational(hardy(args.variant, args.h, args.m, args.n, args.q)))
        return EXIT_OK
    if args.q < 2:
        raise ConfigError("q must be >= 2")
    ctx = PrecisionContext.for_modulus(args.q, args.bits)
    if args.what == "kloosterman":
        print(f"{format_hp(kloosterman(args.n, args.q, ctx), ctx)} [bits={ctx.bits}]")
        return EXIT_OK
    group = character_group(args.q)
    try:
        chi = group.by_index(args.char_index)
    except IndexError as exc:
        raise ConfigError(str(exc)) from None
    if chi.is_principal():
        raise ConfigError("the principal character has a pole at s=1 and is not supported")
    value = l_value(args.m, chi, ctx)
    print(f"{format_hp(value, ctx)} [bits={ctx.bits}] chi={json.dumps(chi.to_json(), sort_keys=True)}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            return _compute(args)
        config = _config(args)
        report = run(config)
    except (ConfigError, NotInvertibleError) as exc:
        return _error("config", str(exc), EXIT_CONFIG)
    except ValueError as exc:
        return _error("config", str(exc), EXIT_CONFIG)
    except (ImaginaryResidueError, EulerMaclaurinError) as exc:
        return _error("numeric", str(exc), EXIT_NUMERIC)
    text = write_report(report, config.out, config.fmt)
    if not config.out:
        sys.stdout.write(text)
    return EXIT_CHECK_FAILED if report.summary["hard_failures"] else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
