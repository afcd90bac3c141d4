"""Command-line surface: expand, pmax, scan, profile, gamma, witness, verify.

Exit codes: 0 success, 1 verification or internal failure, 2 usage error.
A --config file holds flat key=value lines mirroring long flag names;
explicit flags win over the file.  All exact rationals render as "p/q" in
JSON output; CSV carries plot-ready decimals.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import dyadic, exponents, records, suites, witness
from ._version import __version__
from .pmax import CounterOverflowError, ResourceError, pmax_dp, pmax_naive
from .records import CheckpointError, RecordTable, ScanConfig, scan_records
from .trajectory import (
    CapExceededError,
    DomainError,
    InvalidExpansionError,
    pierce_digits,
    reconstruct,
    trajectory,
)

USAGE_ERROR = 2
INTERNAL_ERROR = 1


def _pq(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational like 2/177, got {text}") from exc


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _render_json(doc) -> str:
    return json.dumps(doc, indent=2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", default=None, help="flat key=value file mirroring flags; flags win")

    parser = argparse.ArgumentParser(
        prog="piercelab",
        description="Compute and verify step counts of the iterated map x -> n mod x.",
    )
    parser.add_argument("--version", action="version", version=f"piercelab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="orbit, quotients, and digits of a pair")
    p.add_argument("a", type=_positive_int)
    p.add_argument("n", type=_positive_int)

    p = sub.add_parser("pmax", parents=[common], help="P(n) with its smallest witness")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--naive", action="store_true", help="use the brute-force oracle instead")

    p = sub.add_parser("scan", parents=[common], help="record table of P over a range of n")
    p.add_argument("lo", type=_positive_int, metavar="from")
    p.add_argument("hi", type=_positive_int, metavar="to")
    p.add_argument("--block", type=_positive_int, default=records.DEFAULT_BLOCK)
    p.add_argument("--checkpoint", default=None, help="checkpoint path for resumable scans")
    p.add_argument(
        "--checkpoint-interval",
        type=_positive_int,
        default=records.DEFAULT_CHECKPOINT_EVERY,
        help="blocks between checkpoint writes",
    )

    p = sub.add_parser("profile", parents=[common], help="dyadic band occupancy with bound checks")
    p.add_argument("a", type=_positive_int)
    p.add_argument("n", type=_positive_int)

    p = sub.add_parser("gamma", parents=[common], help="exact saving forms at a tuning pair")
    p.add_argument("--delta", type=_fraction, default=None)
    p.add_argument("--lambda", dest="lam", type=_fraction, default=None)
    p.add_argument("--optimize", action="store_true", help="solve for the exact optimal pair")

    p = sub.add_parser("witness", parents=[common], help="long-orbit constructions")
    p.add_argument("kind", choices=("archimedean", "arithmetic"))
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--m", type=_positive_int, default=None)
    p.add_argument("--c", type=float, default=0.3)

    p = sub.add_parser("verify", parents=[common], help="run module invariant suites")
    p.add_argument("suite", choices=suites.SUITE_NAMES + ("all",))
    p.add_argument("--n-max", type=_positive_int, default=2000)

    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Read --config key=value pairs and inject them as leading defaults.

    Injection happens by prepending synthesized flags right after the
    subcommand, so flags given explicitly still win (argparse keeps the
    last occurrence).
    """
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config", default=None)
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv
    try:
        with open(known.config) as fh:
            pairs = []
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"malformed config line: {line!r}")
                key, value = line.split("=", 1)
                pairs.append((key.strip(), value.strip()))
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    injected = []
    for key, value in pairs:
        injected.extend([f"--{key}", value])
    # find the subcommand position: first non-flag token
    for i, tok in enumerate(argv):
        if not tok.startswith("-"):
            return argv[: i + 1] + injected + argv[i + 1 :]
    return argv + injected


def cmd_expand(args) -> int:
    t = trajectory(args.a, args.n)
    digits = None
    recon = None
    if args.a <= args.n:
        exp = pierce_digits(args.a, args.n)
        digits = exp.digits
        recon = reconstruct(exp)
        if recon != Fraction(args.a, args.n):
            print("reconstruction mismatch: internal error", file=sys.stderr)
            return INTERNAL_ERROR
    if args.format == "json":
        doc = {
            "a": args.a,
            "n": args.n,
            "length": t.length,
            "terms": list(t.terms),
            "quotients": list(t.quotients),
        }
        if digits is not None:
            doc["digits"] = list(digits)
            doc["reconstruction"] = _pq(recon)
        _emit(args, _render_json(doc))
    elif args.format == "csv":
        lines = ["j,term,quotient"]
        for j, x in enumerate(t.terms[:-1]):
            lines.append(f"{j},{x},{t.quotients[j]}")
        lines.append(f"{t.length},0,")
        _emit(args, "\n".join(lines))
    else:
        lines = [
            f"P({args.a}, {args.n}) = {t.length}",
            "terms:     " + " ".join(str(x) for x in t.terms),
            "quotients: " + " ".join(str(q) for q in t.quotients),
        ]
        if digits is not None:
            lines.append("digits:    " + " ".join(str(b) for b in digits))
            lines.append(f"reconstruction: {recon} (exact)")
        _emit(args, "\n".join(lines))
    return 0


def cmd_pmax(args) -> int:
    res = pmax_naive(args.n) if args.naive else pmax_dp(args.n)
    if args.format == "json":
        _emit(args, _render_json({"n": res.n, "pmax": res.pmax, "argmax": res.argmax}))
    elif args.format == "csv":
        _emit(args, f"n,pmax,argmax\n{res.n},{res.pmax},{res.argmax}")
    else:
        _emit(args, f"P({res.n}) = {res.pmax} (argmax a = {res.argmax})")
    return 0


def cmd_scan(args) -> int:
    config = ScanConfig(
        lo=args.lo,
        hi=args.hi,
        workers=args.workers,
        block=args.block,
        out=args.out,
        fmt="json" if args.format == "json" else "csv",
        checkpoint_path=args.checkpoint,
        checkpoint_every=args.checkpoint_interval,
    )
    table = scan_records(config)
    if config.out:
        writer = table.to_json if config.fmt == "json" else table.to_csv
        writer(config.out)
    elif config.fmt == "json":
        print(_render_json(table.to_json_dict()))
    else:
        print("\n".join(table.csv_lines()))
    return 0


def cmd_profile(args) -> int:
    t = trajectory(args.a, args.n)
    report = dyadic.check_arch_bound(dyadic.profile(t))
    if args.format == "json":
        doc = {
            "a": args.a,
            "n": args.n,
            "buckets": [
                {
                    "A_exponent": b.exponent,
                    "A": _pq(dyadic.scale_of(b.exponent)),
                    "T": b.count,
                    "bound": _pq(b.bound),
                    "pass": b.passed,
                }
                for b in report.buckets
            ],
            "pass": report.passed,
        }
        _emit(args, _render_json(doc))
    elif args.format == "csv":
        lines = ["n,A_exponent,T,bound,pass"]
        for b in report.buckets:
            lines.append(f"{args.n},{b.exponent},{b.count},{_pq(b.bound)},{str(b.passed).lower()}")
        _emit(args, "\n".join(lines))
    else:
        lines = [f"dyadic profile of the orbit of {args.a} mod {args.n}:"]
        for b in report.buckets:
            a_txt = str(dyadic.scale_of(b.exponent))
            verdict = "pass" if b.passed else "FAIL"
            lines.append(f"  A = {a_txt:>8}: T = {b.count:<3} bound = {b.bound} {verdict}")
        lines.append(f"overall: {'pass' if report.passed else 'FAIL'}")
        _emit(args, "\n".join(lines))
    return 0 if report.passed else INTERNAL_ERROR


def cmd_gamma(args) -> int:
    if args.optimize:
        if args.delta is not None or args.lam is not None:
            print("--optimize takes no --delta/--lambda", file=sys.stderr)
            return USAGE_ERROR
        point = exponents.optimize_gamma()
    else:
        if args.delta is None or args.lam is None:
            print("gamma needs --delta and --lambda, or --optimize", file=sys.stderr)
            return USAGE_ERROR
        point = exponents.gamma(args.delta, args.lam)
    if args.format == "json":
        _emit(args, _render_json(point.to_json_dict()))
    elif args.format == "csv":
        lines = ["delta,lambda,form1,form2,form3,gamma,feasible,overall_exponent"]
        lines.append(
            ",".join(
                [
                    _pq(point.delta),
                    _pq(point.lam),
                    _pq(point.form1),
                    _pq(point.form2),
                    _pq(point.form3),
                    _pq(point.gamma),
                    str(point.feasible).lower(),
                    _pq(point.overall_exponent),
                ]
            )
        )
        _emit(args, "\n".join(lines))
    else:
        flags = "" if point.feasible else "  [outside the feasible box]"
        boundary = "  [on the delta boundary]" if point.on_delta_boundary else ""
        _emit(
            args,
            f"delta={_pq(point.delta)} lambda={_pq(point.lam)} gamma={_pq(point.gamma)}\n"
            f"forms: {_pq(point.form1)}, {_pq(point.form2)}, {_pq(point.form3)}\n"
            f"overall exponent: 1/3 - min(delta, gamma) = {_pq(point.overall_exponent)}"
            f"{flags}{boundary}",
        )
    return 0


def cmd_witness(args) -> int:
    if args.kind == "arithmetic":
        if args.m is None:
            print("arithmetic witness needs --m", file=sys.stderr)
            return USAGE_ERROR
        w = witness.arithmetic_witness(args.m)
        if args.format == "json":
            _emit(
                args,
                _render_json({"n": w.n, "start": w.start, "guaranteed_length": w.guaranteed_length}),
            )
        else:
            _emit(args, f"n = {w.n}, start = {w.start}, orbit length = {w.guaranteed_length}")
        return 0
    if args.n is None:
        print("archimedean witness needs --n", file=sys.stderr)
        return USAGE_ERROR
    report = witness.validate_witness(args.n, c=args.c)
    if args.format == "json":
        _emit(args, _render_json(report.to_json_dict()))
    else:
        lines = [
            f"n = {report.n}: start = {report.start}, orbit length = {report.observed_length}",
            f"validated k = {report.validated_k} (predicted floor {report.predicted_floor:.2f} at c = {report.c})",
        ]
        for chk in report.per_k:
            verdict = "pass" if chk.passed else "FAIL"
            lines.append(
                f"  k = {chk.k}: a_k = {chk.a_k}, b_k in "
                f"[{float(chk.bracket.lo):.3f}, {float(chk.bracket.hi):.3f}], "
                f"bound {chk.bound} {verdict}"
            )
        _emit(args, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    reports = suites.run_suites([args.suite], n_max=args.n_max, seed=args.seed)
    lines = []
    all_ok = True
    for rep in reports:
        lines.append(f"[{rep.name}]")
        for chk in rep.checks:
            mark = "PASS" if chk.passed else "FAIL"
            detail = f"  ({chk.detail})" if chk.detail else ""
            lines.append(f"  {mark}  {chk.label}{detail}")
        all_ok = all_ok and rep.passed
    lines.append("verify: all suites passed" if all_ok else "verify: FAILURES above")
    _emit(args, "\n".join(lines))
    return 0 if all_ok else INTERNAL_ERROR


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = _apply_config_file(parser, argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    handlers = {
        "expand": cmd_expand,
        "pmax": cmd_pmax,
        "scan": cmd_scan,
        "profile": cmd_profile,
        "gamma": cmd_gamma,
        "witness": cmd_witness,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, InvalidExpansionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (CheckpointError, CapExceededError, CounterOverflowError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
