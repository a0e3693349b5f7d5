"""Command-line front end.

Three subcommands:

  thetacert eval <function> --y Y [--order N] [--format text|json]
  thetacert verify <suite> [--json PATH] [--interval LO HI] [--target-sign S]
  thetacert scan --a A [--interval LO HI] [--resolution N] [--csv PATH]

Exit codes are stable across subcommands: 0 = success / fully certified,
1 = verification failure, inconclusive result or evaluation error,
2 = usage error (bad arguments).  The default working precision is 128
bits and can be overridden with --precision or the THETACERT_PRECISION
environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from .certify import CertificationReport, Status, certify_sign
from .enclosure import DomainError, Enclosure, EnclosureError, EvalConfig
from .envelopes import check_c_admissible, log_grid, verify_sandwich
from .modular import theta4_eval, verify_modular_identity
from .report import ReportDocument, decimal_bounds
from .scanner import ExponentQuery, find_nonconvex_witness, scan_rows
from .theta import theta2_series
from .verifier import (
    QUANTITIES,
    compute_greek_constants,
    f_eval,
    f_prime,
    f_second,
    verify_convexity,
    verify_decreasing_argument,
    verify_even_terms_large_y,
    verify_g_chain,
    verify_odd_terms_large_y,
    verify_small_y_chain,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

EVAL_FUNCTIONS = ("theta2", "theta4", "f", "f'", "f''")
VERIFY_SUITES = (
    "envelopes",
    "modular",
    "g-chain",
    "large-y",
    "small-y",
    "greek",
    "convexity",
    "decreasing",
    "all",
)
SUITE_ALIASES = {"lemma1": "envelopes"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetacert",
        description="Certified theta-function evaluation and inequality verification.",
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=None,
        help="working precision in bits (default: THETACERT_PRECISION or 128)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function to a certified enclosure")
    p_eval.add_argument("function", choices=EVAL_FUNCTIONS)
    p_eval.add_argument("--y", required=True, help="argument, a positive decimal")
    p_eval.add_argument("--order", type=int, default=0, choices=(0, 1, 2, 3),
                        help="derivative order (theta functions only)")
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    p_eval.add_argument("--digits", type=int, default=40, help="decimal digits printed")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=VERIFY_SUITES + tuple(SUITE_ALIASES))
    p_verify.add_argument("--json", dest="json_path", default=None,
                          help="write the full report document here")
    p_verify.add_argument("--interval", nargs=2, metavar=("LO", "HI"), default=None,
                          help="override the certification interval (convexity suite)")
    p_verify.add_argument("--target-sign", choices=("positive", "negative"), default=None,
                          help="certify this sign instead of the suite default (convexity suite)")
    p_verify.add_argument("--quantity", choices=tuple(QUANTITIES), default="f_second",
                          help="quantity for a custom convexity certification")
    p_verify.add_argument("--n-max", type=int, default=50,
                          help="termwise index bound for the large-y/decreasing suites")
    p_verify.add_argument("--digits", type=int, default=40)

    p_scan = sub.add_parser("scan", help="scan an exponent family member for convexity failures")
    p_scan.add_argument("--a", required=True, help="exponent (decimal)")
    p_scan.add_argument("--interval", nargs=2, metavar=("LO", "HI"),
                        default=("0.05", "5"))
    p_scan.add_argument("--resolution", type=int, default=48)
    p_scan.add_argument("--csv", dest="csv_path", default=None)
    p_scan.add_argument("--digits", type=int, default=20)
    return parser


def _make_config(args) -> EvalConfig:
    bits = args.precision
    if bits is None:
        bits = int(os.environ.get("THETACERT_PRECISION", "128"))
    return EvalConfig(precision_bits=bits)


def _parse_positive(text: str, what: str) -> Enclosure:
    try:
        enc = Enclosure(text)
    except Exception:
        raise SystemExit(_usage_error(f"{what} must be a decimal number, got {text!r}"))
    if not enc.is_strictly_positive():
        raise SystemExit(_usage_error(f"{what} must be positive, got {text}"))
    return enc


def _usage_error(message: str) -> int:
    print(f"thetacert: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _cmd_eval(args, cfg: EvalConfig) -> int:
    y = _parse_positive(args.y, "--y")
    try:
        if args.function == "theta4":
            value = theta4_eval(y, args.order, cfg)
            name = f"theta4^({args.order})" if args.order else "theta4"
        elif args.function == "theta2":
            value = theta2_series(y, args.order, cfg)
            name = f"theta2^({args.order})" if args.order else "theta2"
        else:
            if args.order:
                return _usage_error("--order applies only to the theta functions")
            fn = {"f": f_eval, "f'": f_prime, "f''": f_second}[args.function]
            value = fn(y, cfg)
            name = args.function
    except EnclosureError as exc:
        print(f"thetacert: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    lo, hi = decimal_bounds(value, args.digits)
    if args.format == "json":
        doc = ReportDocument(command=f"eval {args.function}", config=cfg,
                             decimal_digits=args.digits).start()
        doc.add_value(f"{name}({args.y})", value)
        doc.finish()
        print(doc.to_json())
    else:
        print(f"{name}({args.y}) in [{lo}, {hi}]")
    return EXIT_OK


def _suite_envelopes(args, cfg) -> list[CertificationReport]:
    grid = log_grid(1.0, 100.0, 40)
    reports = [verify_sandwich(grid, nu, cfg) for nu in range(4)]
    reports += [check_c_admissible(nu, cfg) for nu in range(4)]
    return reports


def _suite_modular(args, cfg) -> list[CertificationReport]:
    return [verify_modular_identity(("0.5", "2"), nu, cfg) for nu in range(4)]


def _suite_g_chain(args, cfg):
    return [verify_g_chain(cfg)]


def _suite_large_y(args, cfg):
    return [
        verify_even_terms_large_y(args.n_max, cfg=cfg),
        verify_odd_terms_large_y(args.n_max, cfg=cfg),
    ]


def _suite_small_y(args, cfg):
    return [verify_small_y_chain(cfg)]


def _suite_greek(args, cfg, doc: ReportDocument | None):
    from .certify import Check

    checks = []
    try:
        greek = compute_greek_constants(cfg)
        checks.append(Check("leading-order cancellation", True, ""))
        for name, value in greek.as_dict().items():
            checks.append(Check(f"{name} strictly positive", value.is_strictly_positive(), ""))
            if doc is not None:
                doc.add_value(name, value)
        checks.append(Check("alpha < gamma", greek.alpha.hi < greek.gamma.lo, ""))
        checks.append(Check("beta < delta", greek.beta.hi < greek.delta.lo, ""))
        status = Status.CERTIFIED if all(c.passed for c in checks) else Status.FAILED
    except EnclosureError as exc:
        checks.append(Check("constant collection", False, str(exc)))
        status = Status.FAILED
        greek = None
    report = CertificationReport(name="greek-constants", status=status, checks=checks)
    if greek is not None and doc is None:
        for name, value in greek.as_dict().items():
            lo, hi = decimal_bounds(value, args.digits)
            print(f"  {name} in [{lo}, {hi}]")
    return [report]


def _suite_convexity(args, cfg):
    if args.interval is not None or args.target_sign is not None:
        interval = args.interval if args.interval is not None else ("0.05", "20")
        sign = args.target_sign or "positive"
        quantity = QUANTITIES[args.quantity]
        return [
            certify_sign(quantity, tuple(interval), sign, cfg,
                         name=f"{args.quantity}-{sign}")
        ]
    return [verify_convexity(cfg)]


def _suite_decreasing(args, cfg):
    return [verify_decreasing_argument(cfg, n_max=args.n_max)]


def _cmd_verify(args, cfg: EvalConfig) -> int:
    suite = SUITE_ALIASES.get(args.suite, args.suite)
    doc = ReportDocument(command=f"verify {suite}", config=cfg,
                         decimal_digits=args.digits).start()
    runners = {
        "envelopes": lambda: _suite_envelopes(args, cfg),
        "modular": lambda: _suite_modular(args, cfg),
        "g-chain": lambda: _suite_g_chain(args, cfg),
        "large-y": lambda: _suite_large_y(args, cfg),
        "small-y": lambda: _suite_small_y(args, cfg),
        "greek": lambda: _suite_greek(args, cfg, doc if args.json_path else None),
        "convexity": lambda: _suite_convexity(args, cfg),
        "decreasing": lambda: _suite_decreasing(args, cfg),
    }
    order = list(runners) if suite == "all" else [suite]
    all_ok = True
    for name in order:
        try:
            reports = runners[name]()
        except (EnclosureError, ValueError) as exc:
            print(f"suite {name}: error: {exc}", file=sys.stderr)
            all_ok = False
            continue
        for rep in reports:
            doc.add_certification(rep)
            marker = "ok" if rep.certified else rep.status.value.upper()
            print(f"[{marker}] {rep.summary()}")
            if not rep.certified:
                all_ok = False
    doc.finish()
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(doc.to_json())
        print(f"report written to {args.json_path}")
    summary = doc.summary
    print(
        f"suites: {len(order)}  certifications: {summary['certified']} certified, "
        f"{summary['failed']} failed, {summary['inconclusive']} inconclusive"
    )
    return EXIT_OK if all_ok else EXIT_VERIFICATION_FAILED


def _cmd_scan(args, cfg: EvalConfig) -> int:
    try:
        query = ExponentQuery(
            a=args.a,
            interval=(float(args.interval[0]), float(args.interval[1])),
            resolution=args.resolution,
        )
    except (ValueError, TypeError) as exc:
        return _usage_error(str(exc))
    rows = scan_rows(query, cfg)
    witness = find_nonconvex_witness(query, cfg)
    lines = ["y,f_second_lo,f_second_hi"]
    for y, enc in rows:
        lo, hi = decimal_bounds(enc, args.digits)
        lines.append(f"{y.lo},{lo},{hi}")
    if witness is not None:
        ylo, yhi = decimal_bounds(witness.y, args.digits)
        vlo, vhi = decimal_bounds(witness.value, args.digits)
        lines.append(f"# witness,{ylo},{yhi},{vlo},{vhi}")
    text = "\n".join(lines) + "\n"
    if args.csv_path:
        with open(args.csv_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"scan written to {args.csv_path}")
    else:
        sys.stdout.write(text)
    if witness is not None:
        vlo, vhi = decimal_bounds(witness.value, args.digits)
        print(f"witness: f_a'' < 0 certified at y in [{witness.y.lo}, {witness.y.hi}] "
              f"(value in [{vlo}, {vhi}])")
    else:
        print("no witness found (this does not certify convexity)")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        cfg = _make_config(args)
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        if args.command == "eval":
            return _cmd_eval(args, cfg)
        if args.command == "verify":
            return _cmd_verify(args, cfg)
        if args.command == "scan":
            return _cmd_scan(args, cfg)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except DomainError as exc:
        print(f"thetacert: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
