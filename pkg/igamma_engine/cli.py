"""
Command-line interface.

    igamma eval --a 100 --z 120 --function Q
    igamma coeffs --family paris --kmax 5
    igamma accuracy-map --a-min 10 --a-max 1e4 --z-min 10 --z-max 1e4 --output map.csv
    igamma verify --only s3 table2

Exit codes: 0 success, 1 a verification check failed, 2 usage or domain error.
"""
import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

from . import __version__
from .coeffs import (
    SignConvention,
    check_kmax_cap,
    coeff_set_dingle,
    coeff_set_paris,
    e_coeffs,
    rational_to_json,
    stirling_gamma,
    stirling_table,
)
from .evaluator import EvalRequest, Method, PrecisionCtx, Target, eval as evaluate
from .exceptions import IGammaError
from .pipeline import CHECK_NAMES, AccuracyMapSpec, GridAxis, VerificationPipeline, run_accuracy_map
from .pipeline.accuracy_map import round_trip

logger = logging.getLogger("igamma_engine")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

FAMILIES = ("s3", "paris", "dingle", "e", "gamma-stirling")


def setup_logging(verbosity: int, level: Optional[str]) -> None:
    if level is None:
        level = "WARNING" if verbosity == 0 else "INFO" if verbosity == 1 else "DEBUG"
    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


# eval

def cmd_eval(args: argparse.Namespace) -> int:
    req = EvalRequest(
        a=args.a,
        z=args.z,
        target=Target(args.function),
        method=Method(args.method),
        m=args.m,
        precision=PrecisionCtx(bits=args.bits),
    )
    result = evaluate(req)
    payload = {
        "value": round_trip(result.value, result.bits),
        "branch": result.branch.value,
        "chi": result.chi_or_xi,
        "m_used": result.m_used,
        "err_estimate": result.err_estimate,
        "bits_used": result.precision_bits_used,
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        variable = "xi" if result.method is Method.DINGLE else "chi"
        print(f"{args.function}(a={args.a}, z={args.z}) = {payload['value']}")
        print(f"  method={result.method.value} branch={payload['branch']} {variable}={payload['chi']:.6g}")
        print(f"  m_used={payload['m_used']} err_estimate={payload['err_estimate']:.3g} bits_used={payload['bits_used']}")
    return EXIT_OK


# coeffs

def _coeff_payload(family: str, kmax: int, force: bool, convention: Optional[str]) -> Dict:
    if family in ("s3", "gamma-stirling"):
        check_kmax_cap(kmax, force)
    if family == "s3":
        return stirling_table(kmax).to_dict()
    if family == "paris":
        return coeff_set_paris(kmax, force=force).to_dict()
    if family == "dingle":
        conv = SignConvention(convention) if convention else None
        return coeff_set_dingle(kmax, force=force, convention=conv).to_dict()
    if family == "e":
        values = e_coeffs(kmax, force=force)
    else:
        values = [stirling_gamma(k) for k in range(kmax + 1)]
    return {"family": family, "max_k": kmax, "values": [rational_to_json(v) for v in values]}


def _coeff_rows(payload: Dict) -> List[List[str]]:
    family = payload["family"]
    if family == "s3":
        return [
            [k, str(j), value]
            for k, row in payload["rows"].items()
            for j, value in enumerate(row)
            if value != "0"
        ]
    if family in ("paris", "dingle"):
        rows = []
        for part in ("A", "B"):
            for k, poly in enumerate(payload[part]):
                for power, c in enumerate(poly):
                    if c["n"] != "0":
                        rows.append([part, str(k), str(power), c["n"], c["d"]])
        return rows
    return [[str(k), v["n"], v["d"]] for k, v in enumerate(payload["values"])]


_CSV_HEADERS = {
    "s3": ["k", "j", "value"],
    "paris": ["poly", "k", "power", "n", "d"],
    "dingle": ["poly", "k", "power", "n", "d"],
    "e": ["k", "n", "d"],
    "gamma-stirling": ["k", "n", "d"],
}


def cmd_coeffs(args: argparse.Namespace) -> int:
    payload = _coeff_payload(args.family, args.kmax, args.force, args.convention)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(_CSV_HEADERS[args.family])
        writer.writerows(_coeff_rows(payload))
    return EXIT_OK


# accuracy-map

def cmd_accuracy_map(args: argparse.Namespace) -> int:
    spec = AccuracyMapSpec(
        a_grid=GridAxis(min=args.a_min, max=args.a_max, count=args.a_count, scale=args.scale),
        z_grid=GridAxis(min=args.z_min, max=args.z_max, count=args.z_count, scale=args.scale),
        method=Method(args.method),
        m=args.m,
        target=Target(args.function),
        bits=args.bits,
        oracle_bits=args.oracle_bits,
        output_path=Path(args.output),
        workers=args.workers,
    )
    result = run_accuracy_map(spec)
    print(f"{len(result.rows)} rows written to {result.output_path}")
    if result.error_message:
        print(f"warning: {result.error_message}", file=sys.stderr)
    return EXIT_OK


# verify

def cmd_verify(args: argparse.Namespace) -> int:
    report = VerificationPipeline(only=args.only, seed=args.seed).run()
    for r in report.results:
        status = "PASS" if r.success else "FAIL"
        message = r.detail if r.success else r.error_message
        print(f"{status:4}  {r.name:16} {r.seconds:7.1f}s  {message}")
    if not report.success:
        failure = report.first_failure
        print(f"\nfirst failure in {failure.name}: {failure.error_message}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="igamma",
        description="Uniform asymptotic expansions of the incomplete gamma functions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging (repeatable)")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Explicit log level")
    subparsers = parser.add_subparsers(dest="command", required=True)

    methods = [m.value for m in Method]

    ev = subparsers.add_parser("eval", help="Evaluate P, Q, gamma or Gamma at one point")
    ev.add_argument("--a", type=float, required=True)
    ev.add_argument("--z", type=float, required=True)
    ev.add_argument("--function", choices=[t.value for t in Target], default=Target.Q.value)
    ev.add_argument("--method", choices=methods, default=Method.AUTO.value)
    ev.add_argument("--m", type=int, default=None, help="Truncation order (adaptive when omitted)")
    ev.add_argument("--bits", type=int, default=53)
    ev.add_argument("--format", choices=["text", "json"], default="text")
    ev.set_defaults(handler=cmd_eval)

    co = subparsers.add_parser("coeffs", help="Dump exact coefficient tables")
    co.add_argument("--family", choices=FAMILIES, required=True)
    co.add_argument("--kmax", type=int, required=True)
    co.add_argument("--force", action="store_true", help="Allow kmax above the configured cap")
    co.add_argument("--convention", choices=[c.value for c in SignConvention], default=None,
                    help="Dingle sign convention")
    co.add_argument("--format", choices=["json", "csv"], default="json")
    co.set_defaults(handler=cmd_coeffs)

    am = subparsers.add_parser("accuracy-map", help="Compare the evaluator with the oracle on a grid")
    am.add_argument("--a-min", type=float, required=True)
    am.add_argument("--a-max", type=float, required=True)
    am.add_argument("--a-count", type=int, default=10)
    am.add_argument("--z-min", type=float, required=True)
    am.add_argument("--z-max", type=float, required=True)
    am.add_argument("--z-count", type=int, default=10)
    am.add_argument("--scale", choices=["linear", "log"], default="log")
    am.add_argument("--function", choices=[t.value for t in Target], default=Target.Q.value)
    am.add_argument("--method", choices=methods, default=Method.AUTO.value)
    am.add_argument("--m", type=int, default=None)
    am.add_argument("--bits", type=int, default=53)
    am.add_argument("--oracle-bits", type=int, default=256)
    am.add_argument("--workers", type=int, default=1)
    am.add_argument("--output", required=True, help="CSV output path")
    am.set_defaults(handler=cmd_accuracy_map)

    ve = subparsers.add_parser("verify", help="Run the reproduction checks")
    ve.add_argument("--only", nargs="+", choices=CHECK_NAMES, default=None)
    ve.add_argument("--seed", type=int, default=0)
    ve.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    setup_logging(args.verbose, args.log_level)
    try:
        return args.handler(args)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ())) or "request"
        print(f"error: invalid {where}: {first.get('msg')}", file=sys.stderr)
    except (IGammaError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
