"""
Command-line front end.

Exit codes: 0 when every check passes, 1 on a verification failure or a
fixture mismatch, 2 on invalid input. Results go to stdout, progress to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import enumeration as en
from .errors import InvalidInputError, ResourceLimitError
from .proof import verify_chain
from .ratpoly import (
    RationalPolynomial,
    c_polynomial,
    coefficient,
    expand_c_to_r,
    format_rational,
    gr_fixture,
    kerov_fixture,
    parse_monomial,
    variable,
)
from .sliding import SlidingConfig, check_properties, slide, validate

log = logging.getLogger("kerovmaps")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_MAX_K = 9
BIG_K = 11
FIXTURE_K = 7


class _Failure(Exception):
    """A check ran and did not pass."""


class _Args(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    # SUPPRESS so that options given before the subcommand survive
    p = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    p.add_argument("--threads", type=int, default=s, help="worker processes (default: CPU count)")
    p.add_argument("--cache-dir", default=s, help="count cache directory (default: $KEROV_CACHE_DIR)")
    p.add_argument("--no-cache", action="store_true", default=s, help="neither read nor write the cache")
    p.add_argument("--format", choices=("text", "json", "csv"), default=s)
    p.add_argument("--seed", type=int, default=s, help="seed for randomized suites")
    p.add_argument("--max-k", type=int, default=s, help=f"largest k accepted (default {DEFAULT_MAX_K})")
    p.add_argument("--allow-big", action="store_true", default=s, help=f"permit k up to {BIG_K}")
    p.add_argument("-v", "--verbose", action="store_true", default=s, help="progress on stderr")
    return p


DEFAULTS = {
    "threads": None, "cache_dir": None, "no_cache": False, "format": "text",
    "seed": 0, "max_k": DEFAULT_MAX_K, "allow_big": False, "verbose": False,
}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Args(prog="kerovmaps", description="Kerov coefficients and expander maps by brute force.",
                   parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Args)

    p = sub.add_parser("coeff", parents=[common], help="one linear or square coefficient")
    p.add_argument("--kind", choices=("kerov", "gr"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--monomial", required=True, help="e.g. R2^2, R3*R2, C4")

    p = sub.add_parser("cpoly", parents=[common], help="C_k in free cumulants")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list the maps of X_k(i,j) or Y_k(u)")
    p.add_argument("--family", required=True, help="X or Y")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--out", type=Path, help="write the maps here as a JSON array")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("target", choices=("chain", "identities", "sliding", "conjecture"))
    p.add_argument("--k", type=int, action="append", help="repeatable; default depends on target")
    p.add_argument("--cases", type=int, default=1000, help="sliding suite size")
    p.add_argument("--pairs", default="2,2;2,3;3,3;2,4", help="conjecture (i,j) pairs")

    p = sub.add_parser("slide", parents=[common], help="slide a configuration file")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    return parser


def _settings(args: argparse.Namespace) -> argparse.Namespace:
    for name, value in DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, value)
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    if args.threads < 1:
        raise InvalidInputError("--threads must be positive")
    limit = BIG_K if args.allow_big else DEFAULT_MAX_K
    if args.max_k > limit:
        raise InvalidInputError(f"--max-k {args.max_k} exceeds {limit}; pass --allow-big for up to {BIG_K}")
    if args.allow_big:
        log.warning("--allow-big: k = %d enumerates %s permutations", BIG_K, f"{39916800:,}")
    return args


def _count_kwargs(args: argparse.Namespace) -> dict:
    cache = None if args.no_cache else en.CountCache(args.cache_dir)
    return {"workers": args.threads, "cache": cache, "cap": args.max_k}


def _check_k(args: argparse.Namespace, k: int) -> None:
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    if k > args.max_k:
        raise ResourceLimitError(f"k = {k} exceeds --max-k {args.max_k}")


def _emit(args: argparse.Namespace, text: str, payload, rows: list[tuple] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "csv" and rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("k", "monomial", "value"))
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(text)


def cmd_coeff(args: argparse.Namespace) -> int:
    _check_k(args, args.k)
    mono = parse_monomial(args.monomial)
    letter = "R" if args.kind == "kerov" else "C"
    if mono.alphabet != letter:
        raise InvalidInputError(f"--kind {args.kind} takes {letter}-monomials, got {args.monomial!r}")
    if mono.degree not in (1, 2):
        raise InvalidInputError(f"only degree 1 and 2 monomials are supported, got degree {mono.degree}")
    indices = sorted(i for i, e in mono.powers for _ in range(e))
    kw = _count_kwargs(args)
    if args.kind == "kerov":
        if len(indices) == 1:
            value: Fraction | int = en.count_linear(args.k, indices[0], **kw)
        else:
            value = en.count_square(args.k, indices[0], indices[1], **kw)
    elif len(indices) == 1:
        value = en.gr_linear_coefficient(args.k, indices[0], **kw)
    else:
        value = en.gr_square_coefficient(args.k, indices[0], indices[1], **kw)
    text = format_rational(value)
    payload = {"kind": args.kind, "k": args.k, "monomial": str(mono), "value": text}
    _emit(args, text, payload, [(args.k, str(mono), text)])
    if args.k <= FIXTURE_K:
        fixture = kerov_fixture(args.k) if args.kind == "kerov" else gr_fixture(args.k)
        expected = coefficient(fixture, mono)
        if expected != value:
            raise _Failure(f"fixture mismatch: enumeration {text}, table {format_rational(expected)}")
    return EXIT_OK


def cmd_cpoly(args: argparse.Namespace) -> int:
    if args.k < 0:
        raise InvalidInputError("k must be >= 0")
    poly = c_polynomial(args.k)
    rows = [(args.k, str(m), format_rational(c)) for m, c in poly]
    _emit(args, str(poly), {"k": args.k, "polynomial": str(poly)}, rows)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    _check_k(args, args.k)
    kw = {"workers": args.threads, "cap": args.max_k}
    if args.family == "X":
        if args.i is None or args.j is None or args.u is not None:
            raise InvalidInputError("family X takes --i and --j")
        params = (args.i, args.j)
        maps = list(en.enumerate_X(args.k, args.i, args.j, **kw))
    elif args.family == "Y":
        if args.u is None or args.i is not None or args.j is not None:
            raise InvalidInputError("family Y takes --u")
        params = (args.u,)
        maps = list(en.enumerate_Y(args.k, args.u, **kw))
    else:
        raise InvalidInputError(f"unknown family {args.family!r}; use X or Y")
    docs = [m.to_json() for m in maps]
    if args.out is not None:
        args.out.write_text(json.dumps(docs, indent=2) + "\n")
    payload = {"family": args.family, "k": args.k, "params": list(params), "count": len(maps)}
    if args.out is None:
        payload["maps"] = docs
    _emit(args, str(len(maps)), payload)
    return EXIT_OK


def _verify_chain(args: argparse.Namespace) -> bool:
    ks = args.k or [5, 7, 9]
    reports = []
    for k in ks:
        _check_k(args, k)
        reports.append(verify_chain(k, workers=args.threads, cap=args.max_k))
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            print(r.table())
    return all(r.passed for r in reports)


def _verify_identities(args: argparse.Namespace) -> bool:
    ks = args.k or list(range(1, FIXTURE_K + 1))
    results = []
    for k in ks:
        if not 1 <= k <= FIXTURE_K:
            raise InvalidInputError(f"identity tables cover k = 1..{FIXTURE_K}")
        ok = expand_c_to_r(gr_fixture(k)) + variable(k + 1, "R") == kerov_fixture(k)
        results.append((k, ok))
    passed = sum(ok for _, ok in results)
    if args.format == "json":
        print(json.dumps({"identities": [{"k": k, "pass": ok} for k, ok in results],
                          "passed": passed, "total": len(results)}, indent=2, sort_keys=True))
    else:
        for k, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  expand(L_{k}) + R{k + 1} = K_{k}")
        print(f"{passed}/{len(results)} identities {'PASS' if passed == len(results) else 'FAIL'}")
    return passed == len(results)


def _verify_sliding(args: argparse.Namespace) -> bool:
    if args.cases < 1:
        raise InvalidInputError("--cases must be positive")
    report = check_properties(args.cases, args.seed)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(f"cases {report.cases}, special edges {report.special_edges}")
        print(f"involution failures {len(report.involution_failures)}")
        print(f"face-count failures {len(report.face_failures)}")
        print(f"validity failures {len(report.validity_failures)}")
        print("PASS" if report.passed else "FAIL")
    return report.passed


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    try:
        pairs = [tuple(int(x) for x in item.split(",")) for item in text.split(";") if item.strip()]
    except ValueError:
        raise InvalidInputError(f"bad --pairs {text!r}") from None
    if not pairs or any(len(p) != 2 or min(p) < 2 for p in pairs):
        raise InvalidInputError(f"bad --pairs {text!r}; expected e.g. '2,2;2,3'")
    return [(min(p), max(p)) for p in pairs]


def _verify_conjecture(args: argparse.Namespace) -> bool:
    ks = args.k or [5, 7, 9]
    pairs = _parse_pairs(args.pairs)
    kw = _count_kwargs(args)
    rows = []
    for k in ks:
        _check_k(args, k)
        rows.extend(en.conjecture_table(k, i, j, **kw) for i, j in pairs)
    if args.format == "json":
        print(json.dumps([r.to_json() for r in rows], indent=2, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("k", "i", "j", "x_count", "y_count", "lhs", "rhs", "literal_rhs", "pass"))
        for r in rows:
            writer.writerow((r.k, r.i, r.j, r.x_count, r.y_count, r.lhs, r.rhs, r.literal_rhs, r.holds))
        sys.stdout.write(buf.getvalue())
    else:
        for r in rows:
            status = "PASS" if r.holds else "FAIL"
            if not r.nonzero:
                status += " (empty)"
            extra = "" if r.rhs == r.literal_rhs else f"  [with leading star: {r.literal_rhs}]"
            print(f"{status}  k={r.k} (i,j)=({r.i},{r.j}): |X|={r.x_count} |Y|={r.y_count} "
                  f"{r.lhs} >= {r.rhs}{extra}")
    return all(r.holds for r in rows)


def cmd_verify(args: argparse.Namespace) -> int:
    suite = {
        "chain": _verify_chain,
        "identities": _verify_identities,
        "sliding": _verify_sliding,
        "conjecture": _verify_conjecture,
    }[args.target]
    return EXIT_OK if suite(args) else EXIT_FAIL


def cmd_slide(args: argparse.Namespace) -> int:
    try:
        data = json.loads(args.input.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read {args.input}: {exc}") from None
    config = SlidingConfig.from_json(data)
    violations = validate(config)
    if violations:
        for v in violations:
            print(f"violation at {v.corner}: {v.rule}: {v.detail}", file=sys.stderr)
        raise InvalidInputError(f"{len(violations)} violation(s); configuration not slid")
    out = slide(config)
    args.output.write_text(json.dumps(out.to_json(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


COMMANDS = {
    "coeff": cmd_coeff,
    "cpoly": cmd_cpoly,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "slide": cmd_slide,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    verbose = getattr(args, "verbose", False)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](_settings(args))
    except (InvalidInputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _Failure as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
