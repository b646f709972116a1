"""Command-line front end: ``lrc build | analyze | recover | reproduce | families``.

Exit codes: 0 success, 1 invalid input, 2 construction or recovery
failure, 3 reproduction mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import DEFAULT_EXACT_BUDGET, DEFAULT_LOW_WEIGHT, parity_check, report
from .config import FAMILIES, ConfigError, build_from_config, builtin_config, builtin_names, load_config
from .engine import ConstructionError, RecoveryError, read_code_file, recover_word, write_code_file
from .linalg import matmul

EXIT_OK, EXIT_INPUT, EXIT_CONSTRUCTION, EXIT_MISMATCH = 0, 1, 2, 3


def _load(target: str):
    path = Path(target)
    if path.is_file():
        return load_config(path)
    if target in builtin_names():
        return builtin_config(target)
    if path.suffix == ".cfg" and path.stem in builtin_names():
        return builtin_config(path.stem)
    raise ConfigError(f"{target}: no such file or built-in configuration")


def _print_report(rep, as_json: bool) -> None:
    print(rep.to_json() if as_json else rep.to_text())


def cmd_build(args) -> int:
    cfg = _load(args.config)
    overrides = {k: v for k, v in (("t", args.t), ("m", args.m)) if v is not None}
    try:
        code = build_from_config(cfg, force=args.force, **overrides)
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        for f in exc.failures:
            print(f"failing_set = {f}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    out = Path(args.output) if args.output else Path(Path(cfg.name).stem + ".code")
    write_code_file(code, out)
    rep = report(code, exact_budget=args.exact_budget, low_weight=args.low_weight)
    _print_report(rep, args.json)
    print(f"code_file = {out}", file=sys.stderr)
    if not rep.locality_ok or code.designed_distance < 1:
        return EXIT_CONSTRUCTION
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        code = read_code_file(args.code_file)
    except (OSError, ValueError) as exc:
        print(f"cannot read code file: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = report(code, exact_budget=args.exact_budget, low_weight=args.low_weight)
    _print_report(rep, args.json)
    return EXIT_OK if rep.locality_ok else EXIT_CONSTRUCTION


def _parse_word(code, tokens):
    F = code.field
    if len(tokens) == 1 and " " in tokens[0].strip():
        tokens = tokens[0].split()
    if len(tokens) != code.n:
        raise ValueError(f"word has {len(tokens)} symbols, the code has length {code.n}")
    out = []
    for tok in tokens:
        out.append(None if tok == "?" else F.parse(tok))
    return out


def cmd_recover(args) -> int:
    try:
        code = read_code_file(args.code_file)
        word = _parse_word(code, args.word)
    except (OSError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    part = None if args.partition is None else args.partition - 1
    if part is not None and not 0 <= part < len(code.partitions):
        print(f"the code has {len(code.partitions)} partition(s)", file=sys.stderr)
        return EXIT_INPUT
    try:
        filled = recover_word(code, word, part)
    except RecoveryError as exc:
        print(f"unrecoverable: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    H = parity_check(code)
    if H.size and np.any(matmul(code.field, H, np.array(filled, dtype=np.int64))):
        print("filled word fails the parity check; the input is not a codeword with erasures", file=sys.stderr)
        return EXIT_CONSTRUCTION
    print(" ".join(code.field.format(v) for v in filled))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import FAIL, REGISTRY, reproduce, reproduce_all

    if args.example == "all":
        results = reproduce_all()
    elif args.example in REGISTRY:
        results = [reproduce(args.example)]
    else:
        print(f"unknown example id {args.example!r}; known: {', '.join(REGISTRY)}", file=sys.stderr)
        return EXIT_INPUT
    for res in results:
        lines = res.lines() if args.verbose or res.status != "PASS" else res.lines()[:1]
        print("\n".join(lines))
    summary = {}
    for res in results:
        summary[res.status] = summary.get(res.status, 0) + 1
    print("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(summary.items())))
    return EXIT_MISMATCH if any(r.status == FAIL for r in results) else EXIT_OK


def cmd_families(args) -> int:
    print("families:")
    for f in FAMILIES:
        print(f"  {f}")
    print("built-in configurations:")
    for name in builtin_names():
        cfg = builtin_config(name)
        print(f"  {name:<18} {cfg.family}")
    return EXIT_OK


def _add_policy(p) -> None:
    p.add_argument("--exact-budget", type=int, default=DEFAULT_EXACT_BUDGET,
                   help="largest q^k swept exhaustively (default 2^24)")
    p.add_argument("--low-weight", type=int, default=DEFAULT_LOW_WEIGHT,
                   help="largest weight searched when the sweep is too large; 0 disables (default 4)")
    p.add_argument("--json", action="store_true", help="print the report as JSON")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrc", description="Locally recoverable codes from covers of curves and surfaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a code from a configuration file or built-in name")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="code file to write (default: <config>.code)")
    p.add_argument("--t", type=int, help="override t")
    p.add_argument("--m", type=int, help="override the surface tier degree m")
    p.add_argument("--force", action="store_true", help="build even if the designed distance is not positive")
    _add_policy(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="report on a code file")
    p.add_argument("code_file")
    _add_policy(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("recover", help="fill erased symbols ('?') of a codeword")
    p.add_argument("code_file")
    p.add_argument("word", nargs="+", help="n symbols, '?' marks an erasure")
    p.add_argument("--partition", type=int, choices=(1, 2), help="repair only through this helper partition")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("reproduce", help="check reference examples ('all' for every one)")
    p.add_argument("example")
    p.add_argument("-v", "--verbose", action="store_true", help="show every check")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("families", help="list families and built-in configurations")
    p.set_defaults(func=cmd_families)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
