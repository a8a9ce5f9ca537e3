"""Command-line front end.

    franelab verify identities  [--id ID ...] [--n-max N]
    franelab verify congruences [--id ID ...] [--p-min P] [--p-max P] [--o2-ceiling P]
    franelab series             [--id a1|aa1 ...] [--digits D] [--terms K]

Exit status: 0 all cases pass, 1 a failure or skip, 2 usage error.
Option values resolve as flag > FRANELAB_* environment variable > JSON
config file (``--config``) > built-in default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Sequence

from . import __version__
from .congruences import REGISTRY, Fault, ScanOptions, scan
from .identities import IDENTITIES, run_identity
from .report import Case, VerificationReport
from .series import MAX_DIGITS, SERIES_IDS, eval_series

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

ENV_PREFIX = "FRANELAB_"
FORMATS = ("text", "json", "csv")

# dest -> (type, default); None default means "unset, let the command decide"
OPTIONS: dict[str, tuple[Callable[[str], Any], Any]] = {
    "format": (str, "text"),
    "jobs": (int, 1),
    "seed": (int, 0),
    "n_max": (int, None),
    "p_min": (int, 5),
    "p_max": (int, 1000),
    "o2_ceiling": (int, 500),
    "bernoulli_table_max": (int, 1000),
    "exact_max": (int, 100),
    "digits": (int, 30),
    "terms": (int, None),
    "inject_fault": (str, None),
    "no_timing": (lambda s: str(s).lower() in ("1", "true", "yes"), False),
}


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default=None, help="report format (default text)")
    p.add_argument("--output", "-o", default=None, help="write the report to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default 1)")
    p.add_argument("--config", default=None, help="JSON file of option defaults")
    p.add_argument("--no-timing", action="store_const", const=True, default=None,
                   help="report wall_ms as 0 so JSON output is byte-reproducible")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="franelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run identity or congruence suites")
    vsub = verify.add_subparsers(dest="suite", required=True)

    ident = vsub.add_parser("identities", help="exact identity checks")
    ident.add_argument("--id", action="append", dest="ids", metavar="ID",
                       help=f"identity to run (repeatable); one of: {', '.join(IDENTITIES)}")
    ident.add_argument("--n-max", type=int, default=None, help="override each identity's default window")
    _common(ident)

    cong = vsub.add_parser("congruences", help="scan congruences over a prime range")
    cong.add_argument("--id", action="append", dest="ids", metavar="ID",
                      help=f"check to run (repeatable); one of: {', '.join(sorted(REGISTRY))}")
    cong.add_argument("--p-min", type=int, default=None)
    cong.add_argument("--p-max", type=int, default=None)
    cong.add_argument("--o2-ceiling", type=int, default=None, help="largest prime for O(p^2) checks")
    cong.add_argument("--bernoulli-table-max", type=int, default=None,
                      help="use the Bernoulli table for B_{p-2}(1/3) up to this prime")
    cong.add_argument("--exact-max", type=int, default=None,
                      help="cross-check residue LHS against exact rationals up to this prime")
    cong.add_argument("--seed", type=int, default=None, help="seed for sampled polynomial points")
    cong.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)
    _common(cong)

    ser = sub.add_parser("series", help="evaluate the pi^2/18 series")
    ser.add_argument("--id", action="append", dest="ids", metavar="ID", help=f"one of: {', '.join(SERIES_IDS)}")
    ser.add_argument("--digits", type=int, default=None, help=f"decimal digits, 1..{MAX_DIGITS} (default 30)")
    ser.add_argument("--terms", type=int, default=None, help="terms to sum (default: from the tail bound)")
    _common(ser)
    return parser


def resolve(args: argparse.Namespace, environ: dict[str, str] | None = None) -> dict[str, Any]:
    """Merge flags, environment and config file into one option dict."""
    environ = os.environ if environ is None else environ
    file_cfg: dict[str, Any] = {}
    config_path = getattr(args, "config", None) or environ.get(ENV_PREFIX + "CONFIG")
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {config_path}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError(f"config {config_path} must hold a JSON object")
        unknown = set(file_cfg) - set(OPTIONS) - {"ids"}
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out: dict[str, Any] = {}
    for dest, (conv, default) in OPTIONS.items():
        flag = getattr(args, dest, None)
        env = environ.get(ENV_PREFIX + dest.upper())
        try:
            if flag is not None:
                out[dest] = flag
            elif env is not None:
                out[dest] = conv(env)
            elif dest in file_cfg:
                out[dest] = conv(file_cfg[dest]) if isinstance(file_cfg[dest], str) else file_cfg[dest]
            else:
                out[dest] = default
        except ValueError:
            raise UsageError(f"bad value for {dest}") from None
    out["ids"] = args.ids if args.ids else file_cfg.get("ids")
    if out["format"] not in FORMATS:
        raise UsageError(f"format must be one of {', '.join(FORMATS)}")
    if out["jobs"] < 1:
        raise UsageError("--jobs must be >= 1")
    return out


def _pool_map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _identity_task(item: tuple[str, int | None]) -> list[Case]:
    cid, n_max = item
    return run_identity(cid, n_max).cases


def cmd_identities(opts: dict[str, Any]) -> VerificationReport:
    ids = opts["ids"] or list(IDENTITIES)
    bad = [i for i in ids if i not in IDENTITIES]
    if bad:
        raise UsageError(f"unknown identity id {bad[0]!r}; valid ids: {', '.join(IDENTITIES)}")
    n_max = opts["n_max"]
    if n_max is not None and n_max < 0:
        raise UsageError("--n-max must be >= 0")
    ids = sorted(set(ids))
    chunks = _pool_map(_identity_task, [(i, n_max) for i in ids], opts["jobs"])
    config = {"suite": "identities", "ids": ids, "n_max": n_max}
    return VerificationReport(config=config, cases=[c for chunk in chunks for c in chunk])


def cmd_congruences(opts: dict[str, Any]) -> VerificationReport:
    ids = opts["ids"]
    if ids is not None:
        bad = [i for i in ids if i not in REGISTRY]
        if bad:
            raise UsageError(f"unknown check id {bad[0]!r}; valid ids: {', '.join(sorted(REGISTRY))}")
    p_min, p_max = opts["p_min"], opts["p_max"]
    if p_min > p_max:
        raise UsageError(f"--p-min {p_min} exceeds --p-max {p_max}")
    faults: tuple[Fault, ...] = ()
    if opts["inject_fault"]:
        try:
            faults = tuple(Fault.parse(s) for s in opts["inject_fault"].split(","))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    options = ScanOptions(
        o2_ceiling=opts["o2_ceiling"],
        bernoulli_table_max=opts["bernoulli_table_max"],
        exact_max=opts["exact_max"],
        seed=opts["seed"],
        faults=faults,
    )
    report = scan(ids, p_min, p_max, options=options, jobs=opts["jobs"])
    report.config = {"suite": "congruences", **report.config}
    return report


def _series_task(item: tuple[str, int | None, int]) -> Case:
    sid, terms, digits = item
    return eval_series(sid, terms, digits).to_case()


def cmd_series(opts: dict[str, Any]) -> VerificationReport:
    ids = opts["ids"] or list(SERIES_IDS)
    bad = [i for i in ids if i not in SERIES_IDS]
    if bad:
        raise UsageError(f"unknown series id {bad[0]!r}; valid ids: {', '.join(SERIES_IDS)}")
    digits, terms = opts["digits"], opts["terms"]
    if not 1 <= digits <= MAX_DIGITS:
        raise UsageError(f"--digits must lie in [1, {MAX_DIGITS}]")
    if terms is not None and terms < 1:
        raise UsageError("--terms must be >= 1")
    ids = sorted(set(ids))
    cases = _pool_map(_series_task, [(i, terms, digits) for i in ids], opts["jobs"])
    config = {"suite": "series", "ids": ids, "digits": digits, "terms": terms}
    report = VerificationReport(config=config, cases=cases)
    for c in cases:
        report.notes.append(
            f"{c.id}: partial sum {c.lhs} after {c.params['terms']} terms, pi^2/18 = {c.rhs}, "
            f"deviation <= {c.params['deviation']}, tail bound {c.params['tail_bound']}"
        )
    return report


def render(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    return report.to_text()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        opts = resolve(args)
        start = time.perf_counter()
        if args.command == "series":
            report = cmd_series(opts)
        elif args.suite == "identities":
            report = cmd_identities(opts)
        else:
            report = cmd_congruences(opts)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"franelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.wall_ms = 0 if opts["no_timing"] else round(elapsed * 1000)
    text = render(report, opts["format"])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
