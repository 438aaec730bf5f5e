"""Command line: eval, verify, pims, decompose.

Exit codes: 0 all checks pass, 1 a check produced a counterexample,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .cuts import IsolatedSubgroup, pims_over
from .domination import decompose_exponential
from .fields import extend_valuation
from .ordered import NATURALS, TWO_CHAIN
from .reports import Report, sub_seed
from .specs import SpecError, build, parse_element, value_record, value_text
from .suites import SUITES, run_suite
from . import core

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "QUASIVAL_SEED"


class UsageError(Exception):
    pass


def _seed(value: str | None) -> int:
    raw = value if value is not None else os.environ.get(SEED_ENV, "0")
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(f"seed must be an integer, got {raw!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise UsageError("seed must fit in 64 unsigned bits")
    return seed


def _load_spec(args) -> dict:
    if getattr(args, "record", None):
        text = args.record
    elif getattr(args, "spec", None):
        try:
            with open(args.spec) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}") from None
    else:
        raise UsageError("a spec is required (--spec FILE or --record JSON)")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"spec is not valid JSON: {exc}") from None


# ---- output -------------------------------------------------------------------

def _emit(fmt: str, payload: dict, rows: list[dict], columns: list[str], lines: list[str]):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for row in rows:
            w.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        print("\n".join(lines))


REPORT_COLUMNS = ["suite", "check", "passed", "pairs", "violations", "seed", "counterexample"]


def _report_rows(suite: str, reports: list[Report]) -> list[dict]:
    rows = []
    for r in reports:
        rec = r.to_record()
        rows.append({"suite": suite, **rec, "counterexample": rec.get("counterexample", "")})
    return rows


# ---- commands ------------------------------------------------------------------

def cmd_eval(args) -> int:
    built = build(_load_spec(args))
    if not args.elements:
        raise UsageError("no elements given")
    rows, lines = [], []
    for text in args.elements:
        x = parse_element(text, built.context)
        try:
            val = built.qv(x)
        except ValueError as exc:
            raise SpecError(f"{text}: {exc}") from None
        rows.append({"element": text, "value": value_text(val), "record": value_record(val)})
        lines.append(f"{text}\t{value_text(val)}")
    payload = {"command": "eval", "qv": built.qv.name,
               "results": [{"element": r["element"], "value": r["record"]} for r in rows]}
    _emit(args.format, payload, rows, ["element", "value"], lines)
    return EXIT_OK


def _spec_reports(args, seed: int) -> list[Report]:
    """Checks on a user-supplied quasi-valuation."""
    built = build(_load_spec(args))
    w, s = built.qv, built.sampler
    if args.suite == "axioms":
        return [core.check_axioms(w, s, args.samples, sub_seed(seed, "axioms", w.name))]
    if args.suite == "exponential":
        return [core.check_exponential(w, s, min(args.samples, 500), 6,
                                       sub_seed(seed, "exp", w.name))]
    raise UsageError(f"--spec is supported for the axioms and exponential suites only")


def cmd_verify(args) -> int:
    seed = _seed(args.seed)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    tag, _ = SUITES[args.suite]
    reports = _spec_reports(args, seed) if (args.spec or args.record) else \
        run_suite(args.suite, seed, args.samples)
    passed = all(r.passed for r in reports)
    payload = {"command": "verify", "suite": args.suite, "tag": tag, "seed": seed,
               "samples": args.samples, "passed": passed,
               "reports": [r.to_record() for r in reports]}
    lines = [f"suite {args.suite} ({tag}) seed={seed} samples={args.samples}"]
    lines += [r.line() for r in reports]
    lines.append("PASS" if passed else "FAIL")
    _emit(args.format, payload, _report_rows(args.suite, reports), REPORT_COLUMNS, lines)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_pims(args) -> int:
    if args.monoid == "cut":
        if args.rank < 1 or not 0 <= args.h_level <= args.rank:
            raise UsageError("need rank >= 1 and 0 <= h-level <= rank")
        listing = pims_over(IsolatedSubgroup(args.rank, args.h_level))
        tag = "hull and closure of H^{>=0} (equal for H = {0})"
    else:
        if args.h_level not in (0, 1):
            raise UsageError("Z x chain has isolated subgroups {0} and Z (levels 0, 1)")
        chain = TWO_CHAIN if args.chain == "two" else NATURALS
        listing = pims_over(IsolatedSubgroup(1, args.h_level), "lexmax", bound=args.bound,
                            chain=chain)
        tag = "{(0,i)}_{i<=j} over {0}" if args.h_level == 0 else "whole M>=0"
    rows = [{"index": i, "pim": str(p)} for i, p in enumerate(listing.pims)]
    payload = {"command": "pims", "monoid": args.monoid, "h_level": args.h_level,
               "count": len(listing), "truncated": listing.truncated, "tag": tag,
               "pims": [r["pim"] for r in rows]}
    lines = [f"{r['index']}\t{r['pim']}" for r in rows]
    lines.append(f"count={len(listing)} truncated={str(listing.truncated).lower()}")
    _emit(args.format, payload, rows, ["index", "pim"], lines)
    return EXIT_OK


def cmd_decompose(args) -> int:
    seed = _seed(args.seed)
    built = build(_load_spec(args))
    ctx = built.context
    if ctx.field != "Q_sqrt":
        raise UsageError("decompose needs a quasi-valuation on a quadratic field")
    cands = extend_valuation(ctx.p, ctx.d)
    dec = decompose_exponential(built.qv, cands, built.sampler, min(args.samples, 500),
                                sub_seed(seed, "decompose", built.qv.name))
    rep = dec.report
    payload = {"command": "decompose", "qv": built.qv.name, "seed": seed,
               "members": dec.names, "report": rep.to_record()}
    lines = [rep.line(), "members: " + (", ".join(dec.names) or "-")]
    _emit(args.format, payload, _report_rows("decompose", [rep]), REPORT_COLUMNS, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", default=None,
                        help=f"master seed (default: ${SEED_ENV} or 0)")
    common.add_argument("--samples", type=int, default=1000, help="sample count (default 1000)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    parser = argparse.ArgumentParser(prog="quasival",
                                     description="Exact quasi-valuation computations and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a quasi-valuation")
    p.add_argument("--spec", help="JSON spec file")
    p.add_argument("--record", help="JSON spec given inline")
    p.add_argument("elements", nargs="*", help="elements such as 3/2, 2+i, 5*sqrt(5), t^2*3")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--spec", help="check this quasi-valuation instead (axioms, exponential)")
    p.add_argument("--record", help="JSON spec given inline")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pims", parents=[common], help="list PIMs over an isolated subgroup")
    p.add_argument("--monoid", choices=("cut", "lexmax"), default="cut")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--h-level", type=int, default=0)
    p.add_argument("--bound", type=int, default=5, help="enumeration bound J for Z x (N, max)")
    p.add_argument("--chain", choices=("naturals", "two"), default="naturals")
    p.set_defaults(func=cmd_pims)

    p = sub.add_parser("decompose", parents=[common],
                       help="write a quasi-valuation as a minimum of extensions")
    p.add_argument("--spec", help="JSON spec file")
    p.add_argument("--record", help="JSON spec given inline")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command != "verify" and args.command != "decompose":
            _seed(args.seed)
        return args.func(args)
    except (UsageError, SpecError) as exc:
        print(f"quasival: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
