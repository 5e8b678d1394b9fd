"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 unsupported ring or cap
exceeded, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from pathlib import Path

from .batteries import BATTERIES, run_battery
from .corpus import dump_corpus, load_corpus, load_ring_spec
from .ideals import UnsupportedRing, solve_right_inverse
from .report import (
    Record,
    Report,
    verify_report,
    w_integer_lower,
    w_irreducible_row,
    w_reductions,
    w_right_inverse,
    w_stable_rank,
)
from .rings import EnumerationError, RingError, ring_from_spec
from .stablerank import WitnessError, stable_range_counterexample
from .transforms import InvariantViolation, PipelineTrace, theorem7_pipeline
from .zsolvers import (
    M2Z,
    Z,
    corner_z_reducer,
    e11_certificate,
    m2z_unimodular,
    random_m2z_triples,
    z_integer_reducer,
    z_sr_lower_witness,
)

EXIT_PASS, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_BAD_INPUT = 0, 1, 2, 3


def _emit(report: Report, args) -> int:
    if args.out:
        report.write(args.out, args.format)
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_sr(args) -> int:
    spec = load_ring_spec(args.ring)
    A = ring_from_spec(spec)
    if not A.finite:
        raise EnumerationError(f"{A!r} is infinite: enumeration unsupported")
    rec = Record("sr", args.ring, {"max_n": args.max_n})
    t0 = time.perf_counter()
    value = None
    for n in range(1, args.max_n + 1):
        row = stable_range_counterexample(A, n)
        if row is None:
            value = n
            break
        rec.witnesses.append(w_irreducible_row(row, solve_right_inverse(list(row))))
        print(f"n={n}: irreducible row {[e.literal for e in row]}")
    rec.witnesses.append(w_stable_rank(A, value, args.max_n))
    rec.params["sr"] = value
    rec.elapsed = time.perf_counter() - t0
    print(f"sr = {value if value is not None else f'> {args.max_n}'}")
    report = Report(f"sr {args.ring}", records=[rec])
    _emit(report, args)
    return EXIT_PASS


def cmd_check(args) -> int:
    entries = load_corpus(args.corpus)
    report = run_battery(args.battery, entries, jobs=args.jobs)
    for r in report.records:
        if not r.passed:
            print(f"FAIL {r.check} {r.ring} {json.dumps(r.params, sort_keys=True)}: {r.message}")
    n_ok = sum(r.passed for r in report.records)
    print(f"{args.battery}: {n_ok}/{len(report.records)} checks passed")
    return _emit(report, args)


def _z_triples(rng: random.Random, count: int, magnitude: int):
    out = []
    while len(out) < count:
        t = tuple(rng.randint(-magnitude, magnitude) for _ in range(3))
        if math.gcd(*t) == 1:
            out.append(t)
    return out


def cmd_demo(args) -> int:
    report = Report(f"demo {args.name}", seed=args.seed)
    if args.count < 0:
        raise ValueError("--count must be non-negative")
    if args.name == "z-reduce":
        magnitude = args.magnitude or 10**6
        red = z_integer_reducer()
        rec = Record("z-reduce", "integers", {"count": args.count, "magnitude": magnitude})
        t0 = time.perf_counter()
        items = []
        for t in _z_triples(random.Random(args.seed), args.count, magnitude):
            row = [Z(v) for v in t]
            items.append((row, red.reduce(row)))
        if items:
            rec.witnesses.append(w_reductions(Z, items))
        rec.witnesses.append(w_integer_lower(z_sr_lower_witness()))
        rec.elapsed = time.perf_counter() - t0
        report.records.append(rec)
        verified = len(items)
    else:
        magnitude = args.magnitude or 50
        trace = PipelineTrace()
        red = theorem7_pipeline(corner_z_reducer(), e11_certificate(), trace)
        if args.trace:
            print("pipeline:", " -> ".join(s["step"] for s in trace.steps))
        verified = 0
        for i, row in enumerate(random_m2z_triples(args.seed, args.count, magnitude)):
            rec = Record("m2z-reduce", "m2z", {"index": i, "magnitude": magnitude})
            t0 = time.perf_counter()
            steps: list = []
            r = red.reduce(row, steps if args.trace else None)
            reduced = [a + row[2] * c for a, c in zip(row[:2], r.c)]
            ok, cert = m2z_unimodular(reduced)
            rec.elapsed = time.perf_counter() - t0
            rec.witnesses.append(w_reductions(M2Z, [(row, r)]))
            if ok:
                rec.witnesses.append(w_right_inverse(reduced, cert))
                verified += 1
            else:
                rec.fail("reduced row is not unimodular by SNF")
            if args.trace:
                rec.params["trace"] = steps
                print(f"#{i}: " + " -> ".join(s["step"] for s in steps))
            report.records.append(rec)
    print(f"{args.name}: {verified}/{args.count} verified")
    return _emit(report, args)


def cmd_verify_report(args) -> int:
    status = EXIT_PASS
    for path in args.reports:
        res = verify_report(Report.load(path))
        for check, ring, what in res.failures:
            print(f"FAIL {path}: {check} {ring}: {what}")
        print(f"{path}: {res.checked} witnesses checked, {len(res.failures)} failures")
        if not res.ok:
            status = EXIT_FAIL
    return status


def cmd_corpus(args) -> int:
    text = dump_corpus(load_corpus(args.corpus))
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cornerrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--out", help="write the report to this file")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sr", help="stable rank of a finite ring")
    p.add_argument("--ring", required=True, help="ring spec: JSON file, inline JSON or built-in name")
    p.add_argument("--max-n", type=int, default=3)
    output_flags(p)
    p.set_defaults(func=cmd_sr)

    p = sub.add_parser("check", help="run a check battery over a corpus")
    p.add_argument("battery", choices=sorted(BATTERIES))
    p.add_argument("--corpus", help="corpus JSON file (default: built-in corpus)")
    p.add_argument("--jobs", type=int, default=1)
    output_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("demo", help="integer reducer demos")
    p.add_argument("name", choices=("z-reduce", "m2z-reduce"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--magnitude", type=int, default=None)
    p.add_argument("--trace", action="store_true", help="print and record transform traces")
    output_flags(p)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("verify-report", help="re-verify every witness in report files")
    p.add_argument("reports", nargs="+")
    p.set_defaults(func=cmd_verify_report)

    p = sub.add_parser("corpus", help="print or save a corpus (built-in by default)")
    p.add_argument("--corpus")
    p.add_argument("--out")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EnumerationError, UnsupportedRing) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (WitnessError, InvariantViolation) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (RingError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
