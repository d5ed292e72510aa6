"""Command-line interface: ``linksgould <command> ...`` or ``python -m linksgould``.

Exit codes: 0 success, 1 input error, 2 engine assertion failure.
``LINKSGOULD_JOBS`` sets the default parallelism of ``batch``.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from .analysis import emit_report, load_results, run_batch
from .braids import (BraidError, conjugate, parse_braid_word, reflect_braid,
                     render_braid_word, stabilize)
from .engine import EngineError, evaluate_invariant
from .knots import InputError, read_pd_file
from .laurent import PolyParseError, serialize_poly, substitute_inverse
from .representation import (RepresentationError, bundled_representation,
                             validate_representation)
from .vogel import VogelError, pd_to_braid

EXIT_OK, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2


def cmd_eval(args) -> int:
    b = parse_braid_word(args.braid, args.strands)
    rep = bundled_representation("LG21" if args.invariant == "lg21" else "LG11")
    f = evaluate_invariant(b, rep, args.method)
    print(serialize_poly(f))
    return EXIT_OK


def cmd_batch(args) -> int:
    doc = run_batch(args.input, args.invariant, args.jobs, args.out)
    errors = sum("error" in r for r in doc["records"])
    print(f"{len(doc['records'])} records, {errors} errors -> {args.out}")
    return EXIT_OK


def cmd_cluster(args) -> int:
    text, report = emit_report(load_results(args.results), "cliques")
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_symmetry(args) -> int:
    text, report = emit_report(load_results(args.results), "symmetry")
    if args.json:
        print(json.dumps(report, indent=1, sort_keys=True))
    else:
        sys.stdout.write(text)
    return EXIT_OK if not report["p_palindromic_violations"] else EXIT_ENGINE


def cmd_pd2braid(args) -> int:
    for rec in read_pd_file(args.input):
        b = pd_to_braid(rec.pd_code)
        print(f"{rec.name}\t{b.strands}\t{render_braid_word(b)}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    failed = 0

    def report(name, ok, detail=""):
        nonlocal failed
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))

    for label in ("LG21", "LG11"):
        rep = validate_representation(bundled_representation(label))
        report(f"{label} tensor identities", rep.ok, "" if rep.ok else str(rep))
    rng = random.Random(args.seed)
    rep = bundled_representation("LG21")
    bad = []
    for _ in range(args.count):
        s = rng.randint(2, 3)
        word = [rng.choice([1, -1]) * rng.randint(1, s - 1) for _ in range(rng.randint(1, 8))]
        b = parse_braid_word(",".join(map(str, word)), s)
        f = evaluate_invariant(b, rep)
        w = tuple(rng.choice([1, -1]) * rng.randint(1, s - 1) for _ in range(3))
        if evaluate_invariant(conjugate(b, w), rep) != f:
            bad.append(f"conjugation {b}")
        if evaluate_invariant(stabilize(b, rng.choice([1, -1])), rep) != f:
            bad.append(f"stabilization {b}")
        if evaluate_invariant(reflect_braid(b), rep) != substitute_inverse(f, "q"):
            bad.append(f"reflection {b}")
    report(f"Markov and reflection properties on {args.count} random braids", not bad, "; ".join(bad[:3]))
    return EXIT_OK if not failed else EXIT_ENGINE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linksgould", description="Links-Gould invariants of knots")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress and timings")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one braid closure")
    p.add_argument("--braid", required=True, help='comma-separated letters, e.g. "1,1,1"')
    p.add_argument("--strands", type=int)
    p.add_argument("--invariant", choices=("lg21", "lg11"), default="lg21")
    p.add_argument("--method", choices=("auto", "exact", "modular"), default="auto")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("batch", help="evaluate a knot table")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None, help="default: $LINKSGOULD_JOBS or 1")
    p.add_argument("--invariant", choices=("lg21", "lg11"), default="lg21")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("cluster", help="group results into LG-equivalence cliques")
    p.add_argument("--results", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("symmetry", help="list knots whose chirality LG does not detect")
    p.add_argument("--results", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("pd2braid", help="convert a PD file to knot table rows")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_pd2braid)

    p = sub.add_parser("selftest", help="validate representations and run quick property checks")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (EngineError, VogelError, RepresentationError) as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except (InputError, BraidError, PolyParseError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
