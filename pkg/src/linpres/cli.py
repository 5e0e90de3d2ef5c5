"""Command line: analyze instance files, run the fixture suite, emit family instances."""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

from .invariants import HypothesisError
from .poly import PolyParseError
from .report import SchemaError, analyze, dumps, parse_instance, text_summary

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    try:
        with open(args.file) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read instance: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.seed is not None:
        data["seed"] = args.seed
    if args.tasks:
        data["tasks"] = [t.strip() for t in args.tasks.split(",") if t.strip()]
    try:
        spec = parse_instance(data)
        rep = analyze(spec, timing=args.timing)
    except PolyParseError as exc:
        pos = "" if exc.position is None else f" at position {exc.position}"
        print(f"parse error{pos}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HypothesisError as exc:
        print(f"hypothesis violated ({exc.which}): {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except Exception as exc:  # noqa: BLE001 - mapped to the internal-error exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _write(args.out, dumps(rep))
    summary = text_summary(rep)
    if args.out in (None, "-"):
        sys.stderr.write(summary)
    else:
        with open(args.out + ".txt", "w") as fh:
            fh.write(summary)
        sys.stdout.write(summary)
    return EXIT_OK if rep["summary"]["fail"] == 0 else EXIT_FAIL


def cmd_verify_suite(args) -> int:
    from .suite import fixture_corpus, run_fixture

    tallies: dict = {}
    failures = []
    start = time.perf_counter()
    for fx in fixture_corpus(args.level):
        t0 = time.perf_counter()
        results = run_fixture(fx)
        for name, ok in results:
            c = tallies.setdefault(name, Counter())
            c["pass" if ok else "fail"] += 1
            if not ok:
                failures.append(f"{fx.name}: {name}")
        if args.verbose:
            print(f"{fx.name:<28} {time.perf_counter() - t0:6.2f}s", flush=True)
    for name in sorted(tallies):
        c = tallies[name]
        print(f"{name:<40} pass {c['pass']:>3}  fail {c['fail']:>3}")
    for f in failures:
        print(f"FAILED {f}")
    print(f"{sum(c['pass'] for c in tallies.values())} checks passed, {len(failures)} failed "
          f"in {time.perf_counter() - start:.1f}s")
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_family(args) -> int:
    ring = {"field": "rational"}
    if args.kind == "sequence":
        if len(args.args) != 1:
            print("usage: family sequence <letters>", file=sys.stderr)
            return EXIT_PARSE
        inp = {"kind": "sequence", "letters": args.args[0]}
    elif args.kind == "arrangement":
        inp = {"kind": "arrangement", "forms": list(args.args)}
    else:
        # each point as "l1,l2:mult"
        pts = []
        for item in args.args:
            try:
                prime, mult = item.rsplit(":", 1)
                a, b = prime.split(",")
                pts.append({"prime": [a.strip(), b.strip()], "mult": int(mult)})
            except ValueError:
                print(f"bad fat point {item!r}; expected 'form1,form2:mult'", file=sys.stderr)
                return EXIT_PARSE
        inp = {"kind": "fat_points", "points": pts}
    data = {"ring": ring, "input": inp, "tasks": ["all"], "seed": args.seed}
    try:
        parse_instance(data)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _write(args.out, json.dumps(data, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linpres", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one instance file")
    a.add_argument("file")
    a.add_argument("--out", default=None, help="report path (JSON); a .txt summary is written next to it")
    a.add_argument("--tasks", default=None, help="comma separated subset of tasks")
    a.add_argument("--seed", type=int, default=None)
    a.add_argument("--timing", action="store_true", help="include wall time in the report")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-suite", help="run the fixture corpus")
    v.add_argument("--level", choices=["fast", "full"], default="fast")
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify_suite)

    f = sub.add_parser("family", help="write an instance file for a model family")
    f.add_argument("kind", choices=["sequence", "arrangement", "fatpoints"])
    f.add_argument("args", nargs="*")
    f.add_argument("--out", default=None)
    f.add_argument("--seed", type=int, default=0)
    f.set_defaults(func=cmd_family)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
