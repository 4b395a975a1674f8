"""Command-line front end: ``liectrl analyze|sweep|verify-relations|examples``."""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from typing import Optional, Sequence

from . import decomp
from .analysis import analyze, emit_dot
from .catalog import CATALOG, run_catalog
from .lie_core import bracket, bracket_structure, omega, standard_indices
from .specfile import BACKENDS, SpecError, load_spec
from .sweep import SWEEP_KINDS, run_sweep, subset_count
from .report import render_text

EXIT_CONTROLLABLE, EXIT_UNCONTROLLABLE, EXIT_SPEC_ERROR, EXIT_MISMATCH = 0, 1, 2, 3

SWEEP_MAX_N = 6
SWEEP_MAX_FORMATION_N = 5


def _backends(text: Optional[str]):
    if text is None:
        return None
    items = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in BACKENDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown backend(s) {bad}; choose from {','.join(BACKENDS)}")
    return items


def _write(path: str, text: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_analyze(args) -> int:
    try:
        spec = load_spec(args.spec, allow_large=args.allow_large)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    except OSError as exc:
        print(f"spec error: cannot read {args.spec}: {exc.strerror}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    report = analyze(spec, backends=args.backends, trace_closure=args.trace_closure or None,
                     max_witnesses=args.max_witnesses, timing=args.timing)
    sys.stdout.write(render_text(report))
    if args.json:
        _write(args.json, report.to_json())
    if args.dot:
        if report.graph is None:
            print("note: no DOT output without the graph backend", file=sys.stderr)
        else:
            for name, text in emit_dot(spec).items():
                _write(os.path.join(args.dot, name), text)
    return report.exit_code()


def cmd_sweep(args) -> int:
    kind = args.kind
    size = args.sweep_n
    if kind in ("standard_son", "formation"):
        if size is None:
            print("sweep error: --sweep-n is required for this kind", file=sys.stderr)
            return EXIT_SPEC_ERROR
        cap = SWEEP_MAX_N if kind == "standard_son" else SWEEP_MAX_FORMATION_N
        if size > cap and not args.allow_large:
            print(f"sweep error: size {size} exceeds the cap {cap} ({subset_count(kind, size)} subsets);"
                  " pass --allow-large", file=sys.stderr)
            return EXIT_SPEC_ERROR
        if size < (2 if kind == "formation" else 1):
            print("sweep error: size too small", file=sys.stderr)
            return EXIT_SPEC_ERROR
    result = run_sweep(kind, size or 0)
    backends = sorted(result.outcomes[0].verdicts)
    print(f"sweep {kind}" + (f" size {size}" if size else "") + f": {result.total} subsets,"
          f" backends {','.join(backends)}")
    print(f"controllable (larc): {len(result.controllable())}")
    print(f"smallest controllable subset: {result.min_controllable_size()}")
    bad = result.mismatches
    print(f"mismatches: {len(bad)}")
    if kind == "sl3c":
        for d in decomp.sl3_counterexamples():
            print(f"  counterexample {d.kind}: {d.describe()}")
    else:
        for o in bad[:20]:
            print(f"  subset mask {o.mask}: {o.verdicts} rank {o.rank} {o.detail}")
    if args.json:
        data = {"kind": kind, "size": size, "total": result.total,
                "controllable": len(result.controllable()),
                "mismatches": [{"mask": o.mask, "verdicts": o.verdicts, "rank": o.rank,
                                "detail": o.detail} for o in bad]}
        _write(args.json, json.dumps(data, indent=2, sort_keys=True) + "\n")
    return EXIT_MISMATCH if bad else 0


def bracket_table_mismatches(n: int) -> int:
    bad = 0
    for p, q in itertools.product(standard_indices(n), repeat=2):
        got = bracket(omega(n, *p), omega(n, *q))
        s = bracket_structure(n, p, q)
        want = omega(n, *s[1]) * s[0] if s else omega(n, 1, 2) * 0
        bad += got != want
    return bad


def cmd_verify(args) -> int:
    ok = True
    bad = bracket_table_mismatches(args.n)
    print(f"{'PASS' if not bad else 'FAIL'} standard-basis bracket formula, n={args.n}: {bad} mismatches")
    ok &= not bad
    split = decomp.verify_split_relations()
    print(f"{'PASS' if split else 'FAIL'} split so(4) bracket table (15 pairs)")
    ok &= split
    rel = decomp.verify_formation_relations(args.formation_n)
    flag = " (partial: some identities need five agents)" if rel.partial else ""
    print(f"{'PASS' if rel.holds else 'FAIL'} formation bracket identities, N={args.formation_n}:"
          f" {rel.checked} instances{flag}")
    for f in rel.failures[:20]:
        print(f"  failed {f}")
    ok &= rel.holds
    grading = decomp.formation_grading_check(args.formation_n)
    print(f"{'PASS' if grading else 'FAIL'} formation grading, N={args.formation_n}")
    ok &= grading
    return 0 if ok else 1


def cmd_examples(args) -> int:
    results = run_catalog()
    for name, claim, ok in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {claim}")
    if args.write:
        for ex in CATALOG:
            _write(os.path.join(args.write, f"{ex.name}.json"), json.dumps(ex.spec, indent=2) + "\n")
    return 0 if all(ok for _, _, ok in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liectrl", description="Controllability of bilinear systems on matrix Lie groups")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one system spec")
    a.add_argument("--spec", required=True, help="path to a JSON system spec")
    a.add_argument("--backends", type=_backends, help="comma list from larc,cycle,graph")
    a.add_argument("--dot", metavar="DIR", help="write the associated graph as DOT into DIR")
    a.add_argument("--json", metavar="PATH", help="write the JSON report to PATH")
    a.add_argument("--trace-closure", action="store_true", help="include per-step closure edges")
    a.add_argument("--max-witnesses", type=int, metavar="K", help="list at most K witness subsets")
    a.add_argument("--timing", action="store_true", help="record backend timings in the report")
    a.add_argument("--allow-large", action="store_true", help="lift the n <= 12 cap")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="compare backends over every generator subset")
    s.add_argument("--kind", choices=SWEEP_KINDS, default="standard_son")
    s.add_argument("--sweep-n", type=int, metavar="N", help="n for so(n), N agents for formation")
    s.add_argument("--json", metavar="PATH", help="write a JSON summary to PATH")
    s.add_argument("--allow-large", action="store_true", help="lift the n <= 6 / N <= 5 caps")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify-relations", help="check the bracket tables exactly")
    v.add_argument("--n", type=int, default=6, help="so(n) for the standard-basis formula")
    v.add_argument("--formation-n", type=int, default=5, help="agent count for the formation identities")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("examples", help="re-run the worked examples as golden checks")
    e.add_argument("--write", metavar="DIR", help="also write each example's spec JSON into DIR")
    e.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
