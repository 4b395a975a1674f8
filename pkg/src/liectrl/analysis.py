"""Run the applicable controllability backends on a spec and cross-check them."""

from __future__ import annotations

import re
import time
from typing import Optional, Sequence

from . import decomp
from .equivalence import (CrossCheckError, enumerate_cycle_witnesses, forest_to_submanifold,
                          matrix_tree_count)
from .lie_core import lie_rank, so_dim
from .liegraph import (SimpleGraph, closure_equals_lie_span_check, components, tau, to_dot,
                       triangular_closure)
from .permgroup import cycle_controllable, format_cycles
from .report import AnalysisReport
from .specfile import APPLICABLE, BACKENDS, SystemSpec


def _larc(spec: SystemSpec, field: Optional[str]) -> dict:
    gens = spec.generators
    kind = spec.basis_kind
    if kind == "sl3c" or spec.group["type"] == "SL3C":
        field = field or "complex"
        full = decomp.SL3_FULL_DIM[field]
    elif kind == "formation":
        field = field or "real"
        full = decomp.formation_full_rank(gens.dim)
        if field != "real":
            full = lie_rank(decomp.FormationGenerators(SimpleGraph.complete(gens.dim)).generator_set(), field)
    else:
        field = field or "real"
        full = so_dim(gens.dim)
    rank = lie_rank(gens, field)
    return {"controllable": rank == full, "rank": rank, "full_dim": full, "field": field}


def spec_graph(spec: SystemSpec) -> SimpleGraph:
    """The graph the connectivity test runs on, for kinds that have one."""
    kind = spec.basis_kind
    if kind == "standard_son":
        return tau(spec.generators)
    if kind == "son_split":
        return decomp.split_graph(spec.generators)
    if kind == "formation":
        return decomp.formation_graph(spec.generators)
    raise ValueError(f"no graph for basis_kind {kind!r}")


def _graph(spec: SystemSpec, trace: bool) -> dict:
    g = spec_graph(spec)
    closed, tr = triangular_closure(g)
    kind = spec.basis_kind
    if kind == "son_split":
        verdict = decomp.split_controllable(spec.generators)
    elif kind == "formation":
        verdict = decomp.formation_controllable(g)
    else:
        verdict = len(components(g)) == 1
    return {
        "controllable": verdict,
        "vertices": g.n,
        "edges": [list(e) for e in g.sorted_edges()],
        "components": [sorted(c) for c in components(g)],
        "closure_steps": tr.steps,
        "closure_added": [[list(e) for e in sorted(a)] for a in tr.added] if trace else [],
    }


def _witness(labels, perm) -> dict:
    return {"labels": list(labels), "cycle": perm if isinstance(perm, str) else format_cycles(perm)}


def _cycle(spec: SystemSpec, max_witnesses: int) -> dict:
    gens = spec.generators
    kind = spec.basis_kind
    if kind == "standard_son":
        ok, w = cycle_controllable(gens)
        witnesses, count = [], 0
        if ok:
            count = matrix_tree_count(tau(gens))
            witnesses = [_witness(x.labels, x.permutation)
                         for x in enumerate_cycle_witnesses(gens, max_witnesses)]
        return {"controllable": ok, "witness": _witness(w.labels, w.permutation) if ok else None,
                "witnesses": witnesses, "witness_count": count,
                "truncated": count > len(witnesses)}
    if kind == "son_split":
        ok, labels, perm = decomp.split_cycle_witness(gens)
    else:
        ok, labels, perm = decomp.sl3_cycle_controllable(gens)
    w = _witness(labels, str(perm)) if ok else None
    return {"controllable": ok, "witness": w, "witnesses": [w] if w else [],
            "witness_count": None, "truncated": False}


def analyze(spec: SystemSpec, backends: Optional[Sequence[str]] = None,
            trace_closure: Optional[bool] = None, max_witnesses: Optional[int] = None,
            timing: bool = False) -> AnalysisReport:
    """Run each requested backend that fits the spec's basis kind and compare verdicts."""
    opts = spec.options
    requested = list(backends or opts.backends or APPLICABLE[spec.basis_kind])
    for b in requested:
        if b not in BACKENDS:
            raise ValueError(f"unknown backend {b!r}; expected one of {BACKENDS}")
    trace = opts.trace_closure if trace_closure is None else trace_closure
    cap = opts.max_witnesses if max_witnesses is None else max_witnesses
    report = AnalysisReport(spec.name, dict(spec.group), spec.basis_kind, list(spec.generators.labels))
    times = {}
    details = []
    for b in BACKENDS:
        if b not in requested:
            continue
        if b not in APPLICABLE[spec.basis_kind]:
            report.skipped[b] = f"not applicable to basis_kind {spec.basis_kind}"
            continue
        start = time.perf_counter()
        if b == "larc":
            report.larc = _larc(spec, opts.field)
            report.verdicts["larc"] = report.larc["controllable"]
        elif b == "graph":
            report.graph = _graph(spec, trace)
            report.verdicts["graph"] = report.graph["controllable"]
            if spec.basis_kind == "standard_son" and not closure_equals_lie_span_check(spec.generators):
                details.append("closed graph does not span the Lie closure")
        else:
            report.cycle = _cycle(spec, cap)
            report.verdicts["cycle"] = report.cycle["controllable"]
        times[b] = time.perf_counter() - start
    if spec.basis_kind == "standard_son":
        try:
            sub = forest_to_submanifold(spec.generators)
        except CrossCheckError as exc:
            details.append(f"submanifold: {exc}")
        else:
            report.submanifold = {
                "orbits": [list(b) for b in sub.orbits.nontrivial_blocks],
                "dimension": sub.dimension,
                "summands": sub.summand_text(),
                "minimal_subset": list(sub.xi_labels),
                "permutation": format_cycles(sub.permutation),
            }
    if spec.basis_kind == "sl3c" and report.larc and report.larc["field"] == "real":
        report.notes.append("real field: sl(3,C) has real dimension 16, out of reach of real-entry generators")
    if len(set(report.verdicts.values())) > 1:
        details.insert(0, "verdicts differ: " + ", ".join(
            f"{k}={'controllable' if v else 'not controllable'}" for k, v in report.verdicts.items()))
    if details:
        report.cross_check = {"status": "MISMATCH", "details": details}
    if timing:
        report.timing = times
    return report


def slug(name: str) -> str:
    s = re.sub(r"[^A-Za-z0-9_.-]+", "-", name).strip("-")
    return s or "system"


def emit_dot(spec: SystemSpec) -> dict[str, str]:
    """DOT file contents keyed by file name; empty when the kind has no graph."""
    if spec.basis_kind not in ("standard_son", "son_split", "formation"):
        return {}
    g = spec_graph(spec)
    _, tr = triangular_closure(g)
    name = slug(spec.name)
    return {f"{name}.dot": to_dot(g, tr, name=name)}
