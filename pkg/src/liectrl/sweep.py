"""Exhaustive sweeps comparing independent controllability tests over all subsets."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .lie_core import GeneratorSet, lie_rank, so_dim, standard_indices
from .liegraph import SimpleGraph, graph_controllable, min_inputs_check
from .permgroup import cycle_controllable, submanifold_orbits

SWEEP_KINDS = ("standard_son", "son_split", "sl3c", "formation")


def worker_count() -> int:
    env = os.environ.get("LIECTRL_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"LIECTRL_THREADS must be an integer, got {env!r}") from None
        if value < 1:
            raise ValueError("LIECTRL_THREADS must be at least 1")
        return value
    return os.cpu_count() or 1


@dataclass
class SubsetOutcome:
    mask: int
    size: int
    verdicts: dict
    rank: int
    detail: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) <= 1


@dataclass
class SweepResult:
    kind: str
    size: int
    outcomes: list

    @property
    def total(self) -> int:
        return len(self.outcomes)

    @property
    def mismatches(self) -> list:
        return [o for o in self.outcomes if not o.agree or o.detail.get("mismatch")]

    def controllable(self, backend: str = "larc") -> list:
        return [o for o in self.outcomes if o.verdicts.get(backend)]

    def min_controllable_size(self, backend: str = "larc") -> Optional[int]:
        sizes = [o.size for o in self.controllable(backend)]
        return min(sizes) if sizes else None


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _standard_case(n: int, mask: int) -> SubsetOutcome:
    idx = standard_indices(n)
    pairs = [p for k, p in enumerate(idx) if mask >> k & 1]
    gens = GeneratorSet.standard(n, pairs)
    rank = lie_rank(gens)
    full = so_dim(n)
    cyc, _ = cycle_controllable(gens)
    verdicts = {"larc": rank == full, "graph": graph_controllable(gens), "cycle": cyc}
    orbit_dim = submanifold_orbits(gens).dimension
    detail = {"orbit_dimension": orbit_dim, "min_inputs": min_inputs_check(gens)}
    if orbit_dim != rank or not detail["min_inputs"]:
        detail["mismatch"] = True
    return SubsetOutcome(mask, len(pairs), verdicts, rank, detail)


def _split_case(_: int, mask: int) -> SubsetOutcome:
    from .decomp import SPLIT_LABELS, split_controllable, split_cycle_witness, split_generators
    labels = [lab for k, lab in enumerate(SPLIT_LABELS) if mask >> k & 1]
    gens = split_generators(labels)
    rank = lie_rank(gens)
    verdicts = {"larc": rank == 6, "graph": split_controllable(gens),
                "cycle": split_cycle_witness(gens)[0]}
    return SubsetOutcome(mask, len(labels), verdicts, rank)


def _sl3_case(_: int, mask: int) -> SubsetOutcome:
    from .decomp import SL3_LABELS, sl3_cycle_controllable, sl3_larc
    labels = [lab for k, lab in enumerate(SL3_LABELS) if mask >> k & 1]
    larc, rank = sl3_larc(labels)
    cyc, witness, perm = sl3_cycle_controllable(labels)
    detail = {}
    if witness is not None:
        detail = {"witness": list(witness), "product": str(perm)}
    return SubsetOutcome(mask, len(labels), {"larc": larc, "cycle": cyc}, rank, detail)


def _formation_case(n: int, mask: int) -> SubsetOutcome:
    from .decomp import formation_controllable, formation_larc
    idx = standard_indices(n)
    g = SimpleGraph(n, frozenset(p for k, p in enumerate(idx) if mask >> k & 1))
    larc, rank, _ = formation_larc(g)
    return SubsetOutcome(mask, len(g.edges), {"larc": larc, "graph": formation_controllable(g)}, rank)


_CASES: dict[str, Callable[[int, int], SubsetOutcome]] = {
    "standard_son": _standard_case,
    "son_split": _split_case,
    "sl3c": _sl3_case,
    "formation": _formation_case,
}


def subset_count(kind: str, size: int) -> int:
    if kind in ("standard_son", "formation"):
        return 1 << so_dim(size)
    if kind == "son_split":
        return 1 << 6
    if kind == "sl3c":
        return 1 << 8
    raise ValueError(f"unknown sweep kind {kind!r}; expected one of {SWEEP_KINDS}")


def _run_chunk(args) -> list:
    kind, size, masks = args
    case = _CASES[kind]
    return [case(size, m) for m in masks]


def run_sweep(kind: str, size: int = 0, workers: Optional[int] = None) -> SweepResult:
    """Evaluate every subset; outcomes are ordered by subset bitmask.

    ``size`` is n for standard_son and N for formation; ignored otherwise.
    """
    total = subset_count(kind, size)
    if kind == "formation" and size < 2:
        raise ValueError("formation sweeps need N >= 2")
    if kind == "standard_son" and size < 1:
        raise ValueError("standard sweeps need n >= 1")
    workers = worker_count() if workers is None else workers
    masks = list(range(total))
    if workers <= 1 or total < 64:
        outcomes = _run_chunk((kind, size, masks))
    else:
        step = max(1, total // (workers * 4))
        chunks = [(kind, size, masks[k:k + step]) for k in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = [o for part in pool.map(_run_chunk, chunks) for o in part]
    outcomes.sort(key=lambda o: o.mask)
    return SweepResult(kind, size, outcomes)
