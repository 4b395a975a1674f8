"""Worked examples with their expected results, used as golden checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import decomp
from .equivalence import enumerate_cycle_witnesses, forest_to_submanifold
from .lie_core import GeneratorSet, lie_closure, lie_rank
from .liegraph import components, tau, triangular_closure
from .permgroup import format_cycles, iota_of, is_n_cycle, submanifold_orbits
from .specfile import standard_spec


@dataclass(frozen=True)
class WorkedExample:
    name: str
    summary: str
    spec: dict
    check: Callable[[], list]


def _std(n, pairs):
    return GeneratorSet.standard(n, pairs)


def _path_so5():
    g = _std(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    p = iota_of(g)
    return [("Lie rank 10", lie_rank(g) == 10),
            ("product (1 2 3 4 5)", format_cycles(p) == "(1 2 3 4 5)"),
            ("product is a 5-cycle", is_n_cycle(p))]


def _two_blocks_so5():
    g = _std(5, [(1, 2), (2, 3), (4, 5)])
    p = iota_of(g)
    return [("Lie rank 4", lie_rank(g) == 4),
            ("product (1 2 3)(4 5)", format_cycles(p) == "(1 2 3)(4 5)"),
            ("not a 5-cycle", not is_n_cycle(p)),
            ("orbits {1,2,3},{4,5}", submanifold_orbits(g).nontrivial_blocks == ((1, 2, 3), (4, 5)))]


def _triangle_tail_so4():
    g = _std(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    _, tr = triangular_closure(tau(g))
    ws = enumerate_cycle_witnesses(g)
    return [("closure complete after 1 step", tr.steps == 1 and tr.closure.is_complete()),
            ("added edges v1v4, v2v4", tr.added == (frozenset({(1, 4), (2, 4)}),)),
            ("product in listed order (2 3 4)", format_cycles(iota_of(g)) == "(2 3 4)"),
            ("3 witness subsets", len(ws) == 3),
            ("witnesses {O12,O13,O34} -> (1 3 4 2), {O13,O23,O34} -> (1 3 4 2), {O12,O23,O34} -> (1 2 3 4)",
             {frozenset(w.labels): format_cycles(w.permutation) for w in ws} == {
                 frozenset({"O12", "O13", "O34"}): "(1 3 4 2)",
                 frozenset({"O13", "O23", "O34"}): "(1 3 4 2)",
                 frozenset({"O12", "O23", "O34"}): "(1 2 3 4)"}),
            ("Lie rank 6", lie_rank(g) == 6)]


def _path_plus_isolated_so5():
    g = _std(5, [(1, 2), (2, 3), (3, 4)])
    closed, tr = triangular_closure(tau(g))
    return [("Lie rank 6", lie_rank(g) == 6),
            ("closure stabilizes after 2 steps", tr.steps == 2),
            ("step edges {v1v3, v2v4} then {v1v4}",
             tr.added == (frozenset({(1, 3), (2, 4)}), frozenset({(1, 4)}))),
            ("components {1,2,3,4},{5}", components(closed) == [frozenset({1, 2, 3, 4}), frozenset({5})]),
            ("{1,2,3,4} complete", all((i, j) in closed.edges for i in range(1, 5) for j in range(i + 1, 5)))]


def _two_triangles_so6():
    g1 = _std(6, [(1, 2), (2, 3), (4, 5), (4, 6)])
    g2 = _std(6, [(1, 3), (2, 3), (4, 6), (5, 6)])
    s1, s2 = lie_closure(g1), lie_closure(g2)
    return [("equal Lie algebras", s1.same_span(s2)),
            ("both rank 6", s1.rank == 6 and s2.rank == 6),
            ("components {1,2,3},{4,5,6}",
             components(tau(g1)) == components(tau(g2)) == [frozenset({1, 2, 3}), frozenset({4, 5, 6})])]


def _square_plus_edge_so6():
    g = _std(6, [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4), (5, 6)])
    a = forest_to_submanifold(g, [(1, 4), (2, 4), (3, 4), (5, 6)])
    b = forest_to_submanifold(g, [(1, 2), (2, 4), (3, 4), (5, 6)])
    return [("product in listed order (1 4)(5 6)", format_cycles(iota_of(g)) == "(1 4)(5 6)"),
            ("first forest (1 4 3 2)(5 6)", format_cycles(a.permutation) == "(1 4 3 2)(5 6)"),
            ("second forest (1 2 4 3)(5 6)", format_cycles(b.permutation) == "(1 2 4 3)(5 6)"),
            ("same orbits {1,2,3,4},{5,6}",
             a.orbits == b.orbits and a.orbits.nontrivial_blocks == ((1, 2, 3, 4), (5, 6)))]


def _two_input(n):
    def check():
        from .lie_core import ExactMatrix, omega
        c2 = ExactMatrix.zero(n)
        for i in range(1, n):
            c2 = c2 + omega(n, i, i + 1)
        rank = lie_rank([omega(n, 1, 2), c2])
        return [(f"Lie rank {n * (n - 1) // 2}", rank == n * (n - 1) // 2)]
    return check


def _split_four():
    ok = decomp.split_controllable(decomp.split_generators(["A1", "A2", "B1", "B2"]))
    small = [decomp.split_controllable(decomp.split_generators(c))
             for c in (["A1", "A2", "A3"], ["A1", "A2", "B1"])]
    return [("bracket table holds", decomp.verify_split_relations()),
            ("{A1,A2,B1,B2} controllable", ok),
            ("{A1,A2,A3} and {A1,A2,B1} not controllable", not any(small))]


def _sl3_four():
    cyc, _, perm = decomp.sl3_cycle_controllable(["X1", "X2", "Y1", "Y2"])
    larc, rank = decomp.sl3_larc(["X1", "X2", "Y1", "Y2"])
    return [("cycle found", cyc), ("complex Lie rank 8", larc and rank == 8),
            ("product ((1 2 3), (1 2 3))", str(perm) == "((1 2 3), (1 2 3))")]


def _formation_path4():
    from .liegraph import SimpleGraph
    path = SimpleGraph(4, frozenset({(1, 2), (2, 3), (3, 4)}))
    split = SimpleGraph(4, frozenset({(1, 2), (3, 4)}))
    ok_path = decomp.formation_larc(path)
    ok_split = decomp.formation_larc(split)
    return [("path connected and full rank", decomp.formation_controllable(path) and ok_path[0]),
            ("two disjoint edges: disconnected, smaller rank",
             not decomp.formation_controllable(split) and ok_split[1] < ok_split[2])]


CATALOG = [
    WorkedExample("path-so5", "chain O12,O23,O34,O45 on SO(5)",
                  standard_spec("path-so5", 5, [(1, 2), (2, 3), (3, 4), (4, 5)]), _path_so5),
    WorkedExample("two-blocks-so5", "O12,O23,O45 on SO(5): two orbits",
                  standard_spec("two-blocks-so5", 5, [(1, 2), (2, 3), (4, 5)]), _two_blocks_so5),
    WorkedExample("triangle-tail-so4", "triangle plus pendant edge on SO(4): three spanning trees",
                  standard_spec("triangle-tail-so4", 4, [(1, 2), (2, 3), (1, 3), (3, 4)],
                                trace_closure=True), _triangle_tail_so4),
    WorkedExample("path-plus-isolated-so5", "O12,O23,O34 on SO(5): closure in two steps",
                  standard_spec("path-plus-isolated-so5", 5, [(1, 2), (2, 3), (3, 4)],
                                trace_closure=True), _path_plus_isolated_so5),
    WorkedExample("two-triangles-so6", "two different graphs with the same closure on SO(6)",
                  standard_spec("two-triangles-so6", 6, [(1, 2), (2, 3), (4, 5), (4, 6)],
                                trace_closure=True), _two_triangles_so6),
    WorkedExample("square-plus-edge-so6", "two spanning forests, different products, same orbits",
                  standard_spec("square-plus-edge-so6", 6,
                                [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4), (5, 6)]), _square_plus_edge_so6),
    WorkedExample("two-input-so6", "O12 and the sum of the chain: two inputs suffice",
                  {"name": "two-input-so6", "group": {"type": "SO", "n": 6}, "basis_kind": "raw",
                   "generators": [{"label": "C1", "omega": [[1, 1, 2]]},
                                  {"label": "C2", "omega": [[1, i, i + 1] for i in range(1, 6)]}]},
                  _two_input(6)),
    WorkedExample("split-so4", "two commuting so(3) copies inside so(4)",
                  {"name": "split-so4", "group": {"type": "SO", "n": 4}, "basis_kind": "son_split",
                   "generators": ["A1", "A2", "B1", "B2"]}, _split_four),
    WorkedExample("sl3-raising-lowering", "X1,X2,Y1,Y2 in sl(3,C)",
                  {"name": "sl3-raising-lowering", "group": {"type": "SL3C"}, "basis_kind": "sl3c",
                   "generators": ["X1", "X2", "Y1", "Y2"]}, _sl3_four),
    WorkedExample("formation-path4", "consensus coupling along a path of four agents",
                  {"name": "formation-path4", "group": {"type": "FORMATION", "N": 4},
                   "basis_kind": "formation", "generators": [[1, 2], [2, 3], [3, 4]],
                   "options": {"trace_closure": True}}, _formation_path4),
]


def run_catalog() -> list[tuple[str, str, bool]]:
    """``(example, claim, ok)`` for every claim of every worked example."""
    out = []
    for ex in CATALOG:
        for claim, ok in ex.check():
            out.append((ex.name, claim, bool(ok)))
    return out
