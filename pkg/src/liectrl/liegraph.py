"""Graphs of standard-basis generator sets, triangular closure and connectivity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .lie_core import GeneratorSet, lie_closure, so_dim, span_of, omega


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 1..n; edges stored as ``(i, j)`` with i < j."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} outside vertices 1..{self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(itertools.combinations(range(1, n + 1), 2)))

    @classmethod
    def edgeless(cls, n: int) -> "SimpleGraph":
        return cls(n)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges | frozenset(extra))

    def is_complete(self) -> bool:
        return len(self.edges) == so_dim(self.n)

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class ClosureTrace:
    """Strictly ascending chain G^0 < G^1 < ... < G^m; G^m is closed.

    ``added[m]`` holds the edges new in ``chain[m + 1]``.
    """

    chain: tuple
    added: tuple = field(default=())

    @property
    def steps(self) -> int:
        return len(self.chain) - 1

    @property
    def closure(self) -> SimpleGraph:
        return self.chain[-1]


def tau(gens: GeneratorSet) -> SimpleGraph:
    """Graph with an edge ij for every generator O_ij."""
    pairs = gens.require_standard()
    return SimpleGraph(gens.dim, frozenset(pairs))


def tau_inverse(g: SimpleGraph) -> GeneratorSet:
    """Generator set whose graph is ``g``; generators in lexicographic edge order."""
    return GeneratorSet.standard(g.n, g.sorted_edges())


def closure_step(g: SimpleGraph, frontier: Optional[frozenset] = None) -> frozenset:
    """Edges ij not in ``g`` with a common neighbour k.

    When ``frontier`` is given only wedges using a frontier edge are
    examined; that finds the same edges as long as every older wedge was
    already closed in an earlier step.
    """
    adj = g.adjacency()
    new = set()
    source = g.edges if frontier is None else frontier
    for a, b in source:
        for centre, end in ((a, b), (b, a)):
            for other in adj[centre]:
                if other != end:
                    e = (min(end, other), max(end, other))
                    if e not in g.edges:
                        new.add(e)
    return frozenset(new)


def triangular_closure(g: SimpleGraph) -> tuple[SimpleGraph, ClosureTrace]:
    """Iterate the triangle rule to its fixpoint.

    A wedge i-k-j is examined only when one of its edges arrived in the
    previous round: older wedges were closed then.
    """
    chain = [g]
    added = []
    current = g
    frontier = g.edges
    while True:
        new = closure_step(current, frontier)
        if not new:
            break
        current = current.with_edges(new)
        chain.append(current)
        added.append(new)
        frontier = new
    return current, ClosureTrace(tuple(chain), tuple(added))


def closure_equals_lie_span_check(gens: GeneratorSet) -> bool:
    """True iff the closed graph's generators span exactly Lie(gens)."""
    if len(gens) == 0:
        return len(triangular_closure(tau(gens))[0]) == 0
    closed, _ = triangular_closure(tau(gens))
    graph_span = span_of((omega(gens.dim, i, j) for i, j in closed.sorted_edges()), gens.dim)
    return graph_span.same_span(lie_closure(gens))


class UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(g: SimpleGraph) -> list[frozenset]:
    """Connected components including singletons, sorted by least vertex."""
    uf = UnionFind(range(1, g.n + 1))
    for i, j in g.edges:
        uf.union(i, j)
    groups: dict[int, set] = {}
    for v in range(1, g.n + 1):
        groups.setdefault(uf.find(v), set()).add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def is_connected(g: SimpleGraph) -> bool:
    return len(components(g)) == 1


def graph_controllable(gens: GeneratorSet) -> bool:
    return is_connected(tau(gens))


def spanning_forest_edges(g: SimpleGraph) -> list[tuple[int, int]]:
    """Greedy forest over edges in lexicographic order (lex-smallest edge set)."""
    uf = UnionFind(range(1, g.n + 1))
    return [e for e in g.sorted_edges() if uf.union(*e)]


def min_inputs_check(gens: GeneratorSet) -> bool:
    """A controllable set has at least n-1 generators (n-2 controls plus drift)."""
    if not graph_controllable(gens):
        return True
    return len(gens) >= gens.dim - 1


def to_dot(g: SimpleGraph, trace: Optional[ClosureTrace] = None, name: str = "G") -> str:
    """DOT text: base edges black, edges added by closure red with their step."""
    lines = [f"graph \"{name}\" {{", "  node [shape=circle];"]
    for v in range(1, g.n + 1):
        lines.append(f'  {v} [label="v{v}"];')
    for i, j in g.sorted_edges():
        lines.append(f"  {i} -- {j} [color=black];")
    if trace is not None:
        for step, new in enumerate(trace.added, 1):
            for i, j in sorted(new):
                lines.append(f'  {i} -- {j} [color=red, label="{step}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
