"""Spanning trees as n-cycle witnesses, spanning forests as orbit partitions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .lie_core import ExactMatrix, GeneratorSet, determinant, lie_rank, minor
from .liegraph import SimpleGraph, UnionFind, components, spanning_forest_edges, tau
from .permgroup import (CycleWitness, OrbitPartition, Permutation, TranspositionSequence,
                        iota, is_n_cycle)


class CrossCheckError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class SpanningForest:
    parent: SimpleGraph
    components: tuple
    trees: tuple

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(e for t in self.trees for e in t.edges))


def _induced_tree(n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
    return SimpleGraph(n, frozenset(edges))


def is_forest(g: SimpleGraph) -> bool:
    uf = UnionFind(range(1, g.n + 1))
    return all(uf.union(i, j) for i, j in g.edges)


def is_tree(g: SimpleGraph) -> bool:
    """A tree on the vertices it touches: connected through its edges and acyclic.

    The edgeless graph is not a tree here.
    """
    if not g.edges or not is_forest(g):
        return False
    touched = {v for e in g.edges for v in e}
    return len(g.edges) == len(touched) - 1


def spanning_forest(g: SimpleGraph, edges: Optional[Iterable[tuple[int, int]]] = None) -> SpanningForest:
    """Split a spanning forest of ``g`` into one tree per component.

    Without ``edges`` the lexicographically smallest forest is used. A
    supplied edge set must be a spanning forest of ``g``.
    """
    comps = tuple(components(g))
    if edges is None:
        chosen = spanning_forest_edges(g)
    else:
        chosen = sorted({(min(e), max(e)) for e in edges})
        sub = SimpleGraph(g.n, frozenset(chosen))
        if not sub.edges <= g.edges:
            raise ValueError(f"forest edges {sorted(sub.edges - g.edges)} are not edges of the graph")
        if not is_forest(sub) or len(components(sub)) != len(comps):
            raise ValueError("supplied edges are not a spanning forest of the graph")
    trees = []
    for comp in comps:
        trees.append(_induced_tree(g.n, (e for e in chosen if e[0] in comp)))
    return SpanningForest(g, comps, tuple(trees))


def tree_to_cycle(t: SimpleGraph) -> Permutation:
    """Product of a tree's transpositions, edges in lexicographic order.

    Any order gives a cycle through exactly the tree's vertices; this
    function checks that before returning.
    """
    if not is_tree(t):
        raise ValueError(f"edge set {t.sorted_edges()} is not a tree")
    perm = iota(TranspositionSequence(t.n, t.sorted_edges()))
    cyc = perm.cycles()
    touched = {v for e in t.edges for v in e}
    if len(cyc) != 1 or set(cyc[0]) != touched:
        raise CrossCheckError(f"tree {t.sorted_edges()} gave {perm}, not a cycle on {sorted(touched)}")
    return perm


def enumerate_spanning_trees(g: SimpleGraph, limit: Optional[int] = None
                             ) -> list[tuple[tuple[int, int], ...]]:
    """Spanning trees as sorted edge tuples, in lexicographic order.

    Include/exclude backtracking over the sorted edge list; an exclusion
    branch is pruned once the remaining edges can no longer connect the
    graph, an inclusion branch once it closes a cycle. Trying inclusion
    first emits trees in lexicographic order, so ``limit`` keeps a prefix.
    """
    n = g.n
    edges = g.sorted_edges()
    if n == 1:
        return [()]
    if len(components(g)) != 1:
        return []
    out = []

    def connected_with(chosen: list, start: int) -> bool:
        uf = UnionFind(range(1, n + 1))
        k = n
        for e in itertools.chain(chosen, edges[start:]):
            if uf.union(*e):
                k -= 1
        return k == 1

    def rec(pos: int, chosen: list, uf_parent: dict):
        if limit is not None and len(out) >= limit:
            return
        if len(chosen) == n - 1:
            out.append(tuple(chosen))
            return
        if pos == len(edges) or len(chosen) + len(edges) - pos < n - 1:
            return
        i, j = edges[pos]
        uf = UnionFind(())
        uf.parent = dict(uf_parent)
        if uf.union(i, j):
            chosen.append((i, j))
            rec(pos + 1, chosen, uf.parent)
            chosen.pop()
        if connected_with(chosen, pos + 1):
            rec(pos + 1, chosen, uf_parent)

    rec(0, [], {v: v for v in range(1, n + 1)})
    return out


def enumerate_spanning_trees_bruteforce(g: SimpleGraph) -> list[tuple[tuple[int, int], ...]]:
    """Reference: every (n-1)-subset of edges that is acyclic."""
    if g.n == 1:
        return [()]
    out = []
    for combo in itertools.combinations(g.sorted_edges(), g.n - 1):
        if is_forest(SimpleGraph(g.n, frozenset(combo))):
            out.append(combo)
    return out


def matrix_tree_count(g: SimpleGraph) -> int:
    """Number of spanning trees from any cofactor of the graph Laplacian."""
    if g.n == 1:
        return 1
    adj = g.adjacency()
    data = {}
    for v in range(1, g.n + 1):
        if adj[v]:
            data[(v - 1, v - 1)] = len(adj[v])
        for w in adj[v]:
            data[(v - 1, w - 1)] = -1
    lap = ExactMatrix(g.n, data)
    det = determinant(minor(lap, 0, 0))
    if det.denominator != 1:
        raise CrossCheckError(f"non-integral tree count {det}")
    return int(det)


def enumerate_cycle_witnesses(gens: GeneratorSet, limit: Optional[int] = None) -> list[CycleWitness]:
    """Every generator subset whose product is an n-cycle, one per spanning tree.

    Labels follow the lexicographic edge order; the list is sorted by edge tuple.
    """
    pairs = gens.require_standard()
    label_of = dict(zip(pairs, gens.labels))
    out = []
    for tree in enumerate_spanning_trees(tau(gens), limit):
        perm = iota(TranspositionSequence(gens.dim, tree))
        out.append(CycleWitness(tuple(label_of[e] for e in tree), tree, perm))
    return out


def enumerate_cycle_witnesses_bruteforce(gens: GeneratorSet) -> list[tuple[tuple[int, int], ...]]:
    """Reference: (n-1)-subsets with some ordering whose product is an n-cycle."""
    pairs = gens.require_standard()
    n = gens.dim
    if n == 1:
        return [()]
    out = []
    for combo in itertools.combinations(sorted(pairs), n - 1):
        if any(is_n_cycle(iota(TranspositionSequence(n, order)))
               for order in itertools.permutations(combo)):
            out.append(combo)
    return out


def minimal_cycle_subsets(gens: GeneratorSet) -> list[tuple[tuple[int, int], ...]]:
    """Subsets with an n-cycle ordering none of whose proper subsets has one."""
    pairs = sorted(gens.require_standard())
    n = gens.dim
    good = []
    for k in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, k):
            if any(set(g) <= set(combo) for g in good):
                continue
            orders = itertools.permutations(combo) if combo else [()]
            if any(is_n_cycle(iota(TranspositionSequence(n, o))) for o in orders):
                good.append(combo)
    return sorted(good)


def minimal_lie_subsets(gens: GeneratorSet) -> list[tuple[tuple[int, int], ...]]:
    """Inclusion-minimal subsets generating the same Lie algebra as ``gens``."""
    pairs = sorted(gens.require_standard())
    n = gens.dim
    target = lie_rank(gens)
    good = []
    for k in range(len(pairs) + 1):
        for combo in itertools.combinations(pairs, k):
            if any(set(g) <= set(combo) for g in good):
                continue
            # subsets of gens span subalgebras, so equal rank means equal algebra
            if lie_rank(GeneratorSet.standard(n, combo)) == target:
                good.append(combo)
    return sorted(good)


@dataclass(frozen=True)
class SubmanifoldDescription:
    """Minimal subset, its product, the orbit partition and the summands it implies."""

    xi: tuple
    xi_labels: tuple
    permutation: Permutation
    orbits: OrbitPartition
    summands: tuple
    dimension: int
    lie_rank: int

    def summand_text(self) -> list[str]:
        out = []
        for block in self.orbits.nontrivial_blocks:
            pts = ",".join(str(v) for v in block)
            out.append(f"so({len(block)}) on {{{pts}}}")
        return out


def forest_to_submanifold(gens: GeneratorSet, forest: Optional[Iterable[tuple[int, int]]] = None
                          ) -> SubmanifoldDescription:
    """Orbits of the product over a spanning forest, checked against the rank oracle.

    ``forest`` picks a specific spanning forest (as an edge set); by default
    the lexicographically smallest is used. The product is taken in the
    lexicographic order of the forest's edges.
    """
    pairs = gens.require_standard()
    g = tau(gens)
    sf = spanning_forest(g, forest)
    xi = sf.edges
    label_of = dict(zip(pairs, gens.labels))
    perm = iota(TranspositionSequence(gens.dim, xi))
    orbits = perm.orbits()
    comp_blocks = tuple(tuple(sorted(c)) for c in sf.components)
    if orbits.blocks != comp_blocks:
        raise CrossCheckError(f"orbits {orbits.blocks} differ from components {comp_blocks}")
    rank = lie_rank(gens)
    if orbits.dimension != rank:
        raise CrossCheckError(f"orbit dimension {orbits.dimension} differs from Lie rank {rank}")
    summands = tuple(tuple(itertools.combinations(b, 2)) for b in orbits.nontrivial_blocks)
    return SubmanifoldDescription(xi, tuple(label_of[e] for e in xi), perm, orbits,
                                  summands, orbits.dimension, rank)
