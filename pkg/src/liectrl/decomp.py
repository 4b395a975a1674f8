"""Direct-sum decompositions: the split so(4) basis, sl(3, C) and formation control."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .lie_core import (ExactMatrix, GeneratorSet, bracket, lie_rank, omega, span_of)
from .liegraph import SimpleGraph, is_connected, spanning_forest_edges
from .permgroup import Permutation, TranspositionSequence, compose, iota, is_n_cycle
from .scalars import GaussianRational

HALF = Fraction(1, 2)


class DecompositionError(ValueError):
    """A declared direct-sum decomposition has a nonzero cross bracket."""


# split basis of so(4) --------------------------------------------------------

SPLIT_LABELS = ("A1", "A2", "A3", "B1", "B2", "B3")


@lru_cache(maxsize=None)
def split_basis() -> dict[str, ExactMatrix]:
    """Two commuting copies of so(3) inside so(4), entries in halves."""
    o = lambda i, j: omega(4, i, j)
    return {
        "A1": (o(2, 3) + o(1, 4)) * HALF,
        "A2": (o(1, 3) - o(2, 4)) * HALF,
        "A3": (o(1, 2) + o(3, 4)) * HALF,
        "B1": (o(1, 3) + o(2, 4)) * HALF,
        "B2": (o(1, 4) - o(2, 3)) * HALF,
        "B3": (o(1, 2) - o(3, 4)) * HALF,
    }


def split_expected_bracket(a: str, b: str) -> tuple[int, Optional[str]]:
    """Bracket table of the split basis as ``(sign, label)``; ``(0, None)`` for zero."""
    if a[0] != b[0] or a == b:
        return 0, None
    i, j = int(a[1]), int(b[1])
    k = 6 - i - j
    sign = 1 if (i, j, k) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1
    return sign, f"{a[0]}{k}"


def verify_split_relations() -> bool:
    """Check all 15 unordered brackets of the split basis against its table."""
    basis = split_basis()
    for a, b in itertools.combinations(SPLIT_LABELS, 2):
        sign, label = split_expected_bracket(a, b)
        got = bracket(basis[a], basis[b])
        want = ExactMatrix.zero(4) if label is None else basis[label] * sign
        if got != want:
            return False
    return True


def split_generators(labels: Iterable[str]) -> GeneratorSet:
    basis = split_basis()
    labels = list(labels)
    for lab in labels:
        if lab not in basis:
            raise ValueError(f"{lab!r} is not a split-basis label; expected one of {SPLIT_LABELS}")
    return GeneratorSet(4, tuple((lab, basis[lab]) for lab in labels), "son_split")


def split_edge(label: str) -> tuple[int, int]:
    """Edge on a triangle: index i goes to v_i v_{i+1}, indices mod 3."""
    i = int(label[1])
    a, b = i, i % 3 + 1
    return (min(a, b), max(a, b))


@dataclass(frozen=True)
class DecompositionComponent:
    """One summand: its basis (label to matrix) and the graph edge of each label."""

    name: str
    basis: Mapping[str, ExactMatrix]
    edges: Mapping[str, tuple[int, int]]
    vertices: int

    def __post_init__(self):
        if set(self.basis) != set(self.edges):
            raise ValueError(f"component {self.name!r}: basis and edge labels differ")


def split_components() -> list[DecompositionComponent]:
    basis = split_basis()
    return [DecompositionComponent(
        letter, {lab: basis[lab] for lab in SPLIT_LABELS if lab[0] == letter},
        {lab: split_edge(lab) for lab in SPLIT_LABELS if lab[0] == letter}, 3)
        for letter in "AB"]


def standard_component(n: int) -> DecompositionComponent:
    from .lie_core import omega_label, standard_indices
    idx = standard_indices(n)
    return DecompositionComponent(
        f"so({n})", {omega_label(n, i, j): omega(n, i, j) for i, j in idx},
        {omega_label(n, i, j): (i, j) for i, j in idx}, n)


def check_decomposition(components: Sequence[DecompositionComponent]):
    """Raise DecompositionError on any nonzero bracket across components."""
    for c1, c2 in itertools.combinations(components, 2):
        for (l1, m1), (l2, m2) in itertools.product(c1.basis.items(), c2.basis.items()):
            if bracket(m1, m2):
                raise DecompositionError(
                    f"[{l1}, {l2}] != 0 across components {c1.name!r} and {c2.name!r}")


def component_graphs(components: Sequence[DecompositionComponent], gens: GeneratorSet
                     ) -> list[SimpleGraph]:
    owner = {}
    for idx, comp in enumerate(components):
        for lab, m in comp.basis.items():
            owner[lab] = (idx, m)
    edges = [set() for _ in components]
    for lab, m in gens:
        if lab not in owner:
            raise ValueError(f"generator {lab!r} belongs to no declared component")
        idx, ref = owner[lab]
        if ref != m:
            raise ValueError(f"generator {lab!r} does not match its component basis element")
        edges[idx].add(components[idx].edges[lab])
    return [SimpleGraph(c.vertices, frozenset(e)) for c, e in zip(components, edges)]


def noninterwining_controllable(components: Sequence[DecompositionComponent],
                                gens: GeneratorSet) -> bool:
    """Every component's graph connected, after checking the cross brackets vanish."""
    check_decomposition(components)
    return all(is_connected(g) for g in component_graphs(components, gens))


def split_controllable(gens: GeneratorSet) -> bool:
    if gens.basis_kind != "son_split":
        raise ValueError(f"expected split-basis generators, got basis_kind {gens.basis_kind!r}")
    return noninterwining_controllable(split_components(), gens)


def split_graph(gens: GeneratorSet) -> SimpleGraph:
    """Both components on one six-vertex graph: A-edges on 1..3, B-edges on 4..6."""
    g_a, g_b = component_graphs(split_components(), gens)
    edges = set(g_a.edges) | {(i + 3, j + 3) for i, j in g_b.edges}
    return SimpleGraph(6, frozenset(edges))


@dataclass(frozen=True)
class SumPermutation:
    """Element of a direct sum of symmetric groups; a cycle when every slot is one."""

    parts: tuple

    def __mul__(self, other: "SumPermutation") -> "SumPermutation":
        return SumPermutation(tuple(compose(a, b) for a, b in zip(self.parts, other.parts)))

    @classmethod
    def identity(cls, degrees: Sequence[int]) -> "SumPermutation":
        return cls(tuple(Permutation.identity(d) for d in degrees))

    def is_cycle(self) -> bool:
        """Every slot a full-length cycle (the identity slot does not count)."""
        return all(p.n > 1 and is_n_cycle(p) for p in self.parts)

    @property
    def length(self) -> int:
        """Sum of the slots' cycle lengths, for cycles only; 0 for identities."""
        total = 0
        for p in self.parts:
            cyc = p.cycles()
            total += max((len(c) for c in cyc), default=0)
        return total

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


def split_cycle_witness(gens: GeneratorSet) -> tuple[bool, Optional[tuple], Optional[SumPermutation]]:
    """Cycle test in S3 + S3 for split-basis generators via one spanning tree per slot."""
    graphs = component_graphs(split_components(), gens)
    chosen = []
    parts = []
    for letter, g in zip("AB", graphs):
        tree = spanning_forest_edges(g)
        if len(tree) != 2:
            return False, None, None
        by_edge = {split_edge(lab): lab for lab in gens.labels if lab[0] == letter}
        chosen += [by_edge[e] for e in tree]
        parts.append(iota(TranspositionSequence(3, tree)))
    return True, tuple(chosen), SumPermutation(tuple(parts))


# sl(3, C) ---------------------------------------------------------------------

SL3_LABELS = ("H1", "H2", "X1", "X2", "X3", "Y1", "Y2", "Y3")


@lru_cache(maxsize=None)
def sl3_basis() -> dict[str, ExactMatrix]:
    """Cartan basis: two diagonal H's, raising X's and lowering Y's."""
    e = lambda i, j: ExactMatrix.unit(3, i, j)
    return {
        "H1": e(1, 1) - e(2, 2),
        "H2": e(2, 2) - e(3, 3),
        "X1": e(1, 2), "X2": e(2, 3), "X3": e(1, 3),
        "Y1": e(2, 1), "Y2": e(3, 2), "Y3": e(3, 1),
    }


_T12 = Permutation.transposition(3, 1, 2)
_T23 = Permutation.transposition(3, 2, 3)
_E3 = Permutation.identity(3)

SL3_IOTA = {
    "H1": SumPermutation((_E3, _E3)),
    "H2": SumPermutation((_E3, _E3)),
    "X1": SumPermutation((_T12, _E3)),
    "X2": SumPermutation((_E3, _T12)),
    "X3": SumPermutation((_T12, _T12)),
    "Y1": SumPermutation((_T23, _E3)),
    "Y2": SumPermutation((_E3, _T23)),
    "Y3": SumPermutation((_T23, _T23)),
}


def sl3_generators(labels: Iterable[str]) -> GeneratorSet:
    basis = sl3_basis()
    labels = list(labels)
    for lab in labels:
        if lab not in basis:
            raise ValueError(f"{lab!r} is not an sl(3) basis label; expected one of {SL3_LABELS}")
    return GeneratorSet(3, tuple((lab, basis[lab]) for lab in labels), "sl3c")


def sl3_iota(labels: Sequence[str]) -> SumPermutation:
    """Product of the slot transpositions of ``labels`` in the given order."""
    out = SumPermutation.identity((3, 3))
    for lab in labels:
        if lab not in SL3_IOTA:
            raise ValueError(f"{lab!r} is not an sl(3) basis label")
        out = out * SL3_IOTA[lab]
    return out


def _slot_edges(labels: Iterable[str], slot: int) -> list[tuple[int, int]]:
    out = []
    for lab in labels:
        p = SL3_IOTA[lab].parts[slot]
        cyc = p.cycles()
        if cyc:
            out.append(cyc[0])
    return out


def _slot_is_tree(labels: Sequence[str], slot: int) -> bool:
    edges = _slot_edges(labels, slot)
    return len(edges) == 2 and len(set(edges)) == 2


def sl3_cycle_controllable(gens: GeneratorSet | Sequence[str]
                           ) -> tuple[bool, Optional[tuple], Optional[SumPermutation]]:
    """Search for a subset whose product is a cycle in both S3 slots.

    Subsets are scanned by size then basis order; a subset qualifies when
    each slot receives exactly the two distinct transpositions of a
    spanning tree of the triangle, which makes every ordering a 3-cycle in
    that slot. Any subset with a cycle-producing ordering contains such a
    subset, so the search is exhaustive.
    """
    labels = _sl3_labels(gens)
    ordered = [lab for lab in SL3_LABELS if lab in labels]
    for k in range(len(ordered) + 1):
        for combo in itertools.combinations(ordered, k):
            if _slot_is_tree(combo, 0) and _slot_is_tree(combo, 1):
                perm = sl3_iota(combo)
                assert perm.is_cycle(), f"tree subset {combo} gave {perm}"
                return True, combo, perm
    return False, None, None


def _sl3_labels(gens) -> set[str]:
    if isinstance(gens, GeneratorSet):
        if gens.basis_kind != "sl3c":
            raise ValueError(f"expected sl3c generators, got basis_kind {gens.basis_kind!r}")
        basis = sl3_basis()
        for lab, m in gens:
            if basis.get(lab) != m:
                raise ValueError(f"generator {lab!r} is not the sl(3) basis element of that name")
        return set(gens.labels)
    labels = set(gens)
    unknown = labels - set(SL3_LABELS)
    if unknown:
        raise ValueError(f"unknown sl(3) labels {sorted(unknown)}")
    return labels


@lru_cache(maxsize=None)
def _sl3_reachable() -> dict[int, frozenset]:
    """Products reachable from each subset (bitmask over the basis) in some order.

    reach[S] = union over x in S of reach[S - x] * iota(x), i.e. x placed last.
    """
    reach = {0: frozenset({SumPermutation.identity((3, 3))})}
    for mask in range(1, 1 << len(SL3_LABELS)):
        out = set()
        for k, lab in enumerate(SL3_LABELS):
            if mask >> k & 1:
                for p in reach[mask & ~(1 << k)]:
                    out.add(p * SL3_IOTA[lab])
        reach[mask] = frozenset(out)
    return reach


def sl3_cycle_controllable_bruteforce(gens: GeneratorSet | Sequence[str]) -> bool:
    """Reference: any subset, any ordering (dynamic programming over subsets)."""
    labels = _sl3_labels(gens)
    gmask = sum(1 << k for k, lab in enumerate(SL3_LABELS) if lab in labels)
    reach = _sl3_reachable()
    sub = gmask
    while True:
        if any(p.is_cycle() for p in reach[sub]):
            return True
        if sub == 0:
            return False
        sub = (sub - 1) & gmask


SL3_FULL_DIM = {"complex": 8, "real": 16}


def sl3_larc(gens: GeneratorSet | Sequence[str], field: str = "complex") -> tuple[bool, int]:
    """LARC verdict and rank for sl(3, C) generators.

    Complex controls give a complex span of full dimension 8. With
    ``field="real"`` the target is sl(3, C) as a 16-dimensional real
    algebra, which real-entry generators can never reach.
    """
    labels = _sl3_labels(gens)
    basis = sl3_basis()
    mats = [basis[lab] for lab in SL3_LABELS if lab in labels]
    rank = lie_rank(mats, field)
    return rank == SL3_FULL_DIM[field], rank


@dataclass(frozen=True)
class Sl3Disagreement:
    labels: tuple
    cycle_verdict: bool
    larc_verdict: bool
    lie_rank: int
    witness: Optional[tuple]
    witness_product: Optional[str]

    @property
    def kind(self) -> str:
        return "cycle without full rank" if self.cycle_verdict else "full rank without cycle"

    def describe(self) -> str:
        names = "{" + ",".join(self.labels) + "}"
        text = f"{names}: cycle test {self.cycle_verdict}, rank test {self.larc_verdict} (Lie rank {self.lie_rank}/8)"
        if self.witness:
            text += f"; witness {','.join(self.witness)} -> {self.witness_product}"
        return text


def sl3_counterexamples() -> list[Sl3Disagreement]:
    """Every subset of the Cartan basis where the cycle and rank tests disagree."""
    out = []
    for mask in range(1 << len(SL3_LABELS)):
        labels = tuple(lab for k, lab in enumerate(SL3_LABELS) if mask >> k & 1)
        cyc, witness, perm = sl3_cycle_controllable(labels)
        larc, rank = sl3_larc(labels)
        if cyc != larc:
            out.append(Sl3Disagreement(labels, cyc, larc, rank, witness,
                                       None if perm is None else str(perm)))
    return sorted(out, key=lambda d: (len(d.labels), [SL3_LABELS.index(x) for x in d.labels]))


# formation control -----------------------------------------------------------

def formation_a(n: int, i: int, j: int) -> ExactMatrix:
    """E_ii + E_jj - E_ij - E_ji."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"invalid agent pair ({i}, {j}) for N={n}")
    e = lambda a, b: ExactMatrix.unit(n, a, b)
    return e(i, i) + e(j, j) - e(i, j) - e(j, i)


def _signed_omega(n: int, i: int, j: int) -> ExactMatrix:
    return omega(n, i, j) if i < j else -omega(n, j, i)


def formation_b(n: int, i: int, j: int, k: int) -> ExactMatrix:
    """-(O_ij + O_jk + O_ki) with O_ba = -O_ab."""
    if len({i, j, k}) != 3:
        raise ValueError(f"indices ({i}, {j}, {k}) must be distinct")
    return -(_signed_omega(n, i, j) + _signed_omega(n, j, k) + _signed_omega(n, k, i))


def formation_label(n: int, i: int, j: int) -> str:
    return f"A{i}{j}" if n < 10 else f"A{i},{j}"


@dataclass(frozen=True)
class FormationGenerators:
    """Coupling graph on N agents and its generator matrices A_ij."""

    graph: SimpleGraph

    @property
    def n(self) -> int:
        return self.graph.n

    def generator_set(self) -> GeneratorSet:
        return GeneratorSet(self.n, tuple((formation_label(self.n, i, j), formation_a(self.n, i, j))
                                          for i, j in self.graph.sorted_edges()), "formation")


def formation_graph(gens: GeneratorSet) -> SimpleGraph:
    """Recover the coupling graph from formation generators."""
    if gens.basis_kind != "formation":
        raise ValueError(f"expected formation generators, got basis_kind {gens.basis_kind!r}")
    n = gens.dim
    edges = set()
    for lab, m in gens:
        diag = [r for (r, c), _ in m.items() if r == c]
        if len(diag) != 2:
            raise ValueError(f"generator {lab!r} is not of the form A_ij")
        i, j = diag[0] + 1, diag[1] + 1
        if m != formation_a(n, i, j):
            raise ValueError(f"generator {lab!r} is not of the form A_ij")
        edges.add((min(i, j), max(i, j)))
    return SimpleGraph(n, frozenset(edges))


def formation_controllable(graph: SimpleGraph) -> bool:
    if graph.n < 2:
        raise ValueError("formation control needs at least two agents")
    return is_connected(graph)


@lru_cache(maxsize=None)
def formation_full_rank(n: int) -> int:
    """Dimension of the Lie algebra generated by every A_ij, computed by closure."""
    return lie_rank(FormationGenerators(SimpleGraph.complete(n)).generator_set())


def formation_larc(graph: SimpleGraph) -> tuple[bool, int, int]:
    """``(rank equal, rank, full rank)`` for the graph's A_ij against all of them."""
    if graph.n < 2:
        raise ValueError("formation control needs at least two agents")
    rank = lie_rank(FormationGenerators(graph).generator_set())
    full = formation_full_rank(graph.n)
    return rank == full, rank, full


@dataclass(frozen=True)
class RelationCheck:
    holds: bool
    checked: int
    partial: bool
    failures: tuple = field(default=())


def _formation_identities(n: int):
    """Yield ``(name, lhs, rhs)`` for the five bracket identities over distinct indices."""
    A = lambda i, j: formation_a(n, i, j)
    B = lambda i, j, k: formation_b(n, i, j, k)
    pts = range(1, n + 1)
    for i, j, k in itertools.permutations(pts, 3):
        yield f"[A{i}{j},A{j}{k}]", bracket(A(i, j), A(j, k)), B(i, j, k)
        yield f"[B{i}{j}{k},A{i}{j}]", bracket(B(i, j, k), A(i, j)), (A(i, k) - A(j, k)) * 2
    for i, j, k, l in itertools.permutations(pts, 4):
        yield (f"[B{i}{j}{k},A{i}{l}]", bracket(B(i, j, k), A(i, l)),
               -A(i, j) + A(j, l) + A(i, k) - A(k, l))
        yield f"[B{i}{j}{k},B{i}{j}{l}]", bracket(B(i, j, k), B(i, j, l)), B(i, k, l) + B(j, k, l)
    for i, j, k, l, m in itertools.permutations(pts, 5):
        lhs = bracket(B(i, j, k), B(i, l, m))
        yield f"[B{i}{j}{k},B{i}{l}{m}]", lhs, B(j, l, m) + B(k, m, l)
        yield f"[B{i}{j}{k},B{i}{l}{m}]'", lhs, B(l, k, j) + B(m, j, k)


def verify_formation_relations(n: int) -> RelationCheck:
    """Instantiate every identity over all distinct index tuples on n agents.

    Below five agents some identities have no instances; the result is
    then flagged partial.
    """
    if n < 2:
        raise ValueError("formation control needs at least two agents")
    failures = []
    checked = 0
    for name, lhs, rhs in _formation_identities(n):
        checked += 1
        if lhs != rhs:
            failures.append(name)
    return RelationCheck(not failures, checked, n < 5, tuple(failures))


def formation_grading_check(n: int) -> bool:
    """[A, A] and [B, B] land in span{B}; [A, B] lands in span{A}."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    a_mats = [formation_a(n, i, j) for i, j in pairs]
    b_mats = [formation_b(n, i, j, k) for i, j, k in itertools.combinations(range(1, n + 1), 3)]
    span_a = span_of(a_mats, n)
    span_b = span_of(b_mats, n)
    if any(bracket(x, y) not in span_b for x, y in itertools.combinations(a_mats, 2)):
        return False
    if any(bracket(x, y) not in span_b for x, y in itertools.combinations(b_mats, 2)):
        return False
    return all(bracket(x, y) in span_a for x in a_mats for y in b_mats)
