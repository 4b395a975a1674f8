"""Permutations, orbits, the transposition-product map and cycle tests.

Products compose right to left: ``compose(a, b)(x) == a(b(x))``. With this
convention ``(1 2)(2 3) == (1 2 3)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .lie_core import GeneratorSet, omega_label


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..n}; ``images[k-1]`` is the image of ``k``."""

    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"invalid transposition ({i} {j}) on {n} points")
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if not 1 <= x <= n:
                    raise ValueError(f"point {x} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"cycles are not disjoint at point {x}")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, v in enumerate(self.images, 1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical nontrivial cycles: each starts at its minimum, sorted by minimum."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return tuple(out)

    def orbits(self) -> "OrbitPartition":
        blocks = [set(c) for c in self.cycles()]
        moved = set().union(*blocks) if blocks else set()
        blocks += [{x} for x in range(1, self.n + 1) if x not in moved]
        return OrbitPartition.from_blocks(self.n, blocks)

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.images, 1))

    def __str__(self):
        return format_cycles(self)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` after ``b``: x -> a(b(x))."""
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")
    ai = a.images
    return Permutation(tuple(ai[y - 1] for y in b.images))


@dataclass(frozen=True)
class TranspositionSequence:
    """Ordered list of transpositions; the product depends on the order."""

    n: int
    seq: tuple = ()

    def __post_init__(self):
        seq = tuple(tuple(p) for p in self.seq)
        for p in seq:
            if len(p) != 2:
                raise ValueError(f"{p} is not a pair")
            i, j = p
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"invalid transposition {p} on {self.n} points")
        object.__setattr__(self, "seq", seq)

    @classmethod
    def from_generators(cls, gens: GeneratorSet) -> "TranspositionSequence":
        return cls(gens.dim, gens.require_standard())

    def __len__(self):
        return len(self.seq)


def iota(ts: TranspositionSequence) -> Permutation:
    """Product of the transpositions in sequence order; identity when empty."""
    images = list(range(1, ts.n + 1))
    # P <- P o (i j): swap the images at positions i and j
    for i, j in ts.seq:
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
    return Permutation(tuple(images))


def iota_of(gens: GeneratorSet) -> Permutation:
    return iota(TranspositionSequence.from_generators(gens))


def cycle_type(p: Permutation) -> tuple[tuple[int, ...], ...]:
    """Canonical disjoint-cycle decomposition without fixed points."""
    return p.cycles()


def is_n_cycle(p: Permutation) -> bool:
    """True iff ``p`` is a single cycle through all n points.

    The identity on one point counts as a 1-cycle.
    """
    if p.n == 1:
        return True
    cyc = p.cycles()
    return len(cyc) == 1 and len(cyc[0]) == p.n


@dataclass(frozen=True)
class OrbitPartition:
    n: int
    blocks: tuple

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "OrbitPartition":
        norm = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        flat = [x for b in norm for x in b]
        if sorted(flat) != list(range(1, n + 1)):
            raise ValueError(f"blocks {norm} do not partition 1..{n}")
        return cls(n, norm)

    @property
    def nontrivial_blocks(self) -> tuple:
        return tuple(b for b in self.blocks if len(b) >= 2)

    @property
    def dimension(self) -> int:
        """Dimension of the direct sum of so(|O|) over the blocks."""
        return sum(len(b) * (len(b) - 1) // 2 for b in self.blocks)

    def summand_indices(self) -> list[list[tuple[int, int]]]:
        return [[(i, j) for i, j in itertools.combinations(b, 2)] for b in self.nontrivial_blocks]


@dataclass(frozen=True)
class CycleWitness:
    """A generator subset, in the order used for the product, and its product."""

    labels: tuple
    pairs: tuple
    permutation: Permutation

    def cycle_notation(self) -> str:
        return format_cycles(self.permutation)


def cycle_controllable(gens: GeneratorSet) -> tuple[bool, Optional[CycleWitness]]:
    """Decide controllability by searching for an n-cycle witness.

    A product of transpositions forming a tree is a cycle on the tree's
    vertices whatever the order, so it suffices to look for a spanning tree
    of the associated graph. The lexicographically smallest one (greedy in
    generator-index order) is returned, edges in that order.
    """
    from .liegraph import spanning_forest_edges, tau

    pairs = gens.require_standard()
    n = gens.dim
    if n == 1:
        return True, CycleWitness((), (), Permutation.identity(1))
    forest = spanning_forest_edges(tau(gens))
    if len(forest) != n - 1:
        return False, None
    chosen = sorted(forest)
    label_of = dict(zip(pairs, gens.labels))
    perm = iota(TranspositionSequence(n, chosen))
    assert is_n_cycle(perm), "spanning tree product is not an n-cycle"
    return True, CycleWitness(tuple(label_of[p] for p in chosen), tuple(chosen), perm)


@lru_cache(maxsize=None)
def _some_ordering_is_n_cycle(n: int, pairs: tuple) -> Optional[tuple]:
    for order in itertools.permutations(pairs):
        if is_n_cycle(iota(TranspositionSequence(n, order))):
            return order
    return None


def cycle_controllable_bruteforce(gens: GeneratorSet) -> tuple[bool, Optional[CycleWitness]]:
    """Reference search over all (n-1)-subsets and all their orderings.

    Subsets are visited in lexicographic generator-index order; only
    practical for small n.
    """
    pairs = gens.require_standard()
    n = gens.dim
    if n == 1:
        return True, CycleWitness((), (), Permutation.identity(1))
    label_of = dict(zip(pairs, gens.labels))
    for combo in itertools.combinations(sorted(pairs), n - 1):
        order = _some_ordering_is_n_cycle(n, combo)
        if order is not None:
            perm = iota(TranspositionSequence(n, order))
            return True, CycleWitness(tuple(label_of[p] for p in order), tuple(order), perm)
    return False, None


def minimal_generating_subset(gens: GeneratorSet) -> tuple[tuple[int, int], ...]:
    """Edges of the greedy spanning forest of the associated graph, sorted."""
    from .liegraph import spanning_forest_edges, tau

    gens.require_standard()
    return tuple(sorted(spanning_forest_edges(tau(gens))))


def submanifold_orbits(gens: GeneratorSet) -> OrbitPartition:
    """Orbits of the transposition product of a minimal generating subset.

    Each nontrivial orbit O contributes the summand span{O_ij : i, j in O}
    to the Lie algebra of the controllable submanifold.
    """
    xi = minimal_generating_subset(gens)
    return iota(TranspositionSequence(gens.dim, xi)).orbits()


# text form -----------------------------------------------------------------

def format_cycles(p: Permutation) -> str:
    """Canonical cycle notation, e.g. ``(1 2 3)(4 5)``; identity is ``e``."""
    cyc = p.cycles()
    if not cyc:
        return "e"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation (``e`` for identity) into a degree-n permutation.

    Cycles must be disjoint; single-digit points may be written without
    separators as in ``(1342)`` when every point is below 10.
    """
    text = text.strip()
    if text == "e":
        return Permutation.identity(n)
    if not text:
        raise ValueError("empty cycle notation")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"unexpected text {text[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        body = m.group(1).strip()
        if re.fullmatch(r"\d+", body) and n < 10 and len(body) > 1:
            pts = [int(ch) for ch in body]
        else:
            parts = re.split(r"[\s,]+", body)
            if not body or not all(re.fullmatch(r"\d+", x) for x in parts):
                raise ValueError(f"bad cycle ({body}) in {text!r}")
            pts = [int(x) for x in parts]
        cycles.append(pts)
    if text[pos:].strip():
        raise ValueError(f"unexpected text {text[pos:]!r} in {text!r}")
    return Permutation.from_cycles(n, cycles)


def transposition_labels(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[str, ...]:
    return tuple(omega_label(n, i, j) for i, j in pairs)
