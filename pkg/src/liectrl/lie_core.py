"""Exact matrix Lie-algebra arithmetic and the Lie-algebra rank oracle.

Everything here is tolerance-free: matrix entries are ``Fraction`` or
``GaussianRational`` and spans are kept in reduced row-echelon form over
the row-major vectorization of the matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .scalars import GaussianRational, Scalar, format_scalar, real_imag, to_scalar

ZERO = Fraction(0)
ONE = Fraction(1)

BASIS_KINDS = ("standard_son", "son_split", "sl3c", "formation", "raw")


class InvalidIndexError(ValueError):
    """Raised for standard-basis indices outside ``1 <= i < j <= n``."""


class DimensionMismatchError(ValueError):
    pass


class ExactMatrix:
    """Immutable square matrix with exact entries.

    Stored sparsely as ``{(row, col): value}`` with 0-based keys and only
    nonzero values, which keeps brackets of standard-basis elements cheap.
    """

    __slots__ = ("dim", "_data", "_hash")

    def __init__(self, dim: int, data: Optional[dict] = None):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"matrix dimension must be a positive integer, got {dim!r}")
        clean = {}
        for (r, c), v in (data or {}).items():
            if not (0 <= r < dim and 0 <= c < dim):
                raise IndexError(f"entry ({r}, {c}) outside a {dim}x{dim} matrix")
            v = to_scalar(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_data", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _trusted(cls, dim: int, data: dict) -> "ExactMatrix":
        # caller guarantees in-range keys, exact nonzero values
        m = object.__new__(cls)
        object.__setattr__(m, "dim", dim)
        object.__setattr__(m, "_data", data)
        object.__setattr__(m, "_hash", None)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("matrix must be square and nonempty")
        return cls(n, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})

    @classmethod
    def zero(cls, dim: int) -> "ExactMatrix":
        return cls(dim)

    @classmethod
    def identity(cls, dim: int) -> "ExactMatrix":
        return cls(dim, {(k, k): 1 for k in range(dim)})

    @classmethod
    def unit(cls, dim: int, i: int, j: int) -> "ExactMatrix":
        """The matrix unit E_ij (1-based indices)."""
        return cls(dim, {(i - 1, j - 1): 1})

    def __getitem__(self, key) -> Scalar:
        r, c = key
        if not (0 <= r < self.dim and 0 <= c < self.dim):
            raise IndexError(key)
        return self._data.get((r, c), ZERO)

    def items(self):
        """Nonzero entries as ``((row, col), value)`` with 0-based keys."""
        return self._data.items()

    @property
    def rows(self) -> tuple:
        return tuple(tuple(self._data.get((r, c), ZERO) for c in range(self.dim))
                     for r in range(self.dim))

    def is_zero(self) -> bool:
        return not self._data

    def __bool__(self):
        return bool(self._data)

    def _check(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            raise TypeError(f"expected ExactMatrix, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        out = dict(self._data)
        for k, v in other._data.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ExactMatrix._trusted(self.dim, out)

    def __neg__(self):
        return ExactMatrix._trusted(self.dim, {k: -v for k, v in self._data.items()})

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = to_scalar(c)
        if not c:
            return ExactMatrix._trusted(self.dim, {})
        return ExactMatrix._trusted(self.dim, {k: c * v for k, v in self._data.items()})

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(ONE / to_scalar(c))

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        by_row = {}
        for (k, j), b in other._data.items():
            by_row.setdefault(k, []).append((j, b))
        out = {}
        for (i, k), a in self._data.items():
            for j, b in by_row.get(k, ()):
                s = out.get((i, j), ZERO) + a * b
                if s:
                    out[(i, j)] = s
                else:
                    out.pop((i, j), None)
        return ExactMatrix._trusted(self.dim, out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._trusted(self.dim, {(c, r): v for (r, c), v in self._data.items()})

    @property
    def T(self):
        return self.transpose()

    def trace(self) -> Scalar:
        t = ZERO
        for (r, c), v in self._data.items():
            if r == c:
                t = t + v
        return t

    def is_skew(self) -> bool:
        return (self + self.transpose()).is_zero()

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_real(self) -> bool:
        return all(not (isinstance(v, GaussianRational) and v.im) for v in self._data.values())

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dim == other.dim and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.dim, frozenset(self._data.items()))))
        return self._hash

    def to_lists(self) -> list[list[str]]:
        return [[format_scalar(v) for v in row] for row in self.rows]

    def __repr__(self):
        return f"ExactMatrix.from_rows({self.to_lists()!r})"

    def __str__(self):
        cells = self.to_lists()
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def _validate_index(n: int, i: int, j: int):
    if not (isinstance(i, int) and isinstance(j, int)):
        raise InvalidIndexError(f"indices must be integers, got ({i!r}, {j!r})")
    if not (1 <= i < j <= n):
        raise InvalidIndexError(f"standard basis index ({i}, {j}) invalid for n={n}; need 1 <= i < j <= n")


def omega(n: int, i: int, j: int) -> ExactMatrix:
    """Standard basis element of so(n): +1 at (i, j), -1 at (j, i)."""
    _validate_index(n, i, j)
    return ExactMatrix._trusted(n, {(i - 1, j - 1): ONE, (j - 1, i - 1): -ONE})


def standard_indices(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def standard_index_of(m: ExactMatrix) -> Optional[tuple[int, int]]:
    """Return ``(i, j)`` if ``m`` is exactly Omega_ij, else None."""
    if len(m._data) != 2:
        return None
    for (r, c), v in m._data.items():
        if r < c and v == ONE and m._data.get((c, r)) == -ONE:
            return (r + 1, c + 1)
    return None


def signed_standard_index_of(m: ExactMatrix) -> Optional[tuple[int, tuple[int, int]]]:
    """Return ``(sign, (i, j))`` if ``m == sign * Omega_ij``."""
    idx = standard_index_of(m)
    if idx is not None:
        return 1, idx
    idx = standard_index_of(-m)
    if idx is not None:
        return -1, idx
    return None


def bracket(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Matrix commutator ``ab - ba``."""
    a._check(b)
    return a @ b - b @ a


def bracket_structure(n: int, p: tuple[int, int], q: tuple[int, int]) -> Optional[tuple[int, tuple[int, int]]]:
    """Index-level bracket of two standard basis elements of so(n).

    Evaluates the Kronecker-delta formula
    ``[O_ij, O_kl] = d_jk O_il + d_il O_jk + d_jl O_ki + d_ik O_lj``
    with ``O_ba = -O_ab``. Returns ``(sign, (a, b))`` with ``a < b``, or
    None when the bracket vanishes.
    """
    i, j = p
    k, l = q
    _validate_index(n, i, j)
    _validate_index(n, k, l)
    terms = {}
    for delta, (a, b) in ((j == k, (i, l)), (i == l, (j, k)), (j == l, (k, i)), (i == k, (l, j))):
        if not delta or a == b:
            continue
        sign, key = (1, (a, b)) if a < b else (-1, (b, a))
        terms[key] = terms.get(key, 0) + sign
    terms = {key: s for key, s in terms.items() if s}
    if not terms:
        return None
    if len(terms) > 1:
        raise AssertionError(f"bracket of O{p} and O{q} has several terms: {terms}")
    (key, s), = terms.items()
    return s, key


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered, labelled generators of a control system's vector fields.

    The drift (if any) is just another generator.
    """

    dim: int
    generators: tuple = ()
    basis_kind: str = "raw"
    pairs: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        gens = tuple((str(label), m) for label, m in self.generators)
        object.__setattr__(self, "generators", gens)
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dim!r}")
        if self.basis_kind not in BASIS_KINDS:
            raise ValueError(f"unknown basis_kind {self.basis_kind!r}; expected one of {BASIS_KINDS}")
        labels = [label for label, _ in gens]
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise ValueError(f"duplicate generator labels: {dup}")
        for label, m in gens:
            if not isinstance(m, ExactMatrix):
                raise TypeError(f"generator {label!r} is not an ExactMatrix")
            if m.dim != self.dim:
                raise DimensionMismatchError(f"generator {label!r} has dim {m.dim}, expected {self.dim}")
        if self.basis_kind == "standard_son":
            pairs = []
            for label, m in gens:
                idx = standard_index_of(m)
                if idx is None:
                    raise ValueError(f"generator {label!r} is not a standard so(n) basis element")
                pairs.append(idx)
            if len(set(pairs)) != len(pairs):
                raise ValueError("duplicate standard basis elements")
            object.__setattr__(self, "pairs", tuple(pairs))

    @classmethod
    def standard(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "GeneratorSet":
        pairs = [tuple(p) for p in pairs]
        return cls(n, tuple((omega_label(n, i, j), omega(n, i, j)) for i, j in pairs), "standard_son")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.generators)

    @property
    def matrices(self) -> tuple[ExactMatrix, ...]:
        return tuple(m for _, m in self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self) -> Iterator[tuple[str, ExactMatrix]]:
        return iter(self.generators)

    def __getitem__(self, label: str) -> ExactMatrix:
        for lab, m in self.generators:
            if lab == label:
                return m
        raise KeyError(label)

    def subset(self, indices: Iterable[int]) -> "GeneratorSet":
        """Generators at the given positions, in the given order."""
        return GeneratorSet(self.dim, tuple(self.generators[k] for k in indices), self.basis_kind)

    def select(self, labels: Iterable[str]) -> "GeneratorSet":
        lookup = dict(self.generators)
        try:
            return GeneratorSet(self.dim, tuple((lab, lookup[lab]) for lab in labels), self.basis_kind)
        except KeyError as exc:
            raise KeyError(f"unknown generator label {exc.args[0]!r}") from None

    def require_standard(self):
        if self.basis_kind != "standard_son":
            raise ValueError(f"operation needs standard so(n) generators, got basis_kind {self.basis_kind!r}")
        return self.pairs


def omega_label(n: int, i: int, j: int) -> str:
    return f"O{i}{j}" if n < 10 else f"O{i},{j}"


class SpanBasis:
    """Reduced row-echelon basis of a span of matrices.

    ``field`` is ``"real"`` (coefficients in Q; a Gaussian entry contributes
    separate real and imaginary coordinates) or ``"complex"`` (coefficients
    in Q(i)). Vectorization is row-major. Instances only grow through the
    module-private ``_insert``; treat them as values once returned.
    """

    def __init__(self, dim: int, field: str = "real"):
        if field not in ("real", "complex"):
            raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
        self.dim = dim
        self.field = field
        self._rows: dict[int, dict[int, Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def ambient_dim(self) -> int:
        n2 = self.dim * self.dim
        return 2 * n2 if self.field == "real" else n2

    def _vector(self, m: ExactMatrix) -> dict[int, Scalar]:
        if m.dim != self.dim:
            raise DimensionMismatchError(f"dimension mismatch: span of {self.dim}x{self.dim}, got {m.dim}")
        n = self.dim
        vec = {}
        if self.field == "complex":
            for (r, c), v in m._data.items():
                vec[r * n + c] = v
        else:
            n2 = n * n
            for (r, c), v in m._data.items():
                re, im = real_imag(v)
                if re:
                    vec[r * n + c] = re
                if im:
                    vec[n2 + r * n + c] = im
        return vec

    def _reduce(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        rows = self._rows
        for p in [c for c in vec if c in rows]:
            coef = vec.get(p)
            if not coef:
                continue
            for c, val in rows[p].items():
                s = vec.get(c, ZERO) - coef * val
                if s:
                    vec[c] = s
                else:
                    vec.pop(c, None)
        return vec

    def _insert(self, m: ExactMatrix) -> bool:
        """Add ``m`` to the span; True iff the rank grew."""
        vec = self._reduce(self._vector(m))
        if not vec:
            return False
        pivot = min(vec)
        lead = vec[pivot]
        if lead != ONE:
            inv = ONE / lead
            vec = {c: v * inv for c, v in vec.items()}
        for row in self._rows.values():
            coef = row.get(pivot)
            if coef:
                for c, val in vec.items():
                    s = row.get(c, ZERO) - coef * val
                    if s:
                        row[c] = s
                    else:
                        row.pop(c, None)
        self._rows[pivot] = vec
        return True

    def contains(self, m: ExactMatrix) -> bool:
        return not self._reduce(self._vector(m))

    __contains__ = contains

    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    @property
    def basis(self) -> tuple[ExactMatrix, ...]:
        """Basis matrices in pivot order (reduced echelon form)."""
        n = self.dim
        n2 = n * n
        out = []
        for p in sorted(self._rows):
            data = {}
            for c, v in self._rows[p].items():
                if c >= n2:
                    key = divmod(c - n2, n)
                    data[key] = data.get(key, ZERO) + GaussianRational(0, v)
                else:
                    key = divmod(c, n)
                    data[key] = data.get(key, ZERO) + v
            out.append(ExactMatrix(n, data))
        return tuple(out)

    def same_span(self, other: "SpanBasis") -> bool:
        if self.dim != other.dim or self.field != other.field:
            return False
        if self.rank != other.rank:
            return False
        return all(other.contains(b) for b in self.basis)

    def is_subspace_of(self, other: "SpanBasis") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __repr__(self):
        return f"SpanBasis(dim={self.dim}, field={self.field!r}, rank={self.rank})"


def span_of(matrices: Iterable[ExactMatrix], dim: int, field: str = "real") -> SpanBasis:
    span = SpanBasis(dim, field)
    for m in matrices:
        span._insert(m)
    return span


def _as_matrices(gens) -> tuple[int, tuple[ExactMatrix, ...]]:
    if isinstance(gens, GeneratorSet):
        return gens.dim, gens.matrices
    mats = tuple(gens)
    if not mats:
        raise ValueError("generator set is empty")
    return mats[0].dim, mats


def lie_closure(gens, field: str = "real") -> SpanBasis:
    """Span of the Lie algebra generated by ``gens``.

    Worklist fixpoint: every vector that enlarged the span is bracketed
    with every original generator. The result is ad-invariant under the
    generators, hence contains every iterated bracket; each productive
    insertion raises the rank, so at most ``ambient_dim`` rounds run.
    """
    dim, mats = _as_matrices(gens)
    if not mats:
        raise ValueError("lie_closure needs a nonempty generator set")
    span = SpanBasis(dim, field)
    frontier = [m for m in mats if span._insert(m)]
    while frontier:
        fresh = []
        for x in frontier:
            for g in mats:
                z = bracket(g, x)
                if z and span._insert(z):
                    fresh.append(z)
        frontier = fresh
    return span


def lie_rank(gens, field: str = "real") -> int:
    mats = gens.matrices if isinstance(gens, GeneratorSet) else tuple(gens)
    if not mats:
        return 0
    return lie_closure(mats, field).rank


def so_dim(n: int) -> int:
    return n * (n - 1) // 2


def larc_controllable(gens, full_dim: int, field: str = "real") -> bool:
    """Lie-algebra rank condition: True iff ``rank Lie(gens) == full_dim``.

    An empty generator set has rank 0, so it is controllable only for the
    zero-dimensional algebra (e.g. so(1)).
    """
    dim = gens.dim if isinstance(gens, GeneratorSet) else _as_matrices(gens)[0]
    ambient = dim * dim * (2 if field == "real" else 1)
    if not isinstance(full_dim, int) or full_dim < 0 or full_dim > ambient:
        raise ValueError(f"full_dim {full_dim!r} inconsistent with {dim}x{dim} matrices over the {field} field")
    return lie_rank(gens, field) == full_dim


def membership(span: SpanBasis, m: ExactMatrix) -> bool:
    """Exact test of ``m`` in ``span``."""
    return span.contains(m)


def normalize_direction(m: ExactMatrix) -> ExactMatrix:
    """Scale ``m`` so its first nonzero entry (row-major) is 1."""
    if m.is_zero():
        return m
    first = min(m._data)
    return m / m._data[first]


def bracket_chain(gens) -> list[frozenset]:
    """Graded bracket sets up to scaling.

    ``chain[0]`` is the generator set and
    ``chain[m+1] = chain[m] | {[A, B] : A, B in chain[m]}``, with zero
    dropped and every element normalized by ``normalize_direction``.
    Stops at the first repeated set.
    """
    dim, mats = _as_matrices(gens)
    current = frozenset(normalize_direction(m) for m in mats if m)
    chain = [current]
    while True:
        items = sorted(current, key=lambda m: sorted(m._data))
        new = set(current)
        for a in items:
            for b in items:
                z = bracket(a, b)
                if z:
                    new.add(normalize_direction(z))
        new = frozenset(new)
        if new == current:
            return chain
        chain.append(new)
        current = new


def determinant(m: ExactMatrix) -> Scalar:
    """Exact determinant by fraction Gaussian elimination."""
    n = m.dim
    a = [list(row) for row in m.rows]
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f = f / p
                for c in range(col, n):
                    a[r][c] = a[r][c] - f * a[col][c]
    return det


def minor(m: ExactMatrix, row: int, col: int) -> ExactMatrix:
    """Delete a row and a column (0-based)."""
    if m.dim < 2:
        raise ValueError("cannot take a minor of a 1x1 matrix")
    data = {}
    for (r, c), v in m._data.items():
        if r == row or c == col:
            continue
        data[(r - (r > row), c - (c > col))] = v
    return ExactMatrix._trusted(m.dim - 1, data)
