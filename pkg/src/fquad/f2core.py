"""Exact linear algebra over F2 on int bitsets.

A vector of dimension ``n`` is a Python int whose bit ``i`` is the
coordinate on basis vector ``e_i``.  Matrices are stored row-major, one int
per row (bit ``j`` of a row is the entry in column ``j``), and act on column
vectors: ``M.apply(v)`` is ``M v``.  Column images are cached because most
maps in this package are built from the images of basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int) -> Iterator[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class F2Vector:
    dim: int
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.dim:
            raise ValueError(f"bits {self.bits:b} do not fit in dimension {self.dim}")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "F2Vector":
        value = 0
        for i, e in enumerate(entries):
            if e & 1:
                value |= 1 << i
        return cls(len(entries), value)

    @classmethod
    def unit(cls, dim: int, i: int) -> "F2Vector":
        return cls(dim, 1 << i)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.dim)]

    def __index__(self) -> int:
        return self.bits

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return F2Vector(self.dim, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0


class F2Matrix:
    """An ``nrows x ncols`` matrix over F2.

    Either the rows or the columns may be supplied; the other representation
    is derived on demand.  Instances are treated as immutable.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None,
                 cols: Sequence[int] | None = None):
        if (rows is None) == (cols is None):
            raise ValueError("give exactly one of rows or cols")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = tuple(rows) if rows is not None else None
        self._cols = tuple(cols) if cols is not None else None
        if self._rows is not None:
            if len(self._rows) != nrows or any(r < 0 or r >> ncols for r in self._rows):
                raise ValueError("row storage does not match the declared shape")
        else:
            if len(self._cols) != ncols or any(c < 0 or c >> nrows for c in self._cols):
                raise ValueError("column storage does not match the declared shape")

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "F2Matrix":
        return cls(nrows, len(cols), cols=cols)

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "F2Matrix":
        return cls(len(rows), ncols, rows=rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "F2Matrix":
        ncols = len(entries[0]) if entries else 0
        return cls.from_rows([F2Vector.from_list(r).bits for r in entries], ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, cols=[1 << i for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, cols=[0] * ncols)

    @property
    def rows(self) -> tuple[int, ...]:
        if self._rows is None:
            self._rows = _transpose(self._cols, self.nrows)
        return self._rows

    @property
    def columns(self) -> tuple[int, ...]:
        if self._cols is None:
            self._cols = _transpose(self._rows, self.ncols)
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> int:
        return (self.columns[j] >> i) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def apply(self, v: int) -> int:
        """Return ``M v``."""
        cols = self.columns
        out = 0
        for j in bits(v):
            out ^= cols[j]
        return out

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        return F2Matrix(self.nrows, other.ncols,
                        cols=[self.apply(c) for c in other.columns])

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return F2Matrix(self.nrows, self.ncols,
                        cols=[a ^ b for a, b in zip(self.columns, other.columns)])

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.ncols, self.nrows, cols=self.rows)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def kron(self, other: "F2Matrix") -> "F2Matrix":
        """Kronecker product; index ``(i, j)`` maps to ``i * other.dim + j``."""
        m = other.nrows
        cols = []
        for a in self.columns:
            for b in other.columns:
                col = 0
                if b:
                    for i in bits(a):
                        col |= b << (i * m)
                cols.append(col)
        return F2Matrix(self.nrows * m, self.ncols * other.ncols, cols=cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __hash__(self) -> int:
        return hash((self.shape, self.columns))

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols}, rows={self.to_lists()})"


def _transpose(lines: Sequence[int], width: int) -> tuple[int, ...]:
    out = [0] * width
    for i, line in enumerate(lines):
        bit = 1 << i
        for j in bits(line):
            out[j] |= bit
    return tuple(out)


class Echelon:
    """Incremental elimination keyed by lowest set bit.

    Each stored vector may carry a ``tag`` that is XOR-accumulated during
    reduction, which is how kernels and coordinates are tracked.
    """

    __slots__ = ("pivots",)

    def __init__(self) -> None:
        self.pivots: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        pivots = self.pivots
        while v:
            low = v & -v
            hit = pivots.get(low)
            if hit is None:
                # span elements all have their lowest bit on a pivot
                return v, tag
            v ^= hit[0]
            tag ^= hit[1]
        return 0, tag

    def add(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Insert ``v``; returns the residual (0 if ``v`` was dependent) and its tag."""
        v, tag = self.reduce(v, tag)
        if v:
            self.pivots[v & -v] = (v, tag)
        return v, tag

    def vectors(self) -> list[int]:
        return [v for v, _ in self.pivots.values()]


def rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row-echelon basis of the span, ordered by increasing pivot.

    The pivot of a row is its lowest set bit; every pivot column is zero in
    all other rows.
    """
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    order = sorted(ech.pivots)
    rows = [ech.pivots[p][0] for p in order]
    # back-substitute so each pivot column is clear in every other row
    for i in reversed(range(len(rows))):
        p = order[i]
        for k in range(len(rows)):
            if k != i and rows[k] & p:
                rows[k] ^= rows[i]
    return tuple(rows)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F2^ambient_dim stored by its RREF basis."""

    ambient_dim: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[int], ambient_dim: int) -> "Subspace":
        vecs = [int(v) for v in vectors]
        for v in vecs:
            if v < 0 or v >> ambient_dim:
                raise ValueError(f"vector {v:b} not in dimension {ambient_dim}")
        return cls(ambient_dim, rref(vecs))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple((r & -r).bit_length() - 1 for r in self.basis)

    @cached_property
    def _pivot_mask(self) -> int:
        mask = 0
        for p in self.pivots:
            mask |= 1 << p
        return mask

    @cached_property
    def free_columns(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.ambient_dim) if not (self._pivot_mask >> j) & 1)

    def coordinates(self, v: int) -> int:
        """Coordinates of ``v`` in the RREF basis; raises if ``v`` is outside."""
        c = 0
        w = v
        for i, (p, row) in enumerate(zip(self.pivots, self.basis)):
            if (v >> p) & 1:
                c |= 1 << i
                w ^= row
        if w:
            raise ValueError(f"vector {v:b} is not in the subspace")
        return c

    def reduce(self, v: int) -> int:
        """Canonical representative of ``v`` modulo the subspace (zero on pivot columns)."""
        for p, row in zip(self.pivots, self.basis):
            if (v >> p) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __contains__(self, v: int) -> bool:
        return self.contains(int(v))

    def combine(self, coords: int) -> int:
        out = 0
        for i in bits(coords):
            out ^= self.basis[i]
        return out

    def elements(self) -> Iterator[int]:
        """All 2^dim elements, in Gray-code order starting at 0."""
        v = 0
        yield v
        for k in range(1, 1 << self.dim):
            v ^= self.basis[(k & -k).bit_length() - 1]
            yield v

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.is_subspace_of(other)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        # Zassenhaus-free variant: kernel of (a, b) -> a + b on the direct sum
        n = self.dim
        gens = list(self.basis) + list(other.basis)
        ech = Echelon()
        inter = []
        for i, g in enumerate(gens):
            res, tag = ech.add(g, 1 << i)
            if not res:
                inter.append(self.combine(tag & ((1 << n) - 1)))
        return Subspace.span(inter, self.ambient_dim)

    def as_matrix(self) -> F2Matrix:
        return F2Matrix.from_rows(self.basis, self.ambient_dim)


def rank(M: F2Matrix) -> int:
    ech = Echelon()
    r = 0
    for row in M.rows:
        if ech.add(row)[0]:
            r += 1
    return r


def vectors_rank(vectors: Iterable[int]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def kernel_basis(M: F2Matrix) -> Subspace:
    """Basis of ``{v : M v = 0}`` computed by tracked column elimination."""
    ech = Echelon()
    kernel = []
    for j, col in enumerate(M.columns):
        res, tag = ech.add(col, 1 << j)
        if not res:
            kernel.append(tag)
    return Subspace.span(kernel, M.ncols)


def image_basis(M: F2Matrix) -> Subspace:
    return Subspace.span(M.columns, M.nrows)


def span_basis(vectors: Iterable[int], ambient_dim: int) -> Subspace:
    return Subspace.span(vectors, ambient_dim)


def solve(M: F2Matrix, b: int) -> int | None:
    """Some ``x`` with ``M x = b``, or None when ``b`` is outside the image."""
    ech = Echelon()
    for j, col in enumerate(M.columns):
        ech.add(col, 1 << j)
    res, tag = ech.reduce(b)
    return None if res else tag


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(n: int, k: int) -> Iterator[Subspace]:
    """Every ``k``-dimensional subspace of F2^n, each exactly once.

    Walks the RREF normal forms: choose pivot columns, then fill the free
    entries of each row that lie to the right of its pivot.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    for piv in combinations(range(n), k):
        pivset = set(piv)
        slots = []
        for p in piv:
            slots.append([j for j in range(p + 1, n) if j not in pivset])
        total = sum(len(s) for s in slots)
        for fill in range(1 << total):
            rows = []
            shift = 0
            for p, free in zip(piv, slots):
                row = 1 << p
                for t, j in enumerate(free):
                    if (fill >> (shift + t)) & 1:
                        row |= 1 << j
                shift += len(free)
                rows.append(row)
            yield Subspace(n, tuple(rows))


def subset_index(n: int, k: int) -> dict[int, int]:
    """Map from k-subset bitmask to its position in lexicographic order."""
    return {sum(1 << i for i in S): idx for idx, S in enumerate(combinations(range(n), k))}


def subsets(n: int, k: int) -> list[int]:
    return [sum(1 << i for i in S) for S in combinations(range(n), k)]


def determinant(rows: Sequence[int], k: int) -> int:
    """Determinant over F2 of a ``k x k`` matrix given by packed rows."""
    return 1 if len(rows) == k and vectors_rank(rows) == k else 0


def wedge_coordinates(vectors: Sequence[int], n: int) -> F2Vector:
    """Coordinates of ``v_1 ^ ... ^ v_k`` in the lexicographic basis of Λ^k.

    The coefficient on subset ``S`` is the determinant of the minor formed by
    the columns in ``S``.
    """
    k = len(vectors)
    out = 0
    for idx, S in enumerate(combinations(range(n), k)):
        minor = []
        for v in vectors:
            row = 0
            for t, j in enumerate(S):
                if (v >> j) & 1:
                    row |= 1 << t
            minor.append(row)
        if determinant(minor, k):
            out |= 1 << idx
    return F2Vector(comb(n, k), out)


def wedge_terms(vectors: Iterable[int]) -> set[int]:
    """Expand ``v_1 ^ ... ^ v_k`` multilinearly into a set of subset masks.

    Over F2 the sign is irrelevant and a repeated index kills the term, so
    the product is the symmetric difference of the admissible unions.
    """
    terms = {0}
    for v in vectors:
        terms = wedge_extend(terms, v)
        if not terms:
            break
    return terms


def wedge_extend(terms: set[int], v: int) -> set[int]:
    """Right-multiply an element of Λ^k (set of subset masks) by a vector."""
    out: set[int] = set()
    for S in terms:
        for j in bits(v & ~S):
            T = S | (1 << j)
            if T in out:
                out.remove(T)
            else:
                out.add(T)
    return out


def inverse(M: F2Matrix) -> F2Matrix:
    if M.nrows != M.ncols:
        raise ValueError("only square matrices are invertible")
    ech = Echelon()
    for j, col in enumerate(M.columns):
        if not ech.add(col, 1 << j)[0]:
            raise ValueError("matrix is singular")
    cols = []
    for i in range(M.nrows):
        res, tag = ech.reduce(1 << i)
        cols.append(tag)
    return F2Matrix.from_columns(cols, M.ncols)


def map_from_basis(basis: Sequence[int], images: Sequence[int], n: int, m: int) -> F2Matrix:
    """The linear map F2^n -> F2^m sending ``basis[i]`` to ``images[i]``."""
    if len(basis) != n:
        raise ValueError("basis must have n vectors")
    ech = Echelon()
    for i, b in enumerate(basis):
        if not ech.add(b, 1 << i)[0]:
            raise ValueError("vectors do not form a basis")
    cols = []
    for i in range(n):
        _, tag = ech.reduce(1 << i)
        w = 0
        for j in bits(tag):
            w ^= images[j]
        cols.append(w)
    return F2Matrix.from_columns(cols, m)
