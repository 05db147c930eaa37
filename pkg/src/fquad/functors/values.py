"""Functor values (labeled bases) and the matrices between them.

Every value is, up to a choice of basis, a subquotient ``U / Lo`` of a
*plain* value whose basis is a list of labels.  A value exposes ``rep(j)``,
the plain ("root") vector representing its ``j``-th basis element, and
``coords(v)``, the inverse direction for root vectors lying in ``U``.  Maps
between values are induced from linear maps between their roots.
"""

from __future__ import annotations

from typing import Callable, NamedTuple, Sequence

from ..f2core import F2Matrix, Subspace, bits, rank, rref
from ..quadspace import QuadSpace


class DefectError(RuntimeError):
    """A map left the subfunctor it was supposed to preserve."""


# ---------------------------------------------------------------------------
# basis labels

class Vector(NamedTuple):
    w: int

    def __str__(self) -> str:
        return f"[{self.w}]"


class Embedding(NamedTuple):
    images: tuple[int, ...]

    def __str__(self) -> str:
        return "[h:" + ",".join(map(str, self.images)) + "]"


class Wedge(NamedTuple):
    subset: int

    def __str__(self) -> str:
        idx = list(bits(self.subset))
        return "^".join(f"e{i}" for i in idx) if idx else "1"


class MixLabel(NamedTuple):
    f: tuple[int, ...]
    h: tuple[int, ...]

    def __str__(self) -> str:
        return f"[f:{','.join(map(str, self.f))}]x[h:{','.join(map(str, self.h))}]"


class Pair(NamedTuple):
    w1: int
    w2: int

    def __str__(self) -> str:
        return f"({self.w1},{self.w2})"


class UnorderedPair(NamedTuple):
    w1: int
    w2: int

    def __str__(self) -> str:
        return f"{{{self.w1},{self.w2}}}"


class TensorLabel(NamedTuple):
    left: object
    right: object

    def __str__(self) -> str:
        return f"{self.left}(x){self.right}"


class SubBasisVector(NamedTuple):
    vector: int

    def __str__(self) -> str:
        return f"<{self.vector:x}>"


class CosetRep(NamedTuple):
    vector: int

    def __str__(self) -> str:
        return f"<{self.vector:x}>+Lo"


def kron_vec(a: int, b: int, nb: int) -> int:
    out = 0
    for p in bits(a):
        out |= b << (p * nb)
    return out


# ---------------------------------------------------------------------------
# values

class FunctorValue:
    """``F(W)``: an ordered basis of labels plus its link to a plain root."""

    space: QuadSpace
    labels: tuple

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def root_dim(self) -> int:
        raise NotImplementedError

    @property
    def is_plain(self) -> bool:
        return False

    def rep(self, j: int) -> int:
        raise NotImplementedError

    def rep_vec(self, x: int) -> int:
        out = 0
        for j in bits(x):
            out ^= self.rep(j)
        return out

    def coords(self, v: int) -> int:
        raise NotImplementedError

    def kernel_reps(self) -> list[int]:
        """Root vectors that stand for zero in this value."""
        return []

    def index(self, label) -> int:
        try:
            table = self._index
        except AttributeError:
            table = self._index = {lab: i for i, lab in enumerate(self.labels)}
        return table[label]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.space}, dim={self.dim})"


class PlainValue(FunctorValue):
    def __init__(self, space: QuadSpace, labels: Sequence, data: object = None):
        self.space = space
        self.labels = tuple(labels)
        self.data = data

    @property
    def root_dim(self) -> int:
        return len(self.labels)

    @property
    def is_plain(self) -> bool:
        return True

    def rep(self, j: int) -> int:
        return 1 << j

    def rep_vec(self, x: int) -> int:
        return x

    def coords(self, v: int) -> int:
        if v >> len(self.labels):
            raise DefectError("vector outside the value")
        return v


class SubquotientValue(FunctorValue):
    """``upper / lower`` inside ``ambient`` (both given in ambient coordinates).

    The basis consists of the RREF rows of ``upper`` reduced modulo ``lower``,
    so a quotient by ``lower`` inside the full space uses the non-pivot
    coordinates of ``lower`` as coset representatives.
    """

    def __init__(self, ambient: FunctorValue, upper: Subspace, lower: Subspace | None = None):
        n = ambient.dim
        lower = lower if lower is not None else Subspace.zero(n)
        if upper.ambient_dim != n or lower.ambient_dim != n:
            raise ValueError("subspaces must live in the ambient value")
        if not lower <= upper:
            raise ValueError("lower subspace must lie in the upper one")
        self.ambient = ambient
        self.space = ambient.space
        self.upper = upper
        self.lower = lower
        self.reps = Subspace(n, rref(lower.reduce(u) for u in upper.basis))
        kind = SubBasisVector if not lower.dim else CosetRep
        self.labels = tuple(kind(r) for r in self.reps.basis)

    @property
    def root_dim(self) -> int:
        return self.ambient.root_dim

    def local_rep(self, j: int) -> int:
        return self.reps.basis[j]

    def local_coords(self, x: int) -> int:
        if not self.upper.contains(x):
            raise DefectError("vector leaves the subfunctor")
        return self.reps.coordinates(self.lower.reduce(x))

    def rep(self, j: int) -> int:
        return self.ambient.rep_vec(self.reps.basis[j])

    def coords(self, v: int) -> int:
        return self.local_coords(self.ambient.coords(v))

    def kernel_reps(self) -> list[int]:
        return [self.ambient.rep_vec(b) for b in self.lower.basis] + self.ambient.kernel_reps()


class TensorValue(FunctorValue):
    """``A(W) (x) B(W)``; basis index ``i * dim B + j`` as in ``F2Matrix.kron``."""

    def __init__(self, A: FunctorValue, B: FunctorValue):
        self.A, self.B = A, B
        self.space = A.space
        self.labels = tuple(TensorLabel(a, b) for a in A.labels for b in B.labels)

    @property
    def root_dim(self) -> int:
        return self.A.root_dim * self.B.root_dim

    @property
    def is_plain(self) -> bool:
        return self.A.is_plain and self.B.is_plain

    def rep(self, j: int) -> int:
        if self.is_plain:
            return 1 << j
        i, k = divmod(j, self.B.dim)
        return kron_vec(self.A.rep(i), self.B.rep(k), self.B.root_dim)

    def rep_vec(self, x: int) -> int:
        return x if self.is_plain else super().rep_vec(x)

    def coords(self, v: int) -> int:
        if self.is_plain:
            if v >> self.dim:
                raise DefectError("vector outside the value")
            return v
        nrb, nb = self.B.root_dim, self.B.dim
        rows: dict[int, int] = {}
        for p in bits(v):
            i, j = divmod(p, nrb)
            rows[i] = rows.get(i, 0) | (1 << j)
        cols: dict[int, int] = {}
        for i, r in rows.items():
            for k in bits(self.B.coords(r)):
                cols[k] = cols.get(k, 0) ^ (1 << i)
        out = 0
        for k, a in cols.items():
            for i in bits(self.A.coords(a)):
                out |= 1 << (i * nb + k)
        return out

    def kernel_reps(self) -> list[int]:
        nrb = self.B.root_dim
        out = [kron_vec(k, self.B.rep(j), nrb) for k in self.A.kernel_reps() for j in range(self.B.dim)]
        out += [kron_vec(self.A.rep(i), k, nrb) for i in range(self.A.dim) for k in self.B.kernel_reps()]
        return out


# ---------------------------------------------------------------------------
# maps

class FunctorMap:
    """A linear map ``source -> target`` in the bases of the two values."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FunctorValue, target: FunctorValue, matrix: F2Matrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match {target.dim}x{source.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __matmul__(self, other: "FunctorMap") -> "FunctorMap":
        return FunctorMap(other.source, self.target, self.matrix @ other.matrix)

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __repr__(self) -> str:
        return f"FunctorMap({self.source!r} -> {self.target!r})"


def induced(src: FunctorValue, tgt: FunctorValue, root_map: Callable[[int], int],
            check: bool = True) -> F2Matrix:
    """Matrix of the map induced on values by a linear map between roots.

    With ``check`` the zero classes of ``src`` must go to zero classes of
    ``tgt``; landing outside ``tgt`` always raises ``DefectError``.
    """
    cols = [tgt.coords(root_map(src.rep(j))) for j in range(src.dim)]
    if check:
        for k in src.kernel_reps():
            if tgt.coords(root_map(k)):
                raise DefectError("map does not kill the lower subfunctor")
    return F2Matrix.from_columns(cols, tgt.dim)


def induced_local(src: SubquotientValue, tgt: SubquotientValue, M: F2Matrix) -> F2Matrix:
    """Matrix induced on subquotients by a matrix between their ambients."""
    cols = [tgt.local_coords(M.apply(src.local_rep(j))) for j in range(src.dim)]
    for lo in src.lower.basis:
        if tgt.local_coords(M.apply(lo)):
            raise DefectError("map does not preserve the lower subfunctor")
    return F2Matrix.from_columns(cols, tgt.dim)
