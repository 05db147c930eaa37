"""Isotropic functors and the functors coming from ``F2``-vector spaces."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from ..category import transport_embedding
from ..f2core import F2Matrix, Subspace, bits, enumerate_subspaces, subset_index, subsets, wedge_terms
from ..quadspace import QuadSpace, enumerate_embeddings, line
from .base import Functor, NaturalMap, SubFunctor, Subquotient, TensorFunctor
from .values import Embedding, PlainValue, Vector, Wedge


class IsoFunctor(Functor):
    """``W -> F2[embeddings D -> W]``, acting by transport along the cospan or by 0."""

    def __init__(self, D: QuadSpace):
        super().__init__()
        self.D = D
        self.name = f"iso:{D.label()}"

    def _build(self, W):
        embs = enumerate_embeddings(self.D, W)
        return PlainValue(W, [Embedding(h.images) for h in embs], data=embs)

    def _matrix(self, T, src, tgt):
        cols = []
        for h in src.data:
            h2 = transport_embedding(h, T)
            cols.append(0 if h2 is None else 1 << tgt.index(Embedding(h2.images)))
        return F2Matrix.from_columns(cols, tgt.dim)


class PFunctor(Functor):
    """``W -> F2[W]``, the basis ``[w]`` indexed by the integer value of ``w``."""

    name = "P"

    def _build(self, W):
        return PlainValue(W, [Vector(w) for w in range(1 << W.dim)])

    def _matrix(self, T, src, tgt):
        phi = T.linear
        return F2Matrix.from_columns([1 << phi.apply(w) for w in range(src.dim)], tgt.dim)


def exterior_matrix(phi: F2Matrix, n: int) -> F2Matrix:
    """``Λ^n(phi)`` in the lexicographic subset bases."""
    index = subset_index(phi.nrows, n)
    cols = []
    for S in subsets(phi.ncols, n):
        col = 0
        for T in wedge_terms(phi.columns[i] for i in bits(S)):
            col ^= 1 << index[T]
        cols.append(col)
    return F2Matrix.from_columns(cols, len(index))


class ExteriorPower(Functor):
    def __init__(self, n: int):
        super().__init__()
        if n < 0:
            raise ValueError("exterior degree must be nonnegative")
        self.n = n
        self.name = f"lambda:n={n}"

    def _build(self, W):
        return PlainValue(W, [Wedge(S) for S in subsets(W.dim, self.n)])

    def _matrix(self, T, src, tgt):
        return exterior_matrix(T.linear, self.n)


class KdP(SubFunctor):
    """Span of ``sum_{z in L} [z]`` over the ``(d+1)``-dimensional subspaces ``L``."""

    def __init__(self, d: int):
        if d < 0:
            raise ValueError("d must be nonnegative")
        super().__init__(functor_p())
        self.d = d
        self.name = f"kdP:d={d}"

    def subspace(self, W, amb):
        n, k = W.dim, self.d + 1
        if k > n:
            return Subspace.zero(amb.dim)
        gens = []
        for L in enumerate_subspaces(n, k):
            g = 0
            for z in L.elements():
                g |= 1 << z
            gens.append(g)
        return Subspace.span(gens, amb.dim)


@lru_cache(maxsize=None)
def functor_p() -> PFunctor:
    return PFunctor()


@lru_cache(maxsize=None)
def functor_lambda(n: int) -> ExteriorPower:
    return ExteriorPower(n)


@lru_cache(maxsize=None)
def functor_kdp(d: int) -> KdP:
    return KdP(d)


@lru_cache(maxsize=None)
def functor_qdp(d: int) -> Subquotient:
    return Subquotient(functor_p(), None, functor_kdp(d), name=f"qdP:d={d}")


@lru_cache(maxsize=None)
def functor_iso(D: QuadSpace) -> IsoFunctor:
    return IsoFunctor(D)


def iso_alpha(alpha: int) -> IsoFunctor:
    return functor_iso(line(alpha))


def functor_iota(kind: str, n: int | None = None, d: int | None = None) -> Functor:
    """The functor induced through the forgetful map from ``P``, ``lambda``, ``kdP`` or ``qdP``."""
    if kind == "P":
        return functor_p()
    if kind == "lambda":
        if n is None:
            raise ValueError("lambda needs n")
        return functor_lambda(n)
    if kind in ("kdP", "qdP"):
        if d is None:
            raise ValueError(f"{kind} needs d")
        return functor_kdp(d) if kind == "kdP" else functor_qdp(d)
    raise ValueError(f"unknown vector-space functor {kind!r}")


@lru_cache(maxsize=None)
def lambda_iso(n: int, alpha: int) -> TensorFunctor:
    """``Λ^n (x) iso_alpha``; basis ``(S, h)`` at index ``idx(S) * |iso| + idx(h)``."""
    return TensorFunctor(functor_lambda(n), iso_alpha(alpha))


# ---------------------------------------------------------------------------
# natural maps of the polynomial filtration

@lru_cache(maxsize=None)
def map_f_d(d: int) -> NaturalMap:
    """The projection ``P -> q_d P``."""
    return NaturalMap(f"f_{d}", functor_p(), functor_qdp(d), lambda W, s, t: (lambda v: v))


def g_root_column(w: int, k: int, index: dict[int, int]) -> int:
    """Sum of ``e_S`` over the ``k``-subsets ``S`` of the support of ``w``."""
    col = 0
    for S in combinations(list(bits(w)), k):
        col ^= 1 << index[sum(1 << i for i in S)]
    return col


@lru_cache(maxsize=None)
def map_g_d(d: int) -> NaturalMap:
    """``k_d P -> Λ^{d+1}`` with ``sum_{z in L}[z] -> l_1 ^ ... ^ l_{d+1}``.

    On the root it is ``[w] -> sum of e_S over (d+1)-subsets S of supp(w)``;
    expanding ``sum_{z in L}`` of this gives the wedge of a basis of ``L``.
    """

    def root(W, src, tgt):
        index = subset_index(W.dim, d + 1)
        cols = [g_root_column(w, d + 1, index) for w in range(1 << W.dim)]

        def fn(v):
            out = 0
            for w in bits(v):
                out ^= cols[w]
            return out
        return fn

    return NaturalMap(f"g_{d}", functor_kdp(d), functor_lambda(d + 1), root)
