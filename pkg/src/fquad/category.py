"""Morphisms of the cospan category Tq.

A morphism ``V -> W`` is represented by a diagram ``V --left--> X <--right-- W``
of isometries into a nondegenerate apex ``X``.  Composition glues along the
shared object with the pseudo push-out: for ``X1 <-g1- W -f2-> X2`` write
``X1 = g1(W) (+) C`` with ``C = g1(W)^perp`` and map ``g1(w) + c`` to
``f2(w) + c`` inside ``X2 (+) C``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .f2core import Echelon, F2Matrix, Subspace, inverse, kernel_basis, map_from_basis
from .quadspace import (
    DegenerateSpaceError,
    IsoMap,
    IsometryError,
    QuadSpace,
    H0,
    hyperbolic_power,
    orthogonal_group,
    orthogonal_sum,
    random_embedding,
    symplectic_basis,
)


@dataclass(frozen=True, eq=False)
class TqMorphism:
    source: QuadSpace
    target: QuadSpace
    apex: QuadSpace
    left: IsoMap
    right: IsoMap

    @cached_property
    def linear(self) -> F2Matrix:
        """Cached ``epsilon(self)``."""
        return _projector(self.right) @ self.left.matrix

    def __repr__(self) -> str:
        return (f"TqMorphism({self.source} -> {self.apex} <- {self.target}; "
                f"left={list(self.left.images)}, right={list(self.right.images)})")


def make_tq(f: IsoMap, g: IsoMap) -> TqMorphism:
    """The morphism ``[V -f-> X <-g- W]``; both maps are revalidated."""
    if f.target != g.target:
        raise IsometryError("left and right maps must share the apex")
    X = f.target
    if not X.is_nondegenerate:
        raise DegenerateSpaceError(f"apex {X} is degenerate")
    for m in (f, g):
        IsoMap(m.source, m.target, m.images)
    return TqMorphism(f.source, g.source, X, f, g)


def identity(V: QuadSpace) -> TqMorphism:
    idv = IsoMap.identity(V)
    return make_tq(idv, idv)


def _projector(g: IsoMap) -> F2Matrix:
    """Orthogonal projection ``X -> W`` onto ``g(W)``, read back through ``g``."""
    X, W = g.target, g.source
    polars = [X.polar(w) for w in g.images]
    ginv = inverse(W.gram_matrix)
    cols = []
    for i in range(X.dim):
        t = 0
        for j, p in enumerate(polars):
            if (p >> i) & 1:
                t |= 1 << j
        cols.append(ginv.apply(t))
    return F2Matrix.from_columns(cols, W.dim)


def epsilon(T: TqMorphism) -> F2Matrix:
    """The linear map ``p_right o left`` underlying ``T``."""
    return T.linear


def compose_tq(T1: TqMorphism, T2: TqMorphism) -> TqMorphism:
    """``T2 o T1`` for ``T1: V -> W`` and ``T2: W -> Z``."""
    if T1.target != T2.source:
        raise ValueError(f"cannot compose: {T1.target} is not {T2.source}")
    X1, g1 = T1.apex, T1.right
    X2, f2 = T2.apex, T2.left
    C = X1.perp(g1.images)
    Cq, _ = X1.restrict(C.basis)
    Y = orthogonal_sum(X2, Cq, name=f"({X2.label()})+C{Cq.dim}" if Cq.dim else X2.label())
    proj = _projector(g1)
    shift = X2.dim

    def glue(x: int) -> int:
        w = proj.apply(x)
        c = x ^ g1.apply(w)
        return f2.apply(w) | (C.coordinates(c) << shift)

    left = IsoMap(T1.source, Y, [glue(x) for x in T1.left.images])
    right = IsoMap(T2.target, Y, T2.right.images)
    return TqMorphism(T1.source, T2.target, Y, left, right)


def transport_embedding(h: IsoMap, T: TqMorphism) -> IsoMap | None:
    """The unique ``h'`` with ``right o h' = left o h``, or None if the pullback is smaller."""
    out = []
    for v in h.images:
        pre = T.right.preimage(T.left.apply(v))
        if pre is None:
            return None
        out.append(pre)
    return IsoMap(h.source, T.target, out, check=False)


def apply_relation_move(T: TqMorphism, alpha: IsoMap) -> TqMorphism:
    """The related representative ``[alpha o left, alpha o right]``."""
    if alpha.source != T.apex:
        raise IsometryError("alpha must start at the apex")
    IsoMap(alpha.source, alpha.target, alpha.images)
    if not alpha.target.is_nondegenerate:
        raise DegenerateSpaceError("relation move into a degenerate space")
    return TqMorphism(T.source, T.target, alpha.target, alpha @ T.left, alpha @ T.right)


def tq_orthogonal_sum(T1: TqMorphism, T2: TqMorphism) -> TqMorphism:
    """``T1 (+) T2 : V1 (+) V2 -> W1 (+) W2`` with apex ``X1 (+) X2``."""
    X = orthogonal_sum(T1.apex, T2.apex)
    V = orthogonal_sum(T1.source, T2.source)
    W = orthogonal_sum(T1.target, T2.target)
    s = T1.apex.dim
    left = IsoMap(V, X, list(T1.left.images) + [w << s for w in T2.left.images], check=False)
    right = IsoMap(W, X, list(T1.right.images) + [w << s for w in T2.right.images], check=False)
    return TqMorphism(V, W, X, left, right)


# ---------------------------------------------------------------------------
# lifts through the forgetful functor

def lift_linear(phi: F2Matrix, V: QuadSpace, W: QuadSpace) -> TqMorphism:
    """A morphism ``V -> W`` of Tq with ``epsilon = phi``.

    The apex is ``W (+) H0^s``.  The correction ``c`` added to ``phi`` vanishes
    on a complement ``K`` of ``R cap ker(phi)`` in the singular radical ``R``
    of the defect form ``q_V + q_W o phi``; on the remaining basis vectors
    ``u_i`` the ``i``-th hyperbolic block carries ``a_i + eps_i b_i`` for
    ``u_i`` and ``d_ij b_i`` for every later ``u_j``, which repairs q and B
    and makes ``phi + c`` injective.
    """
    if phi.shape != (W.dim, V.dim):
        raise ValueError(f"phi has shape {phi.shape}, expected {(W.dim, V.dim)}")
    if not W.is_nondegenerate:
        raise DegenerateSpaceError(f"{W} is degenerate")
    n = V.dim

    def defect_q(v: int) -> int:
        return V.q(v) ^ W.q(phi.apply(v))

    def defect_b(u: int, v: int) -> int:
        return V.B(u, v) ^ W.B(phi.apply(u), phi.apply(v))

    gram_rows = []
    for i in range(n):
        row = 0
        for j in range(n):
            if defect_b(1 << i, 1 << j):
                row |= 1 << j
        gram_rows.append(row)
    brad = kernel_basis(F2Matrix.from_rows(gram_rows, n))
    # defect_q is additive on the radical of its polar form
    R = Subspace.span([v for v in brad.basis if not defect_q(v)]
                      + [a ^ b for a in brad.basis for b in brad.basis
                         if defect_q(a) and defect_q(b)], n)
    kerphi = kernel_basis(phi)
    N = R.intersection(kerphi)
    ech = Echelon()
    for v in N.basis:
        ech.add(v)
    K = [v for v in R.basis if ech.add(v)[0]]
    ech = Echelon()
    for v in K:
        ech.add(v)
    U = [1 << i for i in range(n) if ech.add(1 << i)[0]]
    s = len(U)
    C = hyperbolic_power(s)
    X = orthogonal_sum(W, C, name=f"{W.label()}+H0^{s}" if s else W.label())
    shift = W.dim
    corr = []
    for i, u in enumerate(U):
        c = (1 << (2 * i)) | (defect_q(u) << (2 * i + 1))
        for k in range(i):
            if defect_b(U[k], u):
                c |= 1 << (2 * k + 1)
        corr.append(c << shift)
    basis = K + U
    images = [phi.apply(v) for v in K] + [phi.apply(u) ^ c for u, c in zip(U, corr)]
    f = map_from_basis(basis, images, n, X.dim)
    left = IsoMap(V, X, f.columns)
    right = IsoMap(W, X, [1 << i for i in range(W.dim)], check=False)
    return TqMorphism(V, W, X, left, right)


# ---------------------------------------------------------------------------
# standard shapes

def isometry_morphism(sigma: IsoMap) -> TqMorphism:
    """``[V -sigma-> W <-id- W]`` for a bijective isometry ``sigma``."""
    W = sigma.target
    return make_tq(sigma, IsoMap.identity(W))


def inclusion_morphism(V: QuadSpace, E: QuadSpace) -> TqMorphism:
    """``[V -> V (+) E <-id- V (+) E]``, a morphism ``V -> V (+) E``."""
    X = orthogonal_sum(V, E)
    incl = IsoMap(V, X, [1 << i for i in range(V.dim)], check=False)
    return make_tq(incl, IsoMap.identity(X))


def retraction_morphism(V: QuadSpace, E: QuadSpace) -> TqMorphism:
    """``[V (+) E -id-> V (+) E <- V]``, a morphism ``V (+) E -> V``."""
    X = orthogonal_sum(V, E)
    incl = IsoMap(V, X, [1 << i for i in range(V.dim)], check=False)
    return make_tq(IsoMap.identity(X), incl)


def adapted_symplectic_basis(V: QuadSpace, u: int) -> list[int]:
    """Symplectic basis ``[u, v, v_1, w_1, ...]`` of ``V`` beginning with ``u``."""
    if not u:
        raise ValueError("need a nonzero vector")
    pu = V.polar(u)
    v = pu & -pu
    rest = V.perp([u, v])
    sub, incl = V.restrict(rest.basis)
    out = [u, v]
    for a, b in symplectic_basis(sub):
        out.extend([incl.apply(a), incl.apply(b)])
    return out


def isolating_morphism(V: QuadSpace, u: int) -> TqMorphism:
    """``[V -f-> V (+) H0^(dim V - 1) <-i- V]`` with ``epsilon = id``.

    ``f`` fixes ``u`` and adds a distinct singular ``a``-vector of a fresh
    hyperbolic block to every other vector of an adapted symplectic basis,
    so ``f(y)`` lies in the image of ``i`` only for ``y`` in ``<u>``.
    """
    basis = adapted_symplectic_basis(V, u)
    extra = hyperbolic_power(V.dim - 1)
    X = orthogonal_sum(V, extra)
    images = [u] + [b | (1 << (V.dim + 2 * k)) for k, b in enumerate(basis[1:])]
    f = map_from_basis(basis, images, V.dim, X.dim)
    left = IsoMap(V, X, f.columns)
    right = IsoMap(V, X, [1 << i for i in range(V.dim)], check=False)
    return TqMorphism(V, V, X, left, right)


def relation_inclusion(T: TqMorphism, E: QuadSpace | None = None) -> TqMorphism:
    """Relation move along the inclusion ``apex -> apex (+) E`` (default ``E = H0``)."""
    E = E if E is not None else H0()
    X = orthogonal_sum(T.apex, E)
    alpha = IsoMap(T.apex, X, [1 << i for i in range(T.apex.dim)], check=False)
    return apply_relation_move(T, alpha)


# ---------------------------------------------------------------------------
# seeded families used for naturality and functoriality checks

DEFAULT_SEED = 1729


def random_linear(m: int, n: int, rng: random.Random) -> F2Matrix:
    return F2Matrix.from_columns([rng.getrandbits(m) if m else 0 for _ in range(n)], m)


def random_isometry(V: QuadSpace, rng: random.Random) -> IsoMap:
    g = random_embedding(V, V, rng)
    if g is None:
        raise IsometryError(f"{V} has no isometries")
    return g


def random_tq(V: QuadSpace, W: QuadSpace, rng: random.Random) -> TqMorphism:
    """A lift of a random linear map, disguised by isometries and relation moves."""
    T = lift_linear(random_linear(W.dim, V.dim, rng), V, W)
    if V.dim and rng.random() < 0.5:
        T = compose_tq(isometry_morphism(random_isometry(V, rng)), T)
    if rng.random() < 0.5:
        T = apply_relation_move(T, random_isometry(T.apex, rng))
    if rng.random() < 0.3:
        T = relation_inclusion(T)
    return T


def endomorphism_family(V: QuadSpace, seed: int = DEFAULT_SEED, lifts: int = 6,
                        isometries: int | None = None, isolating: int | None = None) -> list[TqMorphism]:
    """Identities, isometries, isolating shapes, lifts and relation moves on ``V``.

    ``isometries`` / ``isolating`` cap how many are sampled (None = all).
    """
    rng = random.Random(seed)
    fam = [identity(V)]
    if not V.dim:
        return fam
    if isometries is None:
        fam += [isometry_morphism(g) for g in orthogonal_group(V)]
    else:
        fam += [isometry_morphism(random_isometry(V, rng)) for _ in range(isometries)]
    fam.append(compose_tq(inclusion_morphism(V, H0()), retraction_morphism(V, H0())))
    us = list(range(1, 1 << V.dim))
    if isolating is not None:
        us = sorted(rng.sample(us, min(isolating, len(us))))
    fam += [isolating_morphism(V, u) for u in us]
    lifted = [lift_linear(random_linear(V.dim, V.dim, rng), V, V) for _ in range(lifts)]
    fam += lifted
    fam += [relation_inclusion(T) for T in lifted[:2]]
    fam += [apply_relation_move(T, random_isometry(T.apex, rng)) for T in lifted[:2]]
    return fam


def block_morphisms(V: QuadSpace) -> list[TqMorphism]:
    """``V -> V (+) H0`` and back."""
    return [inclusion_morphism(V, H0()), retraction_morphism(V, H0())]
