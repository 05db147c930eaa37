"""Wedging with and contracting against ``h(x)`` on ``Λ^n (x) iso_alpha``.

``μ_n(z (x) [h]) = (z ^ h(x)) (x) [h]`` and
``ν_n(e_S (x) [h]) = sum_{i in S} B(e_i, h(x)) e_{S - i} (x) [h]``.
``K^n`` is the kernel of ``μ_n`` and ``L^n`` the kernel of ``ν_{n-1}`` on
``K^n`` (with ``L^1 = K^1``).  Both are also computed from explicit
spanning sets so the two descriptions can be compared.
"""

from __future__ import annotations

from functools import lru_cache

from ..f2core import F2Matrix, Subspace, bits, kernel_basis, subset_index, subsets, wedge_terms
from ..quadspace import QuadSpace
from .base import NaturalMap, SubFunctor
from .basic import iso_alpha, lambda_iso
from .values import Embedding


def _hx(W: QuadSpace, alpha: int) -> list[int]:
    """``h(x)`` for every basis embedding of ``iso_alpha(W)``."""
    return [lab.images[0] for lab in iso_alpha(alpha).on_object(W).labels]


def _linear(cols: list[int]):
    def fn(v):
        out = 0
        for j in bits(v):
            out ^= cols[j]
        return out
    return fn


@lru_cache(maxsize=None)
def mu_matrix(W: QuadSpace, alpha: int, n: int) -> F2Matrix:
    hx = _hx(W, alpha)
    niso = len(hx)
    index = subset_index(W.dim, n + 1)
    cols = []
    for S in subsets(W.dim, n):
        for k, u in enumerate(hx):
            c = 0
            for T in wedge_terms(bits_vectors(S) + [u]):
                c ^= 1 << (index[T] * niso + k)
            cols.append(c)
    return F2Matrix.from_columns(cols, len(index) * niso)


def bits_vectors(S: int) -> list[int]:
    return [1 << i for i in bits(S)]


@lru_cache(maxsize=None)
def nu_matrix(W: QuadSpace, alpha: int, n: int) -> F2Matrix:
    """``ν_n : Λ^{n+1} (x) iso -> Λ^n (x) iso``."""
    hx = _hx(W, alpha)
    niso = len(hx)
    index = subset_index(W.dim, n)
    pol = [W.polar(u) for u in hx]
    cols = []
    for S in subsets(W.dim, n + 1):
        for k in range(niso):
            c = 0
            for i in bits(S & pol[k]):
                c ^= 1 << (index[S ^ (1 << i)] * niso + k)
            cols.append(c)
    return F2Matrix.from_columns(cols, len(index) * niso)


@lru_cache(maxsize=None)
def map_mu_n(alpha: int, n: int) -> NaturalMap:
    return NaturalMap(f"mu_{n}", lambda_iso(n, alpha), lambda_iso(n + 1, alpha),
                      lambda W, s, t: _linear(mu_matrix(W, alpha, n).columns))


@lru_cache(maxsize=None)
def map_nu_n(alpha: int, n: int) -> NaturalMap:
    return NaturalMap(f"nu_{n}", lambda_iso(n + 1, alpha), lambda_iso(n, alpha),
                      lambda W, s, t: _linear(nu_matrix(W, alpha, n).columns))


@lru_cache(maxsize=None)
def map_mu(alpha: int) -> NaturalMap:
    """``iso_alpha -> Λ^1 (x) iso_alpha``, ``[h] -> h(x) (x) [h]``."""
    return NaturalMap("mu", iso_alpha(alpha), lambda_iso(1, alpha),
                      lambda W, s, t: _linear(mu_matrix(W, alpha, 0).columns))


@lru_cache(maxsize=None)
def map_nu(alpha: int) -> NaturalMap:
    """``Λ^1 (x) iso_alpha -> iso_alpha``, ``w (x) [h] -> B(w, h(x)) [h]``."""
    return NaturalMap("nu", lambda_iso(1, alpha), iso_alpha(alpha),
                      lambda W, s, t: _linear(nu_matrix(W, alpha, 0).columns))


class KFunctor(SubFunctor):
    def __init__(self, alpha: int, n: int):
        if n < 0:
            raise ValueError("n must be nonnegative")
        super().__init__(lambda_iso(n, alpha))
        self.alpha, self.n = alpha, n
        self.name = f"K:a={alpha},n={n}"

    def subspace(self, W, amb):
        return kernel_basis(mu_matrix(W, self.alpha, self.n))

    def spanning_set(self, W: QuadSpace) -> Subspace:
        """Span of ``e_S ^ h(x) (x) [h]`` over the ``(n-1)``-subsets ``S``."""
        amb = self.ambient.on_object(W)
        if self.n == 0:
            return Subspace.zero(amb.dim)
        hx = _hx(W, self.alpha)
        niso = len(hx)
        index = subset_index(W.dim, self.n)
        gens = []
        for S in subsets(W.dim, self.n - 1):
            for k, u in enumerate(hx):
                g = 0
                for T in wedge_terms(bits_vectors(S) + [u]):
                    g ^= 1 << (index[T] * niso + k)
                gens.append(g)
        return Subspace.span(gens, amb.dim)


@lru_cache(maxsize=None)
def functor_K(alpha: int, n: int) -> KFunctor:
    return KFunctor(alpha, n)


@lru_cache(maxsize=None)
def map_nu_K(alpha: int, n: int) -> NaturalMap:
    """``ν_n^K : K^{n+1} -> K^n``, the restriction of ``ν_n``."""
    return NaturalMap(f"nuK_{n}", functor_K(alpha, n + 1), functor_K(alpha, n),
                      lambda W, s, t: _linear(nu_matrix(W, alpha, n).columns))


class LFunctor(SubFunctor):
    """Kernel of ``ν_{n-1}^K`` inside ``K^n``; ``L^1`` is all of ``K^1``."""

    def __init__(self, alpha: int, n: int):
        if n < 1:
            raise ValueError("L is defined for n >= 1")
        super().__init__(functor_K(alpha, n))
        self.alpha, self.n = alpha, n
        self.name = f"L:a={alpha},n={n}"

    def subspace(self, W, amb):
        if self.n == 1:
            return Subspace.full(amb.dim)
        return kernel_basis(map_nu_K(self.alpha, self.n - 1).at(W).matrix)

    def spanning_set(self, W: QuadSpace) -> Subspace:
        """Span of ``z ^ h(x) (x) [h]`` with ``z`` a wedge of basis vectors of ``h(x)^perp``,
        expressed in the basis of ``K^n(W)``."""
        amb = self.ambient.on_object(W)
        hx = _hx(W, self.alpha)
        niso = len(hx)
        index = subset_index(W.dim, self.n)
        gens = []
        for k, u in enumerate(hx):
            perp = W.perp([u]).basis
            for S in subsets(len(perp), self.n - 1):
                g = 0
                for T in wedge_terms([perp[i] for i in bits(S)] + [u]):
                    g ^= 1 << (index[T] * niso + k)
                gens.append(amb.coords(g))
        return Subspace.span(gens, amb.dim)


@lru_cache(maxsize=None)
def functor_L(alpha: int, n: int) -> LFunctor:
    return LFunctor(alpha, n)


@lru_cache(maxsize=None)
def map_nu_tilde(alpha: int, n: int) -> NaturalMap:
    """``K^{n+1} -> L^n``: ``ν_n`` lands in ``L^n``, which the induced map verifies."""
    return NaturalMap(f"nu_tilde_{n}", functor_K(alpha, n + 1), functor_L(alpha, n),
                      lambda W, s, t: _linear(nu_matrix(W, alpha, n).columns))


@lru_cache(maxsize=None)
def map_sigma_K1(alpha: int) -> NaturalMap:
    """``K^1 -> iso_alpha``, ``h(x) (x) [h] -> [h]``.

    On the root ``e_i (x) [h]`` goes to ``[h]`` exactly when ``i`` is the
    lowest index in the support of ``h(x)``.
    """

    def root(W, src, tgt):
        hx = _hx(W, alpha)
        cols = []
        for i in range(W.dim):
            for k, u in enumerate(hx):
                cols.append(1 << k if (u & -u) == 1 << i else 0)
        return _linear(cols)

    return NaturalMap("sigma_K1", functor_K(alpha, 1), iso_alpha(alpha), root)


def wedge_tensor_vector(W: QuadSpace, alpha: int, vectors: list[int], h: int) -> int:
    """Root vector of ``v_1 ^ ... ^ v_k (x) [h]`` in ``Λ^k (x) iso_alpha(W)``."""
    iso_val = iso_alpha(alpha).on_object(W)
    niso = iso_val.dim
    k = iso_val.index(Embedding((h,)))
    index = subset_index(W.dim, len(vectors))
    out = 0
    for T in wedge_terms(vectors):
        out ^= 1 << (index[T] * niso + k)
    return out
