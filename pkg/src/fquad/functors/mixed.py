"""Mixed functors, their swap symmetry, and the filtration of ``m_alpha``."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..f2core import F2Matrix, Subspace, bits, enumerate_subspaces, kernel_basis, subset_index
from ..quadspace import QuadSpace, enumerate_embeddings
from .base import Functor, NaturalMap, SubFunctor, Subquotient, TensorFunctor
from .basic import functor_kdp, g_root_column, iso_alpha, lambda_iso
from .values import Embedding, MixLabel, Pair, PlainValue, UnorderedPair


class MixGeneral(Functor):
    """Pairs ``(f, h)``, ``f: F2^p -> W`` linear and ``h: D -> W`` an embedding,
    with ``B(f(v_i), h(d_j))`` prescribed by bit ``i * dim D + j`` of ``eta``."""

    def __init__(self, p: int, D: QuadSpace, eta: int):
        super().__init__()
        if eta >> (p * D.dim):
            raise ValueError("eta has too many bits")
        self.p, self.D, self.eta = p, D, eta
        self.name = f"mixg:p={p},D={D.label()},eta={eta}"

    def _build(self, W):
        labels = []
        for h in enumerate_embeddings(self.D, W):
            hd = h.images
            choices = []
            for i in range(self.p):
                want = [(self.eta >> (i * self.D.dim + j)) & 1 for j in range(self.D.dim)]
                choices.append([w for w in range(1 << W.dim)
                                if all(W.B(w, x) == b for x, b in zip(hd, want))])
            labels.extend(MixLabel(f, hd) for f in product(*choices))
        labels.sort()
        return PlainValue(W, labels)

    def _matrix(self, T, src, tgt):
        phi = T.linear
        cols = []
        for lab in src.labels:
            images = []
            for v in lab.h:
                pre = T.right.preimage(T.left.apply(v))
                if pre is None:
                    break
                images.append(pre)
            if len(images) < len(lab.h):
                cols.append(0)
                continue
            f2 = tuple(phi.apply(v) for v in lab.f)
            cols.append(1 << tgt.index(MixLabel(f2, tuple(images))))
        return F2Matrix.from_columns(cols, tgt.dim)


def _transport_pair(T, phi, w1: int, w2: int):
    """Image of the pair ``(w1, w2)``, or None when ``w1 + w2`` does not transport."""
    pre = T.right.preimage(T.left.apply(w1 ^ w2))
    if pre is None:
        return None
    u2 = phi.apply(w2)
    return pre ^ u2, u2


class MixAB(Functor):
    """Ordered pairs ``(w1, w2)`` with ``q(w1 + w2) = alpha`` and ``B(w1, w2) = beta``."""

    def __init__(self, alpha: int, beta: int):
        super().__init__()
        self.alpha, self.beta = alpha, beta
        self.name = f"mix:a={alpha},b={beta}"

    def _build(self, W):
        labels = [Pair(w1, w2) for w1 in range(1 << W.dim) for w2 in range(1 << W.dim)
                  if w1 != w2 and W.q(w1 ^ w2) == self.alpha and W.B(w1, w2) == self.beta]
        return PlainValue(W, labels)

    def _matrix(self, T, src, tgt):
        phi = T.linear
        cols = []
        for w1, w2 in src.labels:
            img = _transport_pair(T, phi, w1, w2)
            cols.append(0 if img is None else 1 << tgt.index(Pair(*img)))
        return F2Matrix.from_columns(cols, tgt.dim)


def mix_relabel(label: Pair) -> MixLabel:
    """The bijection ``(w1, w2) <-> [a -> w2] (x) [x -> w1 + w2]``."""
    return MixLabel((label.w2,), (label.w1 ^ label.w2,))


class MFunctor(Functor):
    """Unordered pairs ``{w1, w2}`` with ``q(w1 + w2) = alpha`` and ``B(w1, w2) = 1``."""

    def __init__(self, alpha: int):
        super().__init__()
        self.alpha = alpha
        self.name = f"m:a={alpha}"

    def _build(self, W):
        labels = [UnorderedPair(x, y) for x in range(1 << W.dim) for y in range(x + 1, 1 << W.dim)
                  if W.q(x ^ y) == self.alpha and W.B(x, y)]
        return PlainValue(W, labels)

    def _matrix(self, T, src, tgt):
        phi = T.linear
        cols = []
        for x, y in src.labels:
            img = _transport_pair(T, phi, x, y)
            cols.append(0 if img is None else 1 << tgt.index(UnorderedPair(*sorted(img))))
        return F2Matrix.from_columns(cols, tgt.dim)


@lru_cache(maxsize=None)
def functor_mix_general(p: int, D: QuadSpace, eta: int) -> MixGeneral:
    return MixGeneral(p, D, eta)


@lru_cache(maxsize=None)
def functor_mix_ab(alpha: int, beta: int) -> MixAB:
    return MixAB(alpha, beta)


@lru_cache(maxsize=None)
def functor_m(alpha: int, beta: int = 1) -> MFunctor:
    if beta != 1:
        raise ValueError("the swap action is free only for beta = 1")
    return MFunctor(alpha)


def _relabel_map(name, source, target, rule):
    """Natural map sending root label ``l`` to the sum of the labels in ``rule(l)``."""

    def root(W, src, tgt):
        amb_src, amb_tgt = src, tgt
        while hasattr(amb_src, "ambient"):
            amb_src = amb_src.ambient
        while hasattr(amb_tgt, "ambient"):
            amb_tgt = amb_tgt.ambient
        cols = []
        for lab in amb_src.labels:
            c = 0
            for t in rule(W, lab):
                c ^= 1 << amb_tgt.index(t)
            cols.append(c)

        def fn(v):
            out = 0
            for j in bits(v):
                out ^= cols[j]
            return out
        return fn

    return NaturalMap(name, source, target, root)


@lru_cache(maxsize=None)
def tau_action(alpha: int, beta: int) -> NaturalMap:
    """The swap ``(w1, w2) -> (w2, w1)``."""
    F = functor_mix_ab(alpha, beta)
    return _relabel_map(f"tau_{alpha}{beta}", F, F, lambda W, p: [Pair(p.w2, p.w1)])


class Sigma(SubFunctor):
    """Invariants of the swap."""

    def __init__(self, alpha: int, beta: int):
        super().__init__(functor_mix_ab(alpha, beta))
        self.alpha, self.beta = alpha, beta
        self.name = f"sigma:a={alpha},b={beta}"

    def subspace(self, W, amb):
        tau = tau_action(self.alpha, self.beta).at(W).matrix
        return kernel_basis(tau + F2Matrix.identity(amb.dim))


@lru_cache(maxsize=None)
def functor_sigma(alpha: int, beta: int) -> Sigma:
    return Sigma(alpha, beta)


@lru_cache(maxsize=None)
def map_norm(alpha: int, beta: int) -> NaturalMap:
    """``1 + tau : Mix -> Sigma``."""
    return _relabel_map(f"norm_{alpha}{beta}", functor_mix_ab(alpha, beta), functor_sigma(alpha, beta),
                        lambda W, p: [p, Pair(p.w2, p.w1)])


@lru_cache(maxsize=None)
def map_m_to_mix(alpha: int) -> NaturalMap:
    return _relabel_map(f"inj_{alpha}", functor_m(alpha), functor_mix_ab(alpha, 1),
                        lambda W, u: [Pair(u.w1, u.w2), Pair(u.w2, u.w1)])


@lru_cache(maxsize=None)
def map_mix_to_m(alpha: int) -> NaturalMap:
    return _relabel_map(f"proj_{alpha}", functor_mix_ab(alpha, 1), functor_m(alpha),
                        lambda W, p: [UnorderedPair(*sorted(p))])


@lru_cache(maxsize=None)
def map_m_to_sigma(alpha: int) -> NaturalMap:
    return _relabel_map(f"m_sigma_{alpha}", functor_m(alpha), functor_sigma(alpha, 1),
                        lambda W, u: [Pair(u.w1, u.w2), Pair(u.w2, u.w1)])


# ---------------------------------------------------------------------------
# the filtration k_d m

def kdm_generator(W: QuadSpace, value, x: int, y: int, L: Subspace) -> int:
    """Root vector of ``sum_{z in L} [{x + z, y + z}]`` in ``m(W)``."""
    g = 0
    for z in L.elements():
        g ^= 1 << value.index(UnorderedPair(*sorted((x ^ z, y ^ z))))
    return g


def perp_subspaces(W: QuadSpace, h: int, d: int) -> list[Subspace]:
    """All ``d``-dimensional subspaces of ``h^perp``, in ambient coordinates."""
    P = W.perp([h])
    if d > P.dim:
        return []
    return [Subspace.span([P.combine(c) for c in S.basis], W.dim) for S in enumerate_subspaces(P.dim, d)]


class KdM(SubFunctor):
    def __init__(self, alpha: int, d: int):
        if d < 0:
            raise ValueError("d must be nonnegative")
        super().__init__(functor_m(alpha))
        self.alpha, self.d = alpha, d
        self.name = f"kd_m:a={alpha},d={d}"

    def subspace(self, W, amb):
        if self.d == 0:
            return Subspace.full(amb.dim)
        by_h: dict[int, list[Subspace]] = {}
        seen = set()
        gens = []
        for x, y in amb.labels:
            h = x ^ y
            subs = by_h.get(h)
            if subs is None:
                subs = by_h[h] = perp_subspaces(W, h, self.d)
            for L in subs:
                g = kdm_generator(W, amb, x, y, L)
                if g not in seen:
                    seen.add(g)
                    gens.append(g)
        return Subspace.span(gens, amb.dim)


@lru_cache(maxsize=None)
def functor_kd_m(alpha: int, d: int) -> KdM:
    return KdM(alpha, d)


@lru_cache(maxsize=None)
def functor_layer(alpha: int, d: int) -> Subquotient:
    """``k_d m / k_{d+1} m``."""
    return Subquotient(functor_m(alpha), functor_kd_m(alpha, d), functor_kd_m(alpha, d + 1),
                       name=f"layer:a={alpha},d={d}")


@lru_cache(maxsize=None)
def functor_head(alpha: int) -> Subquotient:
    """``m / k_1 m``."""
    return Subquotient(functor_m(alpha), None, functor_kd_m(alpha, 1), name=f"head:a={alpha}")


def _h_index(iso_val, h: int) -> int:
    return iso_val.index(Embedding((h,)))


@lru_cache(maxsize=None)
def map_i_d(alpha: int, d: int) -> NaturalMap:
    """``k_d m -> k_d P (x) iso_alpha``, ``{x, y} -> ([x] + [y]) (x) [h]`` with ``h(x) = x + y``."""
    iso = iso_alpha(alpha)
    target = TensorFunctor(functor_kdp(d), iso)

    def root(W, src, tgt):
        m_val = functor_m(alpha).on_object(W)
        iso_val = iso.on_object(W)
        niso = iso_val.dim
        cols = []
        for x, y in m_val.labels:
            k = _h_index(iso_val, x ^ y)
            cols.append((1 << (x * niso + k)) | (1 << (y * niso + k)))

        def fn(v):
            out = 0
            for j in bits(v):
                out ^= cols[j]
            return out
        return fn

    return NaturalMap(f"i_{d}", functor_kd_m(alpha, d), target, root)


def _sigma_root(alpha: int, d: int):
    iso = iso_alpha(alpha)

    def root(W, src, tgt):
        m_val = functor_m(alpha).on_object(W)
        iso_val = iso.on_object(W)
        niso = iso_val.dim
        index = subset_index(W.dim, d + 1)
        cols = []
        for x, y in m_val.labels:
            k = _h_index(iso_val, x ^ y)
            wedge = g_root_column(x, d + 1, index) ^ g_root_column(y, d + 1, index)
            c = 0
            for s in bits(wedge):
                c |= 1 << (s * niso + k)
            cols.append(c)

        def fn(v):
            out = 0
            for j in bits(v):
                out ^= cols[j]
            return out
        return fn

    return root


@lru_cache(maxsize=None)
def map_sigma_layer(alpha: int, d: int) -> NaturalMap:
    """``k_d m / k_{d+1} m -> Λ^{d+1} (x) iso_alpha`` induced by ``(g_d (x) iso) o i_d``."""
    return NaturalMap(f"sigma_layer_{d}", functor_layer(alpha, d), lambda_iso(d + 1, alpha),
                      _sigma_root(alpha, d))


@lru_cache(maxsize=None)
def map_g_i(alpha: int, d: int) -> NaturalMap:
    """``(g_d (x) iso) o i_d`` on ``k_d m`` itself."""
    return NaturalMap(f"gi_{d}", functor_kd_m(alpha, d), lambda_iso(d + 1, alpha), _sigma_root(alpha, d))


@lru_cache(maxsize=None)
def map_head(alpha: int) -> NaturalMap:
    """``m / k_1 m -> iso_alpha``, ``{x, y} -> [h]`` with ``h(x) = x + y``."""
    return _relabel_map(f"head_{alpha}", functor_head(alpha), iso_alpha(alpha),
                        lambda W, u: [Embedding((u.w1 ^ u.w2,))])
