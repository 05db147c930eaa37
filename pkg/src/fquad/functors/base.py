"""Functors ``Tq -> F2-vector spaces`` and natural maps between them."""

from __future__ import annotations

import threading
from typing import Callable, Iterable, Mapping

from ..category import TqMorphism
from ..f2core import F2Matrix, Subspace
from ..quadspace import QuadSpace
from .values import (
    FunctorMap,
    FunctorValue,
    PlainValue,
    SubquotientValue,
    TensorValue,
    induced,
    induced_local,
)


class Functor:
    """Base evaluator: ``on_object`` is memoized per space, ``on_morphism`` is not.

    Evaluation is deterministic, so two threads racing to fill the cache
    store identical values; the lock only avoids the duplicated work.
    """

    name = "functor"

    def __init__(self) -> None:
        self._objects: dict[QuadSpace, FunctorValue] = {}
        self._lock = threading.RLock()

    def on_object(self, W: QuadSpace) -> FunctorValue:
        val = self._objects.get(W)
        if val is None:
            with self._lock:
                val = self._objects.get(W)
                if val is None:
                    val = self._objects[W] = self._build(W)
        return val

    def on_morphism(self, T: TqMorphism) -> FunctorMap:
        src, tgt = self.on_object(T.source), self.on_object(T.target)
        return FunctorMap(src, tgt, self._matrix(T, src, tgt))

    def dim(self, W: QuadSpace) -> int:
        return self.on_object(W).dim

    def __call__(self, x):
        return self.on_morphism(x) if isinstance(x, TqMorphism) else self.on_object(x)

    def _build(self, W: QuadSpace) -> FunctorValue:
        raise NotImplementedError

    def _matrix(self, T: TqMorphism, src: FunctorValue, tgt: FunctorValue) -> F2Matrix:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class ZeroFunctor(Functor):
    name = "0"

    def _build(self, W):
        return PlainValue(W, ())

    def _matrix(self, T, src, tgt):
        return F2Matrix.zeros(0, 0)


class SubFunctor(Functor):
    """A subfunctor described objectwise by a subspace of the ambient value."""

    def __init__(self, ambient: Functor):
        super().__init__()
        self.ambient = ambient

    def subspace(self, W: QuadSpace, amb: FunctorValue) -> Subspace:
        raise NotImplementedError

    def _build(self, W):
        amb = self.ambient.on_object(W)
        return SubquotientValue(amb, self.subspace(W, amb))

    def _matrix(self, T, src, tgt):
        M = self.ambient.on_morphism(T).matrix
        return induced_local(src, tgt, M)


class Subquotient(Functor):
    """``upper / lower`` for subfunctors of a common ambient (``None`` = full / zero)."""

    def __init__(self, ambient: Functor, upper: SubFunctor | None, lower: SubFunctor | None,
                 name: str | None = None):
        super().__init__()
        for s in (upper, lower):
            if s is not None and s.ambient is not ambient:
                raise ValueError("subfunctors must share the ambient functor")
        self.ambient, self.upper, self.lower = ambient, upper, lower
        self.name = name or f"({upper or ambient})/({lower or 0})"

    def _build(self, W):
        amb = self.ambient.on_object(W)
        up = self.upper.on_object(W).upper if self.upper else Subspace.full(amb.dim)
        lo = self.lower.on_object(W).upper if self.lower else Subspace.zero(amb.dim)
        return SubquotientValue(amb, up, lo)

    def _matrix(self, T, src, tgt):
        return induced_local(src, tgt, self.ambient.on_morphism(T).matrix)


class TensorFunctor(Functor):
    def __init__(self, F: Functor, G: Functor):
        super().__init__()
        self.F, self.G = F, G
        self.name = f"{F.name}(x){G.name}"

    def _build(self, W):
        return TensorValue(self.F.on_object(W), self.G.on_object(W))

    def _matrix(self, T, src, tgt):
        return self.F.on_morphism(T).matrix.kron(self.G.on_morphism(T).matrix)


def tensor_functor(F: Functor, G: Functor) -> TensorFunctor:
    return TensorFunctor(F, G)


# ---------------------------------------------------------------------------
# natural maps

RootMap = Callable[[int], int]


class NaturalMap:
    """A family ``phi_W : F(W) -> G(W)`` induced from maps between root values."""

    def __init__(self, name: str, source: Functor, target: Functor,
                 root_map: Callable[[QuadSpace, FunctorValue, FunctorValue], RootMap] | None = None):
        self.name = name
        self.source = source
        self.target = target
        self._root_map = root_map
        self._cache: dict[QuadSpace, FunctorMap] = {}

    def at(self, W: QuadSpace) -> FunctorMap:
        got = self._cache.get(W)
        if got is None:
            got = self._cache[W] = self._compute(W)
        return got

    def _compute(self, W: QuadSpace) -> FunctorMap:
        src, tgt = self.source.on_object(W), self.target.on_object(W)
        fn = self._root_map(W, src, tgt)
        return FunctorMap(src, tgt, induced(src, tgt, fn))

    def then(self, other: "NaturalMap") -> "NaturalMap":
        """``other o self``."""
        if other.source is not self.target:
            raise ValueError("natural maps do not compose")
        return ComposedMap(self, other)

    def __repr__(self) -> str:
        return f"NaturalMap({self.name}: {self.source} -> {self.target})"


class ComposedMap(NaturalMap):
    def __init__(self, first: NaturalMap, second: NaturalMap):
        super().__init__(f"{second.name}.{first.name}", first.source, second.target)
        self.first, self.second = first, second

    def _compute(self, W):
        return self.second.at(W) @ self.first.at(W)


def identity_map(F: Functor) -> NaturalMap:
    return NaturalMap(f"id_{F.name}", F, F, lambda W, s, t: (lambda v: v))


def _family(phi) -> Callable[[QuadSpace], FunctorMap]:
    if isinstance(phi, NaturalMap):
        return phi.at
    if isinstance(phi, Mapping):
        return phi.__getitem__
    return phi


def natural_failures(phi, F: Functor, G: Functor, morphisms: Iterable[TqMorphism]) -> list[TqMorphism]:
    """Morphisms ``T`` for which ``phi_Z o F(T) != G(T) o phi_W``."""
    at = _family(phi)
    bad = []
    for T in morphisms:
        pw, pz = at(T.source), at(T.target)
        for m, val_f, val_g in ((pw, F.on_object(T.source), G.on_object(T.source)),
                                (pz, F.on_object(T.target), G.on_object(T.target))):
            if m.matrix.shape != (val_g.dim, val_f.dim):
                raise ValueError(f"component at {val_f.space} has the wrong shape")
        if pz.matrix @ F.on_morphism(T).matrix != G.on_morphism(T).matrix @ pw.matrix:
            bad.append(T)
    return bad


def natural_check(phi, F: Functor, G: Functor, morphisms: Iterable[TqMorphism]) -> bool:
    """True iff ``phi`` commutes with every supplied morphism.

    ``phi`` may be a ``NaturalMap``, a mapping from spaces to ``FunctorMap``
    or any callable with that signature.
    """
    return not natural_failures(phi, F, G, morphisms)
