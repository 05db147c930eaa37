"""Quadratic spaces over F2 and their isometric embeddings.

A space of dimension ``n`` has basis ``e_0 .. e_{n-1}``; vectors are int
bitsets.  The form is determined by ``q`` on the basis (``q_diag``) and the
alternating Gram matrix of the polar form ``B``:

    q(sum x_i e_i) = sum x_i q(e_i) + sum_{i<j} x_i x_j B(e_i, e_j)

Fixed conventions: ``H0`` has q(a0) = q(b0) = 0 and ``H1`` has
q(a1) = q(b1) = 1, both with B(a, b) = 1, basis order (a, b).  ``x0``/``x1``
are the degenerate lines (x, 0)/(x, 1).
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

from .f2core import Echelon, F2Matrix, F2Vector, Subspace, bits, kernel_basis, parity

_TABLE_MAX_DIM = 16


class DegenerateSpaceError(ValueError):
    pass


class IsometryError(ValueError):
    pass


class SpaceParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class QuadSpace:
    dim: int
    q_diag: int
    gram: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.gram) != self.dim:
            raise ValueError("gram must have one row per basis vector")
        if self.q_diag >> self.dim:
            raise ValueError("q_diag has bits outside the space")
        for i, row in enumerate(self.gram):
            if row >> self.dim:
                raise ValueError("gram row wider than the space")
            if (row >> i) & 1:
                raise ValueError("polar form must be alternating (zero diagonal)")
            for j in bits(row):
                if not (self.gram[j] >> i) & 1:
                    raise ValueError("gram must be symmetric")

    # -- evaluation -------------------------------------------------------

    def polar(self, v: int) -> int:
        """The vector ``G v``, so that ``B(u, v) = parity(u & G v)``."""
        out = 0
        gram = self.gram
        for i in bits(v):
            out ^= gram[i]
        return out

    def B(self, u: int, v: int) -> int:
        return parity(u & self.polar(v))

    def _q_direct(self, v: int) -> int:
        val = parity(self.q_diag & v)
        gram = self.gram
        for i in bits(v):
            val ^= parity(gram[i] & v & ~((2 << i) - 1))
        return val

    @cached_property
    def q_table(self) -> bytes:
        if self.dim > _TABLE_MAX_DIM:
            raise ValueError("space too large for a full q table")
        table = bytearray(1 << self.dim)
        for v in range(1, 1 << self.dim):
            low = v & -v
            rest = v ^ low
            i = low.bit_length() - 1
            table[v] = table[rest] ^ ((self.q_diag >> i) & 1) ^ parity(self.gram[i] & rest)
        return bytes(table)

    def q(self, v: int) -> int:
        if self.dim <= 10:
            return self.q_table[v]
        return self._q_direct(v)

    def vectors(self) -> range:
        return range(1 << self.dim)

    def vectors_with_q(self, alpha: int) -> list[int]:
        """Nonzero vectors ``w`` with ``q(w) = alpha``, increasing."""
        table = self.q_table
        return [w for w in range(1, 1 << self.dim) if table[w] == alpha]

    # -- structure --------------------------------------------------------

    @cached_property
    def gram_matrix(self) -> F2Matrix:
        return F2Matrix.from_rows(self.gram, self.dim)

    @cached_property
    def radical(self) -> Subspace:
        return kernel_basis(self.gram_matrix)

    @property
    def is_nondegenerate(self) -> bool:
        return self.radical.dim == 0

    def perp(self, vectors: Sequence[int]) -> Subspace:
        """Orthogonal complement of the span of ``vectors``."""
        rows = [self.polar(v) for v in vectors]
        return kernel_basis(F2Matrix.from_rows(rows, self.dim))

    def restrict(self, basis: Sequence[int], name: str = "") -> tuple["QuadSpace", "IsoMap"]:
        """The subquadratic space on ``basis`` with its inclusion map."""
        basis = tuple(basis)
        q_diag = 0
        for i, v in enumerate(basis):
            if self.q(v):
                q_diag |= 1 << i
        gram = []
        for v in basis:
            pv = self.polar(v)
            row = 0
            for j, w in enumerate(basis):
                if parity(w & pv):
                    row |= 1 << j
            gram.append(row)
        sub = QuadSpace(len(basis), q_diag, tuple(gram), name)
        return sub, IsoMap(sub, self, basis)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "q_diag": F2Vector(self.dim, self.q_diag).to_list(),
            "gram": [F2Vector(self.dim, r).to_list() for r in self.gram],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "QuadSpace":
        dim = int(data["dim"])
        q_diag = F2Vector.from_list(data["q_diag"])
        gram = tuple(F2Vector.from_list(r).bits for r in data["gram"])
        if q_diag.dim != dim:
            raise ValueError("q_diag length must equal dim")
        return cls(dim, q_diag.bits, gram, name)

    def label(self) -> str:
        return self.name or json.dumps(self.to_json(), separators=(",", ":"))

    def fmt(self, v: int) -> str:
        return "".join(str((v >> i) & 1) for i in range(self.dim)) or "()"

    def __str__(self) -> str:
        return self.label()


def zero_space() -> QuadSpace:
    return QuadSpace(0, 0, (), "0")


def H0() -> QuadSpace:
    return QuadSpace(2, 0b00, (0b10, 0b01), "H0")


def H1() -> QuadSpace:
    return QuadSpace(2, 0b11, (0b10, 0b01), "H1")


def line(alpha: int) -> QuadSpace:
    """The degenerate line (x, alpha)."""
    return QuadSpace(1, alpha & 1, (0,), f"x{alpha & 1}")


def orthogonal_sum(*spaces: QuadSpace, name: str | None = None) -> QuadSpace:
    dim = 0
    q_diag = 0
    gram: list[int] = []
    for S in spaces:
        q_diag |= S.q_diag << dim
        gram.extend(row << dim for row in S.gram)
        dim += S.dim
    if name is None:
        parts = [S.name for S in spaces if S.dim > 0]
        name = "+".join(parts) if all(parts) else ""
        name = name or ("0" if dim == 0 else "")
    return QuadSpace(dim, q_diag, tuple(gram), name)


def hyperbolic_power(m: int) -> QuadSpace:
    return orthogonal_sum(*[H0()] * m) if m else zero_space()


def block_offset(spaces: Sequence[QuadSpace], k: int) -> int:
    return sum(S.dim for S in spaces[:k])


_ATOMS = {"H0": H0, "H1": H1, "x0": lambda: line(0), "x1": lambda: line(1), "0": zero_space}
_TOKEN = re.compile(r"\s*(H0|H1|x0|x1|0)\s*")


def parse_space(expr: str | dict) -> QuadSpace:
    """Parse ``H0+H1+x1`` style sums, ``0`` for the zero space, or a JSON space."""
    if isinstance(expr, dict):
        return QuadSpace.from_json(expr)
    text = expr.strip()
    if text.startswith("{"):
        try:
            return QuadSpace.from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise SpaceParseError(f"invalid JSON space: {exc}", 0) from exc
    pos = 0
    atoms: list[QuadSpace] = []
    while True:
        m = _TOKEN.match(expr, pos)
        if not m:
            raise SpaceParseError(
                f"expected one of H0, H1, x0, x1, 0 in {expr!r}", pos)
        atoms.append(_ATOMS[m.group(1)]())
        pos = m.end()
        if pos == len(expr):
            break
        if expr[pos] != "+":
            raise SpaceParseError(f"expected '+' in {expr!r}", pos)
        pos += 1
    atoms = [a for a in atoms if a.dim > 0] or [zero_space()]
    if len(atoms) == 1:
        return atoms[0]
    return orthogonal_sum(*atoms)


def q_eval(S: QuadSpace, v: int | F2Vector) -> int:
    if isinstance(v, F2Vector) and v.dim != S.dim:
        raise ValueError(f"vector of dimension {v.dim} in a space of dimension {S.dim}")
    v = int(v)
    if v < 0 or v >> S.dim:
        raise ValueError(f"vector {v:b} is not in a space of dimension {S.dim}")
    return S.q(v)


def radical(S: QuadSpace) -> Subspace:
    return S.radical


def is_nondegenerate(S: QuadSpace) -> bool:
    return S.is_nondegenerate


# ---------------------------------------------------------------------------
# isometric embeddings

class IsoMap:
    """An injective linear map preserving q; ``images[i]`` is the image of ``e_i``.

    Preservation is checked on basis values of q and on all pairs for B,
    which by polarization is equivalent to q(f(v)) = q(v) for every v.
    """

    __slots__ = ("source", "target", "images", "_solver", "__weakref__")

    def __init__(self, source: QuadSpace, target: QuadSpace, images: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._solver: Echelon | None = None
        if check:
            self._check()

    def _check(self) -> None:
        S, T, im = self.source, self.target, self.images
        if len(im) != S.dim:
            raise IsometryError("need one image per source basis vector")
        if any(w < 0 or w >> T.dim for w in im):
            raise IsometryError("image outside the target space")
        for i, w in enumerate(im):
            if T.q(w) != (S.q_diag >> i) & 1:
                raise IsometryError(f"q not preserved on basis vector {i}")
            pw = T.polar(w)
            for j in range(i + 1, S.dim):
                if parity(im[j] & pw) != (S.gram[i] >> j) & 1:
                    raise IsometryError(f"B not preserved on basis pair ({i}, {j})")
        ech = Echelon()
        for w in im:
            if not ech.add(w)[0]:
                raise IsometryError("map is not injective")

    @classmethod
    def identity(cls, S: QuadSpace) -> "IsoMap":
        return cls(S, S, [1 << i for i in range(S.dim)], check=False)

    @property
    def matrix(self) -> F2Matrix:
        return F2Matrix.from_columns(self.images, self.target.dim)

    def apply(self, v: int) -> int:
        out = 0
        im = self.images
        for i in bits(v):
            out ^= im[i]
        return out

    def __call__(self, v: int) -> int:
        return self.apply(v)

    def compose(self, first: "IsoMap") -> "IsoMap":
        """``self o first``."""
        if first.target != self.source:
            raise IsometryError("composition through mismatched spaces")
        return IsoMap(first.source, self.target, [self.apply(w) for w in first.images],
                      check=False)

    def __matmul__(self, first: "IsoMap") -> "IsoMap":
        return self.compose(first)

    def preimage(self, w: int) -> int | None:
        """The unique ``v`` with ``f(v) = w``, or None if ``w`` is outside the image."""
        if self._solver is None:
            ech = Echelon()
            for i, im in enumerate(self.images):
                ech.add(im, 1 << i)
            self._solver = ech
        res, tag = self._solver.reduce(w)
        return None if res else tag

    @property
    def image(self) -> Subspace:
        return Subspace.span(self.images, self.target.dim)

    def inverse(self) -> "IsoMap":
        if self.source.dim != self.target.dim:
            raise IsometryError("only bijective isometries are invertible")
        return IsoMap(self.target, self.source,
                      [self.preimage(1 << i) for i in range(self.target.dim)], check=False)

    def key(self) -> tuple[int, ...]:
        return self.images

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IsoMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.images))

    def __repr__(self) -> str:
        return f"IsoMap({self.source} -> {self.target}, images={list(self.images)})"


def _search(src: QuadSpace, basis: Sequence[int], T: QuadSpace, prefix: Sequence[int],
            candidates_for=None) -> Iterator[tuple[int, ...]]:
    """Extend ``prefix`` to images of ``basis`` (vectors of ``src``) in ``T``.

    Images must match q, pairwise B, and stay linearly independent.  Yields
    complete image tuples in lexicographic order of the free positions.
    """
    n = len(basis)
    qs = [src.q(v) for v in basis]
    bs = [[src.B(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    chosen = list(prefix)
    ech = Echelon()
    for i, w in enumerate(chosen):
        if not ech.add(w)[0] or T.q(w) != qs[i]:
            return
        if any(T.B(w, chosen[j]) != bs[i][j] for j in range(i)):
            return
    allv = range(1, 1 << T.dim)

    def rec(i: int, ech: Echelon) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(chosen)
            return
        polars = [T.polar(w) for w in chosen]
        cand = candidates_for(i) if candidates_for else allv
        for w in cand:
            if T.q(w) != qs[i]:
                continue
            if any(parity(w & polars[j]) != bs[i][j] for j in range(i)):
                continue
            if not ech.reduce(w)[0]:
                continue
            nxt = Echelon()
            nxt.pivots = dict(ech.pivots)
            nxt.add(w)
            chosen.append(w)
            yield from rec(i + 1, nxt)
            chosen.pop()

    yield from rec(len(chosen), ech)


def enumerate_embeddings(D: QuadSpace, W: QuadSpace) -> list[IsoMap]:
    """All isometric embeddings ``D -> W``, lexicographic on image tuples."""
    basis = [1 << i for i in range(D.dim)]
    return [IsoMap(D, W, im, check=False) for im in _search(D, basis, W, [])]


def count_embeddings(D: QuadSpace, W: QuadSpace) -> int:
    basis = [1 << i for i in range(D.dim)]
    return sum(1 for _ in _search(D, basis, W, []))


def random_embedding(D: QuadSpace, W: QuadSpace, rng: random.Random) -> IsoMap | None:
    """A pseudorandom embedding (None if none exists); deterministic given ``rng``."""
    basis = [1 << i for i in range(D.dim)]
    orders: dict[int, list[int]] = {}

    def cands(i: int) -> list[int]:
        if i not in orders:
            order = list(range(1, 1 << W.dim))
            rng.shuffle(order)
            orders[i] = order
        return orders[i]

    for im in _search(D, basis, W, [], candidates_for=cands):
        return IsoMap(D, W, im, check=False)
    return None


def orthogonal_group(V: QuadSpace, max_dim: int = 6) -> list[IsoMap]:
    if V.dim > max_dim:
        raise ValueError(f"orthogonal group enumeration limited to dim <= {max_dim}")
    return enumerate_embeddings(V, V)


# ---------------------------------------------------------------------------
# symplectic bases, Arf invariant, classification

def symplectic_basis(S: QuadSpace) -> list[tuple[int, int]]:
    """Hyperbolic pairs ``(a_i, b_i)`` with B(a_i, b_i) = 1, all other pairings 0."""
    if not S.is_nondegenerate:
        raise DegenerateSpaceError(f"{S} is degenerate")
    rest = [1 << i for i in range(S.dim)]
    pairs = []
    while rest:
        a = rest[0]
        pa = S.polar(a)
        k = next(k for k in range(1, len(rest)) if parity(rest[k] & pa))
        b = rest[k]
        pb = S.polar(b)
        nxt = []
        for i, v in enumerate(rest):
            if i in (0, k):
                continue
            # project onto <a, b>^perp
            v ^= (a if parity(v & pb) else 0) ^ (b if parity(v & pa) else 0)
            nxt.append(v)
        pairs.append((a, b))
        rest = nxt
    return pairs


def arf(S: QuadSpace) -> int:
    val = 0
    for a, b in symplectic_basis(S):
        val ^= S.q(a) & S.q(b)
    return val


def arf_by_count(S: QuadSpace) -> int:
    """Arf invariant from the number of zeros of q (2^{2m-1} + 2^{m-1} iff Arf 0)."""
    if not S.is_nondegenerate:
        raise DegenerateSpaceError(f"{S} is degenerate")
    m = S.dim // 2
    zeros = sum(1 for v in S.vectors() if S.q(v) == 0)
    if m == 0:
        return 0
    return 0 if zeros == 2 ** (2 * m - 1) + 2 ** (m - 1) else 1


class Classification(NamedTuple):
    hyperbolic: int
    arf: int
    normal_form: QuadSpace
    iso: IsoMap

    def describe(self) -> str:
        parts = ["H0"] * self.hyperbolic + ["H1"] * self.arf
        return "⊥".join(parts) if parts else "0"


def classify(S: QuadSpace) -> Classification:
    """Normal form ``H0^m (+) H1^eps`` with an explicit isometry onto it."""
    pairs = symplectic_basis(S)
    h0: list[tuple[int, int]] = []
    h1: list[tuple[int, int]] = []
    for a, b in pairs:
        qa, qb = S.q(a), S.q(b)
        if qa and qb:
            h1.append((a, b))
            continue
        if qa:
            a, b = b, a
        if S.q(b):
            b ^= a
        h0.append((a, b))
    while len(h1) >= 2:
        (a1, b1), (a2, b2) = h1.pop(), h1.pop()
        # H1 (+) H1 = H0 (+) H0 with explicit singular hyperbolic pairs
        h0.append((a1 ^ a2, a1 ^ a2 ^ b1))
        h0.append((b1 ^ b2, a2 ^ b1 ^ b2))
    eps = len(h1)
    new_basis = [v for pair in h0 + h1 for v in pair]
    nf = orthogonal_sum(*([H0()] * len(h0) + [H1()] * eps)) if new_basis else zero_space()
    to_S = IsoMap(nf, S, new_basis)
    return Classification(len(h0), eps, nf, to_S.inverse())


def orthogonal_complement(S: QuadSpace, sub: Subspace) -> Subspace:
    return S.perp(sub.basis)


# ---------------------------------------------------------------------------
# Witt extension

def witt_extend(V: QuadSpace, incl_D: IsoMap, incl_D2: IsoMap, fbar: IsoMap) -> IsoMap:
    """An isometry ``g`` of ``V`` with ``g o incl_D = incl_D2 o fbar``."""
    if not V.is_nondegenerate:
        raise DegenerateSpaceError(f"{V} is degenerate")
    if incl_D.target != V or incl_D2.target != V:
        raise IsometryError("inclusions must land in V")
    if fbar.source != incl_D.source or fbar.target != incl_D2.source:
        raise IsometryError("fbar must map D to D'")
    sources = list(incl_D.images)
    targets = [incl_D2.apply(w) for w in fbar.images]
    return extend_isometry(V, sources, targets)


def extend_isometry(V: QuadSpace, sources: Sequence[int], targets: Sequence[int]) -> IsoMap:
    """Extend ``sources[i] -> targets[i]`` (independent vectors) to an element of O(V)."""
    ech = Echelon()
    basis = []
    for v in sources:
        if not ech.add(v)[0]:
            raise IsometryError("source vectors must be independent")
        basis.append(v)
    for i in range(V.dim):
        if ech.add(1 << i)[0]:
            basis.append(1 << i)
    for images in _search(V, basis, V, list(targets)):
        # images are for the adapted basis; convert to standard coordinates
        change = IsoMap(V, V, basis, check=False)
        out = []
        for i in range(V.dim):
            coords = change.preimage(1 << i)
            w = 0
            for j in bits(coords):
                w ^= images[j]
            out.append(w)
        return IsoMap(V, V, out)
    raise IsometryError("no extension exists; preconditions of Witt's theorem violated")
