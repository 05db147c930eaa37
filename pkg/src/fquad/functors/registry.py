"""String names for functors, e.g. ``iso:x1``, ``K:a=1,n=2``, ``lambda:n=2(x)iso:x1``."""

from __future__ import annotations

import re

from ..quadspace import SpaceParseError, line, parse_space
from .base import Functor, TensorFunctor, ZeroFunctor
from .basic import functor_iso, functor_kdp, functor_lambda, functor_p, functor_qdp
from .koszul import functor_K, functor_L
from .mixed import (
    functor_head,
    functor_kd_m,
    functor_layer,
    functor_m,
    functor_mix_ab,
    functor_mix_general,
    functor_sigma,
)

GRAMMAR = """\
functor := term ('(x)' term)*
term    := iso:<space> | iso:a=A | P | lambda:n=N | kdP:d=D | qdP:d=D
         | mix:a=A,b=B | mixg:p=P,D=<space>,eta=E | sigma:a=A,b=B
         | m:a=A | kd_m:a=A,d=D | layer:a=A,d=D | head:a=A
         | K:a=A,n=N | L:a=A,n=N | zero
<space> := H0 | H1 | x0 | x1 | 0, joined by '+'"""


class FunctorParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})\n{GRAMMAR}")
        self.position = position


# name -> (required integer keys, builder)
_INT_TERMS = {
    "lambda": (("n",), lambda p: functor_lambda(p["n"])),
    "kdP": (("d",), lambda p: functor_kdp(p["d"])),
    "qdP": (("d",), lambda p: functor_qdp(p["d"])),
    "mix": (("a", "b"), lambda p: functor_mix_ab(p["a"], p["b"])),
    "sigma": (("a", "b"), lambda p: functor_sigma(p["a"], p["b"])),
    "m": (("a",), lambda p: functor_m(p["a"])),
    "kd_m": (("a", "d"), lambda p: functor_kd_m(p["a"], p["d"])),
    "layer": (("a", "d"), lambda p: functor_layer(p["a"], p["d"])),
    "head": (("a",), lambda p: functor_head(p["a"])),
    "K": (("a", "n"), lambda p: functor_K(p["a"], p["n"])),
    "L": (("a", "n"), lambda p: functor_L(p["a"], p["n"])),
}
_BINARY = {"a", "b"}
_NAME = re.compile(r"[A-Za-z_]+")


def _params(text: str, offset: int) -> dict[str, str]:
    out: dict[str, str] = {}
    pos = 0
    for part in text.split(","):
        if "=" not in part:
            raise FunctorParseError(f"expected key=value, got {part!r}", offset + pos)
        key, value = part.split("=", 1)
        if not key or key in out:
            raise FunctorParseError(f"bad or repeated key {key!r}", offset + pos)
        out[key] = value
        pos += len(part) + 1
    return out


def _int(params: dict[str, str], key: str, position: int) -> int:
    try:
        v = int(params[key])
    except KeyError:
        raise FunctorParseError(f"missing parameter {key!r}", position) from None
    except ValueError:
        raise FunctorParseError(f"parameter {key!r} must be an integer", position) from None
    if v < 0 or (key in _BINARY and v > 1):
        raise FunctorParseError(f"parameter {key!r} out of range", position)
    return v


def _term(text: str, offset: int) -> Functor:
    m = _NAME.match(text)
    if not m:
        raise FunctorParseError("expected a functor name", offset)
    name = m.group(0)
    if name not in _INT_TERMS and name not in ("P", "zero", "iso", "mixg"):
        raise FunctorParseError(f"unknown functor {name!r}", offset)
    rest = text[m.end():]
    if rest and not rest.startswith(":"):
        raise FunctorParseError("expected ':' after the functor name", offset + m.end())
    body = rest[1:]
    body_at = offset + m.end() + 1
    if name in ("P", "zero"):
        if rest:
            raise FunctorParseError(f"{name} takes no parameters", offset + m.end())
        return functor_p() if name == "P" else ZeroFunctor()
    if not rest:
        raise FunctorParseError(f"{name} needs parameters", offset + m.end())
    if name == "iso":
        if body.startswith("a="):
            return functor_iso(line(_int(_params(body, body_at), "a", body_at)))
        try:
            return functor_iso(parse_space(body))
        except SpaceParseError as exc:
            raise FunctorParseError(str(exc).split(" (at")[0], body_at + exc.position) from None
    if name == "mixg":
        params = _params(body, body_at)
        if "D" not in params:
            raise FunctorParseError("missing parameter 'D'", body_at)
        try:
            D = parse_space(params["D"])
        except SpaceParseError:
            raise FunctorParseError(f"bad space for D: {params['D']!r}", body_at) from None
        p, eta = _int(params, "p", body_at), _int(params, "eta", body_at)
        if eta >> (p * D.dim):
            raise FunctorParseError("eta has more bits than p * dim D", body_at)
        return functor_mix_general(p, D, eta)
    keys, build = _INT_TERMS[name]
    params = _params(body, body_at)
    extra = set(params) - set(keys)
    if extra:
        raise FunctorParseError(f"unexpected parameter {sorted(extra)[0]!r}", body_at)
    values = {k: _int(params, k, body_at) for k in keys}
    try:
        return build(values)
    except ValueError as exc:
        raise FunctorParseError(str(exc), offset) from None


def parse_functor(expr: str) -> Functor:
    """Parse a functor name; errors carry the offending position."""
    if not expr.strip():
        raise FunctorParseError("empty functor name", 0)
    pieces = expr.split("(x)")
    functors = []
    offset = 0
    for piece in pieces:
        functors.append(_term(piece, offset))
        offset += len(piece) + 3
    out = functors[0]
    for F in functors[1:]:
        out = TensorFunctor(out, F)
    return out
