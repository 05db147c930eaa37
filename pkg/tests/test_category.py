import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fquad.category import (
    adapted_symplectic_basis,
    apply_relation_move,
    block_morphisms,
    compose_tq,
    endomorphism_family,
    epsilon,
    identity,
    inclusion_morphism,
    isolating_morphism,
    isometry_morphism,
    lift_linear,
    make_tq,
    random_isometry,
    random_linear,
    random_tq,
    relation_inclusion,
    retraction_morphism,
    transport_embedding,
)
from fquad.f2core import F2Matrix
from fquad.quadspace import (
    H0,
    DegenerateSpaceError,
    IsoMap,
    IsometryError,
    hyperbolic_power,
    line,
    orthogonal_sum,
    parse_space,
)

NONDEG = ["H0", "H1", "H0+H0", "H0+H1"]
spaces = st.sampled_from(NONDEG).map(parse_space)
seeds = st.integers(0, 2**32 - 1)


def test_make_tq_rejects_degenerate_apex():
    X = parse_space("H0+x0")
    f = IsoMap(line(0), X, [0b100])
    with pytest.raises(DegenerateSpaceError):
        make_tq(f, f)


def test_make_tq_rejects_bad_maps():
    V = H0()
    X = orthogonal_sum(V, H0())
    good = IsoMap(V, X, [1, 2])
    other = IsoMap(V, V, [1, 2])
    with pytest.raises(IsometryError):
        make_tq(good, other)


def test_identity_epsilon():
    for name in NONDEG:
        V = parse_space(name)
        assert epsilon(identity(V)) == F2Matrix.identity(V.dim)


def test_epsilon_of_orthogonal_blocks_is_zero():
    X = hyperbolic_power(2)
    T = make_tq(IsoMap(H0(), X, [0b0001, 0b0010]), IsoMap(H0(), X, [0b0100, 0b1000]))
    assert epsilon(T).is_zero()


def test_epsilon_is_projection_composed_with_left():
    V = parse_space("H0+H1")
    E = H0()
    X = orthogonal_sum(V, E)
    # e_0 picks up a singular vector of the extra block
    sigma = IsoMap(V, X, [0b010001, 0b000010, 0b000100, 0b001000])
    T = make_tq(sigma, IsoMap(V, X, [1, 2, 4, 8]))
    assert epsilon(T).columns == (0b0001, 0b0010, 0b0100, 0b1000)


def test_inclusion_then_retraction_trace():
    V = H0()
    T = compose_tq(inclusion_morphism(V, H0()), retraction_morphism(V, H0()))
    assert T.source == V and T.target == V
    assert T.apex.dim == 4
    assert epsilon(T) == F2Matrix.identity(2)


def test_transport_examples():
    W = H0()
    h = IsoMap(line(1), W, [0b11])
    assert transport_embedding(h, identity(W)).images == h.images
    X = hyperbolic_power(2)
    T = make_tq(IsoMap(W, X, [0b0001, 0b0010]), IsoMap(W, X, [0b0100, 0b1000]))
    assert transport_embedding(h, T) is None
    incl = inclusion_morphism(W, H0())
    assert transport_embedding(h, incl).images == (0b0011,)


@given(spaces, spaces, seeds)
def test_lift_has_requested_epsilon(V, W, seed):
    rng = random.Random(seed)
    phi = random_linear(W.dim, V.dim, rng)
    T = lift_linear(phi, V, W)
    assert epsilon(T) == phi
    assert T.apex.is_nondegenerate
    assert T.apex.dim - W.dim <= 2 * V.dim


def test_lift_examples():
    V = H0()
    assert epsilon(lift_linear(F2Matrix.identity(2), V, V)) == F2Matrix.identity(2)
    assert epsilon(lift_linear(F2Matrix.zeros(2, 2), V, V)).is_zero()
    f = F2Matrix.from_columns([0b11, 0b10], 2)
    assert epsilon(lift_linear(f, V, V)) == f
    with pytest.raises(ValueError):
        lift_linear(F2Matrix.zeros(3, 2), V, V)


@given(spaces, spaces, spaces, seeds)
def test_epsilon_functorial(V, W, Z, seed):
    rng = random.Random(seed)
    T1, T2 = random_tq(V, W, rng), random_tq(W, Z, rng)
    C = compose_tq(T1, T2)
    assert C.source == V and C.target == Z and C.apex.is_nondegenerate
    assert epsilon(C) == epsilon(T2) @ epsilon(T1)
    assert epsilon(compose_tq(identity(V), T1)) == epsilon(T1)
    assert epsilon(compose_tq(T1, identity(W))) == epsilon(T1)


def test_compose_mismatch():
    with pytest.raises(ValueError):
        compose_tq(identity(H0()), identity(parse_space("H1")))


@given(spaces, seeds)
def test_relation_moves_keep_epsilon(V, seed):
    rng = random.Random(seed)
    T = random_tq(V, V, rng)
    assert epsilon(relation_inclusion(T)) == epsilon(T)
    assert epsilon(apply_relation_move(T, random_isometry(T.apex, rng))) == epsilon(T)
    assert epsilon(apply_relation_move(T, IsoMap.identity(T.apex))) == epsilon(T)


@pytest.mark.parametrize("name", ["H0", "H1", "H0+H0", "H0+H1", "H0+H0+H0"])
def test_isolating_morphism_keeps_only_u(name):
    V = parse_space(name)
    for u in range(1, 1 << V.dim):
        basis = adapted_symplectic_basis(V, u)
        assert basis[0] == u and V.B(basis[0], basis[1]) == 1
        T = isolating_morphism(V, u)
        assert epsilon(T) == F2Matrix.identity(V.dim)
        assert T.apex.dim == 2 * V.dim - 2 + V.dim
        kept = [y for y in range(1, 1 << V.dim) if T.right.preimage(T.left.apply(y)) is not None]
        assert kept == [u]


def test_endomorphism_family_is_deterministic():
    V = parse_space("H0+H1")
    a = endomorphism_family(V, seed=5)
    b = endomorphism_family(V, seed=5)
    assert [repr(t) for t in a] == [repr(t) for t in b]
    assert all(T.source == V and T.target == V for T in a)
    incl, retr = block_morphisms(V)
    assert incl.target == retr.source == orthogonal_sum(V, H0())


def test_isometry_morphism():
    V = parse_space("H1")
    g = IsoMap(V, V, [0b10, 0b01])
    T = isometry_morphism(g)
    assert epsilon(T) == g.matrix
