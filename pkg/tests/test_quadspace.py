import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from fquad.f2core import enumerate_subspaces
from fquad.quadspace import (
    H0,
    H1,
    DegenerateSpaceError,
    IsoMap,
    IsometryError,
    QuadSpace,
    SpaceParseError,
    arf,
    arf_by_count,
    classify,
    count_embeddings,
    enumerate_embeddings,
    hyperbolic_power,
    line,
    orthogonal_group,
    orthogonal_sum,
    parse_space,
    q_eval,
    radical,
    random_embedding,
    symplectic_basis,
    witt_extend,
)

ROSTER = ["H0", "H1", "H0+H0", "H0+H1", "H0+H0+H0"]
atoms = st.lists(st.sampled_from(["H0", "H1", "x0", "x1"]), min_size=1, max_size=3)
nondeg_atoms = st.lists(st.sampled_from(["H0", "H1"]), min_size=1, max_size=3)


@st.composite
def random_spaces(draw, max_dim=5):
    n = draw(st.integers(0, max_dim))
    q_diag = draw(st.integers(0, (1 << n) - 1))
    upper = [draw(st.integers(0, (1 << n) - 1)) & ~((1 << (i + 1)) - 1) for i in range(n)]
    gram = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if (upper[i] >> j) & 1:
                gram[i] |= 1 << j
                gram[j] |= 1 << i
    return QuadSpace(n, q_diag, tuple(gram))


def test_q_examples():
    a, b = 0b01, 0b10
    assert H0().q(a ^ b) == 1
    assert H0().q(0) == 0 and H1().q(a ^ b) == 1
    assert q_eval(H1(), a) == 1


@given(random_spaces())
def test_polarization_against_oracle(S):
    for u in range(1 << S.dim):
        assert S.q(u) == oracles.q_value(S.q_diag, list(S.gram), u)
        for v in range(1 << S.dim):
            assert S.q(u ^ v) == S.q(u) ^ S.q(v) ^ S.B(u, v)


def test_radical_examples():
    assert H0().radical.dim == 0 and H0().is_nondegenerate
    assert line(1).radical.dim == 1
    R = radical(parse_space("H0+x0"))
    assert R.basis == (0b100,)
    assert parse_space("x0+x1").radical.dim == 2


def test_invalid_gram_rejected():
    with pytest.raises(ValueError):
        QuadSpace(2, 0, (0b01, 0b00))
    with pytest.raises(ValueError):
        QuadSpace(2, 0, (0b10, 0b00))


def test_arf_examples():
    assert arf(H0()) == 0 and arf(H1()) == 1
    assert arf(parse_space("H0+H1")) == 1
    assert sum(1 for v in range(16) if parse_space("H0+H1").q(v) == 0) == 6
    with pytest.raises(DegenerateSpaceError):
        arf(line(0))


@given(nondeg_atoms, nondeg_atoms)
def test_arf_additive_and_matches_counts(a, b):
    S, T = parse_space("+".join(a)), parse_space("+".join(b))
    assert arf(orthogonal_sum(S, T)) == arf(S) ^ arf(T)
    assert arf(S) == arf_by_count(S) == oracles.arf_by_majority(S)


@given(nondeg_atoms)
def test_symplectic_basis_and_classification(a):
    S = parse_space("+".join(a))
    pairs = symplectic_basis(S)
    flat = [v for p in pairs for v in p]
    for i, u in enumerate(flat):
        for j, v in enumerate(flat):
            assert S.B(u, v) == (1 if {i, j} in ({2 * k, 2 * k + 1} for k in range(len(pairs))) else 0)
    c = classify(S)
    assert c.arf == arf(S) and 2 * c.hyperbolic + 2 * c.arf == S.dim
    assert c.iso.source == S and c.iso.target == c.normal_form
    assert all(c.normal_form.q(c.iso.apply(v)) == S.q(v) for v in range(1 << S.dim))


def test_classify_examples():
    assert classify(parse_space("H1+H1")).describe() == "H0⊥H0"
    assert classify(H0()).hyperbolic == 1
    assert classify(parse_space("H0+H1")).describe() == "H0⊥H1"


@pytest.mark.parametrize("name", ROSTER)
@pytest.mark.parametrize("alpha", [0, 1])
def test_line_embeddings_count_q_vectors(name, alpha):
    W = parse_space(name)
    assert count_embeddings(line(alpha), W) == oracles.count_q(W, alpha)


@pytest.mark.parametrize("D,W", [("x0", "H0"), ("x1", "H1"), ("H0", "H0+H1"), ("x0+x1", "H0+H0"),
                                 ("H1", "H0+H0"), ("x1+x1", "H0+H1")])
def test_embeddings_against_brute_force(D, W):
    D, W = parse_space(D), parse_space(W)
    ours = [h.images for h in enumerate_embeddings(D, W)]
    assert len(set(ours)) == len(ours)
    assert ours == [h.images for h in enumerate_embeddings(D, W)]
    assert set(ours) == set(oracles.embeddings(D, W))


def test_embedding_examples():
    assert [h.images for h in enumerate_embeddings(line(0), H0())] == [(0b01,), (0b10,)]
    assert [h.images for h in enumerate_embeddings(line(1), H0())] == [(0b11,)]
    assert enumerate_embeddings(line(0), H1()) == []


@pytest.mark.parametrize("name,order", [("x1", 1), ("H0", 2), ("H1", 6), ("H0+H0", 72), ("H0+H1", 120)])
def test_orthogonal_group_orders(name, order):
    V = parse_space(name)
    G = orthogonal_group(V)
    assert len(G) == order == oracles.orthogonal_group_order(V)
    keys = {g.images for g in G}
    assert tuple(1 << i for i in range(V.dim)) in keys
    for g in G[:12]:
        assert g.inverse().images in keys
        for h in G[:12]:
            assert (g @ h).images in keys


def test_orthogonal_group_guard():
    with pytest.raises(ValueError):
        orthogonal_group(hyperbolic_power(4))


def test_isomap_rejects_non_isometry():
    with pytest.raises(IsometryError):
        IsoMap(line(0), H0(), [0b11])
    with pytest.raises(IsometryError):
        IsoMap(parse_space("x0+x0"), H0(), [0b01, 0b01])


def test_witt_examples():
    V = H0()
    Da, ia = V.restrict([0b01])
    Db, ib = V.restrict([0b10])
    g = witt_extend(V, ia, ib, IsoMap(Da, Db, [1]))
    assert g.images == (0b10, 0b01)
    g = witt_extend(V, ia, ia, IsoMap.identity(Da))
    assert g.apply(0b01) == 0b01
    W = hyperbolic_power(2)
    D1, i1 = W.restrict([0b0001])
    D2, i2 = W.restrict([0b0100])
    g = witt_extend(W, i1, i2, IsoMap(D1, D2, [1]))
    assert g.apply(0b0001) == 0b0100


def test_witt_exhaustive_on_H0_plus_H0():
    V = hyperbolic_power(2)
    count = 0
    for k in range(V.dim + 1):
        subs = [V.restrict(S.basis) for S in enumerate_subspaces(V.dim, k)]
        for Dq, iD in subs:
            for D2q, iD2 in subs:
                for f in enumerate_embeddings(Dq, D2q):
                    g = witt_extend(V, iD, iD2, f)
                    assert (g @ iD).images == (iD2 @ f).images
                    count += 1
    assert count > 1000


@given(atoms, st.integers(0, 10**6))
def test_random_embedding_is_isometric(a, seed):
    D = parse_space("+".join(a))
    W = orthogonal_sum(D, H0())
    h = random_embedding(D, W, random.Random(seed))
    assert h is not None
    assert all(W.q(h.apply(v)) == D.q(v) for v in range(1 << D.dim))


def test_orthogonal_sum_layout():
    S = orthogonal_sum(H0(), H1())
    assert S.dim == 4 and arf(S) == 1
    assert S.q(0b0100) == 1 and S.q(0b0001) == 0
    assert S.B(0b0001, 0b0100) == 0
    assert orthogonal_sum(H0(), parse_space("0")) == H0()


@pytest.mark.parametrize("text,pos", [("H2", 0), ("H0+", 3), ("H0*H1", 2), ("", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(SpaceParseError) as exc:
        parse_space(text)
    assert exc.value.position == pos


def test_json_roundtrip():
    S = parse_space("H0+H1+x1")
    assert parse_space(S.to_json()) == S
    assert parse_space(json.dumps(S.to_json())) == S
