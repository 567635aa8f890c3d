import random

import pytest
from hypothesis import given, strategies as st

from gen import random_module, random_string_algebra
from oracles import hom_dim_kronecker
from repdim.errors import AlgebraMismatch, CharacteristicTooSmall, RelationViolated, ShapeMismatch
from repdim.exactlin import GF, Matrix
from repdim.presentation import Quiver, build_algebra, relation
from repdim.rep import (
    Representation,
    decompose,
    direct_sum,
    end_ring_with_radical,
    hom_basis,
    hom_dim,
    hom_image_kernel_cokernel,
    injective_module,
    is_isomorphic,
    is_local,
    is_semisimple,
    layers,
    projective_module,
    simple_module,
    socle_dims,
    sum_injections,
    sum_morphism,
    top_dims,
    zero_module,
)
from repdim.strings import serial_module


def M(A, word):
    return serial_module(A, A.quiver.path(*word)) if word else serial_module(A, A.basis[0])


def test_projective_and_injective_dims(A):
    assert projective_module(A, "x").dim == 7
    assert injective_module(A, "x").dim == 7


def test_split_algebra_projectives():
    q = Quiver(["x_1", "x_2"], [("a", "x_1", "x_2"), ("b", "x_2", "x_1")])
    asp = build_algebra(q, [relation(q.path(*"abab")), relation(q.path(*"baba"))], 4)
    assert projective_module(asp, "x_1").dim == 4
    assert injective_module(asp, "x_1").dim == 4


def test_semisimple_projective():
    alg = build_algebra(Quiver(["u"], []), [], 2)
    assert projective_module(alg, "u").dim == 1 == injective_module(alg, "u").dim


def test_hom_from_simple_into_A(A):
    # socle of A is spanned by aba and bab
    assert hom_dim(simple_module(A, "x"), projective_module(A, "x")) == 2


def test_hom_from_free_is_underlying_space(A):
    p = projective_module(A, "x")
    for w in ["", "a", "ab", "bab"]:
        x = M(A, w)
        assert hom_dim(p, x) == x.dim


def test_identity_in_end(A):
    x = M(A, "ab")
    assert hom_dim(x, x) >= 1
    h = hom_basis(x, x)
    ident = x.identity()
    assert h.combine(h.coords(ident)).global_matrix() == ident.global_matrix()


def test_kernel_image_cokernel_identity_and_zero(A):
    x = M(A, "ba")
    kic = hom_image_kernel_cokernel(x.identity())
    assert kic.kernel.dim == 0 and kic.image.dim == x.dim and kic.cokernel.dim == 0
    y = M(A, "a")
    zero = hom_basis(x, y)[0].scale(0)
    kic = hom_image_kernel_cokernel(zero)
    assert kic.kernel.dim == x.dim and kic.cokernel.dim == y.dim


def test_socle_into_two_serials_cokernel(A):
    # 0 -> k -> M(aba) + M(bab) -> A* -> 0
    s = simple_module(A, "x")
    m1, m2 = M(A, "aba"), M(A, "bab")
    total = direct_sum(m1, m2)
    f1, f2 = hom_basis(s, m1)[0], hom_basis(s, m2)[0]
    inj = sum_injections([m1, m2], total)
    f = (inj[0] @ f1) + (inj[1] @ f2)
    kic = hom_image_kernel_cokernel(f)
    assert kic.kernel.dim == 0
    assert kic.cokernel.dim == 7
    assert is_isomorphic(kic.cokernel, injective_module(A, "x"))


def test_layers_of_A(A):
    lay = layers(projective_module(A, "x"))
    assert lay.top.dim == 1
    assert lay.radical.dim == 6
    assert lay.socle.dim == 2
    assert not lay.is_semisimple


def test_semisimple_layers(A):
    s = direct_sum(simple_module(A, "x"), simple_module(A, "x"))
    assert layers(s).radical.dim == 0 and layers(s).is_semisimple


def test_end_ring_examples(A):
    k = simple_module(A, "x")
    e = end_ring_with_radical(k)
    assert e.dim == 1 and e.radical == []
    e = end_ring_with_radical(direct_sum(k, k))
    assert e.dim == 4 and e.radical == []
    e = end_ring_with_radical(M(A, "a"))
    assert e.dim == 2 and len(e.radical) == 1 and e.top_dim == 1


def test_characteristic_gate():
    q = Quiver(["x"], [("t", "x", "x")])
    alg = build_algebra(q, [relation(q.path("t", "t"))], 2, field=GF(2))
    x = direct_sum(*[projective_module(alg, "x")] * 1)
    with pytest.raises(CharacteristicTooSmall):
        end_ring_with_radical(x)


def test_decompose_recovers_summands(A):
    k, ma = simple_module(A, "x"), M(A, "a")
    parts = decompose(direct_sum(k, ma))
    assert sorted(m.dim for m, _ in parts) == [1, 2]
    assert all(mult == 1 for _, mult in parts)


def test_decompose_multiplicity(A):
    ma = M(A, "ab")
    parts = decompose(direct_sum(ma, M(A, ""), ma))
    assert sorted((m.dim, k) for m, k in parts) == [(1, 1), (3, 2)]


def test_isomorphism_filters_and_certificate(A):
    x = M(A, "ab")
    r = is_isomorphic(x, x)
    assert r and r.certificate.is_iso()
    assert not is_isomorphic(simple_module(A, "x"), M(A, "a"))
    assert not is_isomorphic(M(A, "ab"), M(A, "ba"))


def test_iso_after_base_change(A):
    x = direct_sum(M(A, "ab"), M(A, "b"))
    g = {"x": Matrix([[1, 2, 0, 0, 1], [0, 1, 0, 0, 0], [0, 0, 1, 3, 0], [0, 0, 0, 1, 0], [1, 0, 0, 0, 2]])}
    y = x.transport(g)
    r = is_isomorphic(x, y)
    assert r and r.certificate.is_iso() and r.certificate.check()


def test_relation_violation(A):
    with pytest.raises(RelationViolated):
        Representation(A, {"x": 2}, {"a": [[1, 0], [0, 1]], "b": 0})


def test_shape_mismatch(A):
    with pytest.raises(ShapeMismatch):
        Representation(A, {"x": 2}, {"a": [[1, 0]]})


def test_algebra_mismatch(A):
    other = build_algebra(Quiver(["x"], []), [], 2)
    with pytest.raises(AlgebraMismatch):
        hom_basis(simple_module(A, "x"), simple_module(other, "x"))


def test_zero_module(A):
    z = zero_module(A)
    assert z.dim == 0 and hom_dim(z, M(A, "a")) == 0


# -- properties over random modules ------------------------------------------

seeds = st.integers(0, 10_000)


def _random_pair(seed):
    rng = random.Random(seed)
    alg = random_string_algebra(rng, max_vertices=3, max_arrows=4, max_bound=4)
    return alg, random_module(alg, rng, copies=1), random_module(alg, rng, copies=1)


@given(seeds)
def test_hom_dims_match_kronecker_oracle(seed):
    alg, x, y = _random_pair(seed)
    assert hom_dim(x, y) == hom_dim_kronecker(x, y)


@given(seeds)
def test_hom_basis_elements_intertwine(seed):
    alg, x, y = _random_pair(seed)
    for f in hom_basis(x, y):
        assert f.check()


@given(seeds)
def test_hom_from_projective_and_into_injective(seed):
    alg, x, _ = _random_pair(seed)
    for v in alg.vertices:
        assert hom_dim(projective_module(alg, v), x) == x.dims[v]
        assert hom_dim(x, injective_module(alg, v)) == x.dims[v]


@given(seeds)
def test_socle_semisimple_and_top_radical_free(seed):
    alg, x, _ = _random_pair(seed)
    lay = layers(x)
    assert is_semisimple(lay.socle)
    assert layers(lay.top).radical.dim == 0
    assert sum(top_dims(x).values()) == lay.top.dim
    assert sum(socle_dims(x).values()) == lay.socle.dim


@given(seeds)
def test_decompose_reconstitutes(seed):
    alg, x, _ = _random_pair(seed)
    parts = decompose(x)
    if not parts:
        assert x.dim == 0
        return
    rebuilt = direct_sum(*[m for m, k in parts for _ in range(k)])
    assert rebuilt.dim == x.dim
    assert all(is_local(m) for m, _ in parts)
    assert is_isomorphic(rebuilt, x)


@given(seeds)
def test_sum_morphism_is_intertwiner(seed):
    alg, x, y = _random_pair(seed)
    hs = list(hom_basis(x, y))
    if not hs:
        return
    total = direct_sum(x, x)
    g = sum_morphism([hs[0], hs[-1]], total, y)
    assert g.check()
