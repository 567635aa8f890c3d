import random

import pytest
from hypothesis import given, strategies as st

from gen import random_string_algebra
from oracles import algebra_dim_bruteforce
from repdim.errors import AdmissibilityViolated, InvalidRelation, UnknownArrow
from repdim.presentation import Path, Quiver, build_algebra, relation


def square():
    q = Quiver(["s", "l", "r", "t"], [("p1", "s", "l"), ("p2", "l", "t"), ("q1", "s", "r"), ("q2", "r", "t")])
    return q, [relation((1, q.path("p2", "p1")), (-1, q.path("q2", "q1")))]


def asp():
    q = Quiver(["x_1", "x_2"], [("a", "x_1", "x_2"), ("b", "x_2", "x_1")])
    return build_algebra(q, [relation(q.path(*"abab")), relation(q.path(*"baba"))], 4)


def test_dihedral_basis(A):
    # dim 7 with basis 1, a, b, ab, ba, aba, bab
    assert A.dim == 7
    assert [A.format_path(p) for p in A.basis] == ["1_x", "a", "b", "ab", "ba", "aba", "bab"]


def test_split_algebra_dim():
    assert asp().dim == 8


def test_square_dim_against_oracle():
    q, rels = square()
    alg = build_algebra(q, rels, 3)
    assert alg.dim == algebra_dim_bruteforce(q, rels, 3) == 9


def test_semisimple():
    alg = build_algebra(Quiver(["u", "v"], []), [], 2)
    assert alg.dim == 2 and alg.radical_basis() == []


def test_path_product_convention(A):
    q = A.quiver
    a, b = Path("x", "x", ("a",)), Path("x", "x", ("b",))
    assert str(a * b) == "a*b"
    assert q.path("a", "b") == a * b
    # a*a = 0, a*b survives
    assert A.normal_form(q.path("a", "a")) == [0] * 7
    assert A.normal_form(q.path("a", "b"))[A.index[q.path("a", "b")]] == 1


def test_noncomposable_product_is_none():
    q = Quiver(["u", "v"], [("c", "u", "v")])
    c = q.path("c")
    assert c * c is None


def test_admissibility_violation():
    q = Quiver(["x"], [("t", "x", "x")])
    with pytest.raises(AdmissibilityViolated):
        build_algebra(q, [], 3)


def test_relation_errors():
    q = Quiver(["u", "v"], [("c", "u", "v"), ("d", "v", "u")])
    with pytest.raises(InvalidRelation):
        build_algebra(q, [relation(q.path("c"))], 2)
    with pytest.raises(InvalidRelation):
        build_algebra(q, [relation((1, q.path("c", "d")), (1, q.path("d", "c")))], 3)
    with pytest.raises(UnknownArrow):
        q.path("z")


def test_relations_reduce_to_zero(A):
    for r in A.relations:
        assert not A.normal_form_sparse(r)


def test_square_commutativity():
    q, rels = square()
    alg = build_algebra(q, rels, 3)
    assert alg.normal_form(q.path("p2", "p1")) == alg.normal_form(q.path("q2", "q1"))


algebras = st.integers(0, 10_000).map(lambda s: random_string_algebra(random.Random(s)))


@given(algebras)
def test_dim_matches_bruteforce(alg):
    assert alg.dim == algebra_dim_bruteforce(alg.quiver, alg.relations, alg.bound)


@given(algebras, st.data())
def test_associativity(alg, data):
    n = alg.dim
    for _ in range(5):
        i, j, k = (data.draw(st.integers(0, n - 1)) for _ in range(3))
        x, y, z = {i: 1}, {j: 1}, {k: 1}
        assert alg.multiply_sparse(alg.multiply_sparse(x, y), z) == alg.multiply_sparse(x, alg.multiply_sparse(y, z))


@given(algebras)
def test_radical_nilpotent(alg):
    rad = alg.radical_basis()
    layer = [{i: 1} for i in rad]
    for _ in range(alg.bound - 1):
        layer = [alg.multiply_sparse(u, {r: 1}) for u in layer for r in rad]
        layer = [u for u in layer if u]
    assert not layer


@given(algebras)
def test_unit(alg):
    one = {i: c for i, c in enumerate(alg.one()) if c}
    for i in range(alg.dim):
        assert alg.multiply_sparse(one, {i: 1}) == {i: 1} == alg.multiply_sparse({i: 1}, one)
