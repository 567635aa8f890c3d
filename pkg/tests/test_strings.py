import random

import pytest
from hypothesis import given, strategies as st

from gen import random_string_algebra
from repdim.errors import NotStringAlgebra
from repdim.presentation import Quiver, build_algebra, relation
from repdim.rep import hom_dim, is_isomorphic, is_local, projective_module
from repdim.strings import (
    c_invariant,
    classify,
    monomial_representation,
    serial_module,
    serial_modules,
    socle_reduction_step,
)


def square():
    q = Quiver(["s", "l", "r", "t"], [("p1", "s", "l"), ("p2", "l", "t"), ("q1", "s", "r"), ("q2", "r", "t")])
    return build_algebra(q, [relation((1, q.path("p2", "p1")), (-1, q.path("q2", "q1")))], 3)


def kronecker():
    return build_algebra(Quiver(["1", "2"], [("p", "1", "2"), ("q", "1", "2")]), [], 2)


def test_dihedral_classification(A):
    cls = classify(A)
    assert cls.special_biserial and cls.string and not cls.serial_type
    assert cls.c_value == 2


def test_split_is_serial_type():
    q = Quiver(["x_1", "x_2"], [("a", "x_1", "x_2"), ("b", "x_2", "x_1")])
    asp = build_algebra(q, [relation(q.path(*"abab")), relation(q.path(*"baba"))], 4)
    cls = classify(asp)
    assert cls.string and cls.serial_type and cls.c_value == 0


def test_square_is_not_string():
    cls = classify(square())
    assert cls.special_biserial and not cls.string
    assert cls.c_value == 2


def test_kronecker_c():
    assert c_invariant(kronecker()) == 2


def test_three_arrows_not_special_biserial():
    alg = build_algebra(Quiver(["u", "v"], [("p", "u", "v"), ("q", "u", "v"), ("r", "u", "v")]), [], 2)
    cls = classify(alg)
    assert not cls.special_biserial and cls.problems


def test_two_continuations_detected():
    q = Quiver(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w"), ("c", "v", "w")])
    alg = build_algebra(q, [], 3)
    assert not classify(alg).special_biserial


def test_serial_modules_of_dihedral(A):
    mods = serial_modules(A)
    assert len(mods) == A.dim
    for p, m in mods:
        assert m.dim == len(p.arrows) + 1
        assert is_local(m)
    # distinct words give non-isomorphic modules
    for i, (_, x) in enumerate(mods):
        for _, y in mods[i + 1:]:
            assert not is_isomorphic(x, y)


def test_serial_module_action(A):
    m = serial_module(A, A.quiver.path("a", "b"))
    # basis v, bv, abv: b then a
    assert m.maps["b"].tolist() == [[0, 0, 0], [1, 0, 0], [0, 0, 0]]
    assert m.maps["a"].tolist() == [[0, 0, 0], [0, 0, 0], [0, 1, 0]]
    assert m.label == "M(ab)"


def test_serial_modules_need_monomial():
    with pytest.raises(NotStringAlgebra):
        serial_modules(square())


def test_no_reduction_for_dihedral(A):
    assert socle_reduction_step(A) is None


def test_square_socle_reduction():
    red = socle_reduction_step(square())
    assert red.vertex == "s"
    assert red.kind == "relation"
    assert red.algebra.dim == 8
    assert classify(red.algebra).string
    assert sorted(str(r) for r in red.algebra.relations) == ["p2*p1", "q2*q1"]


def test_truncated_polynomial_reduction():
    q = Quiver(["x"], [("t", "x", "x")])
    alg = build_algebra(q, [relation(q.path("t", "t", "t"))], 3)
    red = socle_reduction_step(alg)
    assert red.kind == "relation" and red.algebra.dim == 2
    assert [str(r) for r in red.algebra.relations] == ["t*t"]


def test_semisimple_vertex_removed():
    alg = build_algebra(Quiver(["u", "v"], []), [], 2)
    red = socle_reduction_step(alg)
    assert red.kind == "vertex" and red.algebra.dim == 1


def test_monomial_representation_drops_redundancy():
    q = Quiver(["x"], [("t", "x", "x")])
    alg = build_algebra(q, [relation(q.path("t", "t")), relation(q.path("t", "t", "t"))], 3)
    mono = monomial_representation(alg)
    assert [str(r) for r in mono.relations] == ["t*t"]
    assert monomial_representation(square()) is None


@given(st.integers(0, 10_000))
def test_random_string_algebras_classify(seed):
    alg = random_string_algebra(random.Random(seed))
    cls = classify(alg)
    assert cls.special_biserial and cls.string
    assert cls.c_value == c_invariant(alg)


@given(st.integers(0, 10_000))
def test_serial_tops_are_simple(seed):
    alg = random_string_algebra(random.Random(seed), max_bound=4)
    for p, m in serial_modules(alg):
        # Hom(P(v), M(C)) = dim of the v-component; top of M(C) is at s(C)
        assert hom_dim(projective_module(alg, p.source), m) == m.dims[p.source]
        assert sum(m.dims.values()) == len(p.arrows) + 1
