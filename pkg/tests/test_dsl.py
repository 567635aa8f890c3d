import random

import pytest
from hypothesis import given, strategies as st

from gen import random_module, random_string_algebra
from repdim.dsl import (
    emit_algebra,
    emit_module,
    load_algebra,
    load_module,
    parse_algebra_file,
    parse_module_file,
)
from repdim.errors import DuplicateLabel, QuivSyntaxError, RelationViolated, UnknownSymbol
from repdim.exactlin import GF
from repdim.strings import serial_module

DIHEDRAL = """\
# dihedral with socle deformed away
field: Q
vertices: x
arrows:
  a: x -> x
  b: x -> x
relations: a*a, b*b, a*b*a*b, b*a*b*a
bound: 4
"""


def test_parse_dihedral(A):
    alg = parse_algebra_file(DIHEDRAL, name="d").build()
    assert alg.dim == 7
    assert alg.same_as(A)


def test_load_example_files(algebras_dir, A):
    assert load_algebra(algebras_dir / "dihedral_socle.quiv").same_as(A)
    assert load_algebra(algebras_dir / "asp.quiv").dim == 8
    assert load_algebra(algebras_dir / "kronecker.quiv").dim == 4
    assert load_algebra(algebras_dir / "square.quiv").dim == 9


def test_semisimple_file():
    alg = parse_algebra_file("vertices: u, v\narrows:\nrelations:\nbound: 2\n").build()
    assert alg.dim == 2


def test_commutativity_relation_and_rationals():
    text = ("vertices: s, l, r, t\narrows:\n p1: s -> l\n p2: l -> t\n q1: s -> r\n q2: r -> t\n"
            "relations: p2*p1 - 3/2 q2*q1\nbound: 3\n")
    alg = parse_algebra_file(text).build()
    assert alg.dim == 9
    (rel,) = alg.relations
    assert sorted(c for c, _ in rel.terms) == sorted([1, alg.field.norm(-3) / 2])


@pytest.mark.parametrize("spec", ["F5", "Fp(5)", "GF(5)"])
def test_prime_field(spec):
    text = f"field: {spec}\nvertices: x\narrows:\n t: x -> x\nrelations: t*t*t\nbound: 3\n"
    alg = parse_algebra_file(text).build()
    assert alg.field == GF(5) and alg.dim == 3


def test_unknown_arrow_position():
    text = DIHEDRAL.replace("relations: a*a", "relations: c*a")
    with pytest.raises(UnknownSymbol) as err:
        parse_algebra_file(text)
    assert err.value.line == 7 and err.value.column is not None
    assert "'c'" in str(err.value)


def test_unknown_vertex():
    with pytest.raises(UnknownSymbol):
        parse_algebra_file(DIHEDRAL.replace("b: x -> x", "b: x -> y"))


def test_duplicate_vertex_and_arrow():
    with pytest.raises(DuplicateLabel):
        parse_algebra_file(DIHEDRAL.replace("vertices: x", "vertices: x, x"))
    with pytest.raises(DuplicateLabel):
        parse_algebra_file(DIHEDRAL.replace("b: x -> x", "a: x -> x"))


@pytest.mark.parametrize("bad", [
    DIHEDRAL.replace("bound: 4", ""),
    DIHEDRAL.replace("vertices: x\n", ""),
    DIHEDRAL.replace("a: x -> x", "a x -> x"),
    DIHEDRAL.replace("a*a,", "a**a,"),
    DIHEDRAL.replace("bound: 4", "bound: four"),
])
def test_syntax_errors(bad):
    with pytest.raises((QuivSyntaxError, UnknownSymbol)):
        parse_algebra_file(bad)


def test_module_file(algebras_dir, A):
    ma = load_module(algebras_dir / "Ma.rep", A)
    assert ma.same_as(serial_module(A, A.quiver.path("a")).with_label(ma.label))
    assert load_module(algebras_dir / "simple.rep", A).dim == 1


def test_module_multiline_matrix(A):
    text = "dim x = 2\nmap a = [[0,0],\n         [1,0]]\nb = 0\n"
    assert parse_module_file(text, A).maps["a"].tolist() == [[0, 0], [1, 0]]


def test_module_violating_relation(A):
    with pytest.raises(RelationViolated):
        parse_module_file("dim x = 2\nmap a = [[1,0],[0,1]]\nmap b = 0\n", A)


def test_module_errors(A):
    with pytest.raises(UnknownSymbol):
        parse_module_file("dim y = 1\n", A)
    with pytest.raises(DuplicateLabel):
        parse_module_file("dim x = 1\ndim x = 1\n", A)


def test_zero_module(A):
    assert parse_module_file("", A).dim == 0


def test_reduced_algebras_round_trip(chain):
    for alg in [chain.algebras[0], chain.terminal]:
        assert parse_algebra_file(emit_algebra(alg)).build().same_as(alg)


@given(st.integers(0, 10_000))
def test_random_algebra_round_trip(seed):
    alg = random_string_algebra(random.Random(seed))
    assert parse_algebra_file(emit_algebra(alg)).build().same_as(alg)


@given(st.integers(0, 10_000))
def test_random_module_round_trip(seed):
    rng = random.Random(seed)
    alg = random_string_algebra(rng, max_vertices=3, max_arrows=4, max_bound=4)
    x = random_module(alg, rng, copies=1)
    y = parse_module_file(emit_module(x), alg)
    assert y.dims == x.dims and all(y.maps[a] == x.maps[a] for a in x.maps)
