import random

import pytest
from hypothesis import given, settings, strategies as st

from gen import random_string_algebra
from repdim.embed import reduce_chain
from repdim.errors import NotSerialType
from repdim.gencog import build_M, build_M_with_reductions, serial_indecomposables
from repdim.presentation import Quiver, build_algebra, relation
from repdim.rep import injective_module, is_isomorphic, is_local, projective_module
from repdim.strings import socle_reduction_step

GOLDEN_LABELS = ["A", "A*", "M(1_x)", "M(a)", "M(b)", "M(ab)", "M(ba)", "M(aba)", "M(bab)"]


def test_dihedral_catalog(catalog):
    assert catalog.labels == GOLDEN_LABELS
    assert len(catalog) == 9
    assert catalog.total_dim == 7 + 7 + 1 + 2 + 2 + 3 + 3 + 4 + 4
    # the two simples of the split algebra collapse to one label
    simple = catalog.entries[catalog.index("M(1_x)")]
    assert simple.fn_length == 0 and simple.is_fn
    assert catalog.entries[0].kind == "P" and catalog.entries[1].kind == "I"


def test_catalog_entries_pairwise_distinct(catalog):
    mods = catalog.modules
    for i, x in enumerate(mods):
        assert is_local(x)
        for y in mods[i + 1:]:
            assert not is_isomorphic(x, y)


def test_fn_lengths(catalog):
    lengths = {e.label: e.fn_length for e in catalog.entries}
    assert lengths["M(aba)"] == 3 and lengths["M(ab)"] == 2 and lengths["A"] is None


def test_serial_type_required(A):
    with pytest.raises(NotSerialType):
        serial_indecomposables(A)


def test_index_by_alias():
    alg = build_algebra(Quiver(["1", "2"], [("p", "1", "2"), ("q", "1", "2")]), [], 2)
    cat = build_M(reduce_chain(alg))
    # simple projective P(2) is also a restricted simple
    assert cat.index("P(2)") == 1
    assert any(e.aliases for e in cat.entries)


def test_permuted_catalog(catalog):
    p = catalog.permuted([8, 7, 6, 5, 4, 3, 2, 1, 0])
    assert p.labels == GOLDEN_LABELS[::-1]


def test_reduction_catalog_contains_projective_injective():
    q = Quiver(["s", "l", "r", "t"], [("p1", "s", "l"), ("p2", "l", "t"), ("q1", "s", "r"), ("q2", "r", "t")])
    alg = build_algebra(q, [relation((1, q.path("p2", "p1")), (-1, q.path("q2", "q1")))], 3)
    red = socle_reduction_step(alg)
    inner = build_M(reduce_chain(red.algebra))
    cat = build_M_with_reductions([red], inner, alg)
    assert cat.algebra is alg
    pi = cat.modules[cat.index("P(s)")]
    assert pi.dim == 4 and is_isomorphic(pi, projective_module(alg, "s"))
    assert is_isomorphic(pi, injective_module(alg, "t"))
    assert "P(s)/soc" in cat.labels


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_random_catalog_is_generator_cogenerator(seed):
    alg = random_string_algebra(random.Random(seed))
    cat = build_M(reduce_chain(alg))
    for v in alg.vertices:
        for m in (projective_module(alg, v), injective_module(alg, v)):
            assert any(is_isomorphic(m, x) for x in cat.modules)
