import pytest
from hypothesis import given, settings, strategies as st

from quiverorders.cyclotomic import Cyclotomic
from quiverorders.errors import CharacterDataError, PairingError, UnsupportedError
from quiverorders.mckay import (
    CharacterTable,
    abelian_skew_relations,
    abelian_table,
    character_from_weights,
    cyclic_table,
    mckay_quiver,
    moment_relations,
)
from quiverorders.paths import Arrow, LabeledQuiver
from quiverorders.quiver_core import central_dimension
from quiverorders.setting_iso import settings_isomorphic

from oracles import numeric_inner


@pytest.fixture
def s3():
    return CharacterTable(6, (1, 3, 2), ((1, 1, 1), (1, -1, 1), (2, 0, -1)))


def column_sums_ok(table, s, d):
    k = s.k
    for j in range(k):
        total = sum(s.quiver.count(i, j) * s.alpha[i] for i in range(k))
        if total != d * s.alpha[j]:
            return False
    return True


def test_z3_triangle(triangle):
    t = cyclic_table(3)
    s = mckay_quiver(t, character_from_weights(t, [1, 2]))
    assert s.alpha == (1, 1, 1)
    assert settings_isomorphic(s, triangle)
    assert central_dimension(s) == 4


def test_trivial_group():
    t = cyclic_table(1)
    s = mckay_quiver(t, [3])
    assert s.k == 1 and s.plain == (3,)


def test_z2_conifold_shape(conifold):
    t = cyclic_table(2)
    assert settings_isomorphic(mckay_quiver(t, character_from_weights(t, [1, 1])), conifold)


def test_s3_standard(s3):
    s = mckay_quiver(s3, s3.chars[2])
    assert s.alpha == (1, 1, 2)
    assert column_sums_ok(s3, s, 2)
    assert s.arrows[2][0] == 1 and s.arrows[0][2] == 1 and s.plain[2] == 1


def test_inner_products_match_numeric(s3):
    for a in s3.chars:
        for b in s3.chars:
            exact = s3.inner(a, b)
            assert abs(numeric_inner(s3.class_sizes, a, b, 6) - float(exact)) < 1e-9


def test_non_integral_multiplicity(s3):
    with pytest.raises(CharacterDataError):
        mckay_quiver(s3, (1, 0, 0))


@pytest.mark.parametrize("bad", [
    dict(group_order=6, class_sizes=(1, 3, 3), chars=((1, 1, 1), (1, -1, 1), (2, 0, -1))),
    dict(group_order=6, class_sizes=(1, 3, 2), chars=((1, 1, 1), (1, 1, 1), (2, 0, -1))),
    dict(group_order=2, class_sizes=(1, 1), chars=((1, -1), (1, 1))),
])
def test_table_validation(bad):
    with pytest.raises(CharacterDataError):
        CharacterTable(**bad)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.data())
def test_cyclic_double_symmetry(n, data):
    w = data.draw(st.integers(1, n - 1))
    t = cyclic_table(n)
    s = mckay_quiver(t, character_from_weights(t, [w, n - w]))
    assert column_sums_ok(t, s, 2)
    assert all(s.quiver.count(i, j) == s.quiver.count(j, i) for i in range(n) for j in range(n))


def test_product_group_orthogonal():
    t = abelian_table((2, 3))
    assert t.k == 6 and t.is_abelian


def test_z3_relations(z3):
    assert z3.strings() == ["x3y3-y1x1", "x1y1-y2x2", "x2y2-y3x3"]
    arrows = {a.name: (a.source + 1, a.target + 1) for a in z3.quiver.arrows}
    assert arrows == {"x1": (1, 2), "x2": (2, 3), "x3": (3, 1), "y1": (2, 1), "y2": (3, 2), "y3": (1, 3)}


def test_trivial_group_relations():
    p = abelian_skew_relations([0, 0], 1)
    assert p.quiver.k == 1 and len(p.quiver.arrows) == 2
    assert p.strings() == ["x1y1-y1x1"]


def test_z2_relations(conifold):
    p = abelian_skew_relations([1, 1], 2)
    assert len(p.relations) == 2
    assert settings_isomorphic(p.quiver.to_setting(), conifold)


def test_three_coordinates_relation_count():
    p = abelian_skew_relations([1, 1, 1], 3)
    assert len(p.relations) == 3 * 3
    assert all(len(r.terms) == 2 for r in p.relations)


def test_skew_from_table_matches_orders(z3):
    p = abelian_skew_relations([1, 2], table=cyclic_table(3))
    assert p.strings() == z3.strings()


def test_non_abelian_unsupported(s3):
    with pytest.raises(UnsupportedError):
        abelian_skew_relations([1], table=s3)


def test_moment_matches_commutator(z3):
    m = moment_relations(z3.quiver, [("x1", "y1"), ("x2", "y2"), ("x3", "y3")])
    assert m.strings() == z3.strings()


def test_moment_single_loop_pair():
    q = LabeledQuiver((1,), (Arrow("x", 0, 0), Arrow("xs", 0, 0)))
    assert moment_relations(q, {"x": "xs"}).strings() == ["xxs-xsx"]


def test_moment_a1():
    q = LabeledQuiver((1, 1), (Arrow("x", 0, 1), Arrow("xs", 1, 0)))
    assert moment_relations(q, {"x": "xs"}).strings() == ["-xsx", "xxs"]


def test_moment_pairing_errors():
    q = LabeledQuiver((1, 1), (Arrow("x", 0, 1), Arrow("xs", 1, 0), Arrow("z", 0, 1)))
    with pytest.raises(PairingError):
        moment_relations(q, {"x": "xs"})
    with pytest.raises(PairingError):
        moment_relations(q, {"x": "z"})


def test_moment_relations_are_vertex_cycles(z3):
    m = moment_relations(z3.quiver, [("x1", "y1"), ("x2", "y2"), ("x3", "y3")])
    assert len(m.relations) == z3.quiver.k
    assert all(r.source == r.target and all(len(p) == 2 for _, p in r.terms) for r in m.relations)


def test_table_doc_round_trip():
    t = cyclic_table(4)
    assert CharacterTable.from_doc(t.to_doc()).chars == t.chars
    assert Cyclotomic.zeta(4) in t.chars[1]
