import random
from fractions import Fraction

import pytest

from quiverorders import linalg
from quiverorders.errors import DimensionError, ValidationError
from quiverorders.paths import (
    Arrow,
    LabeledQuiver,
    PathLinComb,
    QuiverPresentation,
    Representation,
    parse_lincomb,
    random_invertible,
    random_representation,
)
from quiverorders.quiver_core import make_setting
from quiverorders.setting_iso import settings_isomorphic


def test_auto_names(conifold):
    q = LabeledQuiver.from_setting(conifold)
    assert [(a.name, a.source, a.target) for a in q.arrows] == [
        ("a", 0, 1), ("b", 0, 1), ("c", 1, 0), ("d", 1, 0)]
    assert settings_isomorphic(q.to_setting(), conifold)


def test_auto_names_loops():
    q = LabeledQuiver.from_setting(make_setting([2], loops=[(0, 1, 1)]))
    assert [(a.name, a.marked) for a in q.arrows] == [("a", False), ("b", True)]


def test_written_order(z3):
    q = z3.quiver
    assert q.parse_word("x3y3") == ("y3", "x3")
    lc = parse_lincomb(q, "x3y3-y1x1", 0, 0)
    assert str(lc) == "x3y3-y1x1"


def test_parse_lincomb_coefficients(z3):
    q = z3.quiver
    lc = parse_lincomb(q, "2*x1 - 1/2 x1", 0, 1)
    assert lc.terms == ((Fraction(3, 2), ("x1",)),)
    assert str(parse_lincomb(q, "y1x1-v1", 0, 0)) == "y1x1-v1"
    assert parse_lincomb(q, "0", 0, 1).is_zero()


@pytest.mark.parametrize("text, s, t", [("x1", 1, 2), ("x1x2", 0, 2), ("v2", 0, 0), ("x1 y1", 1, 1), ("q7", 0, 0)])
def test_parse_lincomb_rejects(z3, text, s, t):
    with pytest.raises(ValidationError):
        parse_lincomb(z3.quiver, text, s, t)


def test_quiver_validation():
    with pytest.raises(ValidationError):
        LabeledQuiver((1, 1), (Arrow("a", 0, 1), Arrow("a", 1, 0)))
    with pytest.raises(ValidationError):
        Arrow("m", 0, 1, marked=True)
    with pytest.raises(ValidationError):
        LabeledQuiver((1,), (Arrow("a", 0, 1),))


def test_then_and_arithmetic(z3):
    q = z3.quiver
    y3, x3 = PathLinComb.arrow(q, "y3"), PathLinComb.arrow(q, "x3")
    assert str(y3.then(x3)) == "x3y3"
    assert (y3.then(x3) - y3.then(x3)).is_zero()
    with pytest.raises(ValidationError):
        x3.then(x3)


def test_presentation_validates_paths(z3):
    bad = PathLinComb(0, 0, ((Fraction(1), ("x1",)),))
    with pytest.raises(ValidationError):
        QuiverPresentation(z3.quiver, (bad,))
    with pytest.raises(DimensionError):
        QuiverPresentation(z3.quiver, z3.relations, ("I",))


def test_representation_shapes():
    q = LabeledQuiver((2, 1), (Arrow("a", 0, 1), Arrow("m", 0, 0, True)))
    Representation(q, {"a": [[1, 2]], "m": [[1, 0], [0, -1]]})
    with pytest.raises(DimensionError):
        Representation(q, {"a": [[1], [2]]})
    with pytest.raises(ValidationError):
        Representation(q, {"m": [[1, 0], [0, 1]]})


def test_representation_relations(z3, make_thin):
    rels = z3.relations
    Representation(z3.quiver, {"x1": [[1]], "y3": [[1]]}, rels)
    with pytest.raises(ValidationError):
        Representation(z3.quiver, {"x1": [[1]], "y1": [[1]]}, rels)


def test_act_is_base_change():
    q = LabeledQuiver((2, 2), (Arrow("a", 0, 1),))
    rng = random.Random(3)
    rep = random_representation(q, rng)
    g = [random_invertible(rng, 2), random_invertible(rng, 2)]
    moved = rep.act(g)
    assert moved.matrices["a"] == linalg.matmul(linalg.matmul(g[1], rep.matrices["a"]), linalg.inverse(g[0]))


def test_random_representation_marked_trace_zero():
    q = LabeledQuiver((3,), (Arrow("m", 0, 0, True),))
    for seed in range(5):
        rep = random_representation(q, random.Random(seed))
        assert linalg.trace(rep.matrices["m"]) == 0


def test_path_matrix_order(z3):
    rep = Representation(z3.quiver, {"y3": [[2]], "x3": [[5]]})
    assert rep.path_matrix(("y3", "x3")) == ((Fraction(10),),)
    assert rep.path_matrix((), 1) == ((Fraction(1),),)
