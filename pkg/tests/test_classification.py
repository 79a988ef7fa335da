import pytest

from quiverorders import classification, quiver_core, reduction
from quiverorders.classification import (
    IsolatedType,
    KNOWN_SINGULARITIES,
    detect_isolated,
    enumerate_zero_settings,
    known_singularity,
    smooth_list_entry,
    smooth_local_type,
    vertex_contribution,
)
from quiverorders.errors import ValidationError
from quiverorders.quiver_core import central_dimension, make_setting

from oracles import brute_zero_settings, isomorphic


@pytest.fixture(scope="module")
def brute():
    return brute_zero_settings((2, 3, 4), quiver_core, reduction, classification)


def dedupe(settings):
    out = []
    for s in settings:
        if not any(isomorphic(s, t) for t in out):
            out.append(s)
    return out


@pytest.mark.parametrize("d", [2, 3, 4])
def test_enumeration_matches_exhaustive_search(brute, d):
    got = enumerate_zero_settings(d)
    want = dedupe(brute[d])
    assert len(got) == len(want)
    assert all(any(isomorphic(g, w) for w in want) for g in got)


def test_dim3_is_conifold(conifold):
    (only,) = enumerate_zero_settings(3)
    assert isomorphic(only, conifold)


def test_dim4_list():
    got = enumerate_zero_settings(4)
    expected = [
        make_setting([1, 1], [(0, 1, 2), (1, 0, 3)]),
        make_setting([1, 1, 1], [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 0, 1), (0, 2, 1)]),
        make_setting([1, 1, 1], [(0, 1, 2), (1, 2, 2), (2, 0, 2)]),
    ]
    assert len(got) == 3
    assert all(any(isomorphic(g, e) for g in got) for e in expected)


def test_dim5_isolated_types():
    found = enumerate_zero_settings(5)
    types = {str(t) for t in map(detect_isolated, found) if t is not None}
    assert types == {"T(4,2)", "T(3,3)", "T(3,2,2)", "T(2,2,2,2)"}


def test_domain_error():
    with pytest.raises(ValidationError):
        enumerate_zero_settings(1)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_enumerated_settings_are_zero_and_have_dimension_d(d):
    for s in enumerate_zero_settings(d):
        assert reduction.is_zero_setting(s)
        assert central_dimension(s) == d
        assert smooth_list_entry(s) is None


def test_vertex_contribution():
    assert vertex_contribution(3, 0, 0) == 3
    assert vertex_contribution(1, 1, 0) is None
    assert vertex_contribution(2, 1, 0) == 4
    assert vertex_contribution(2, 0, 1) == 3
    assert vertex_contribution(2, 1, 1) == 5


@pytest.mark.parametrize("setting, smooth", [
    (make_setting([1], loops=[(0, 4, 0)]), True),
    (make_setting([2], loops=[(0, 0, 2)]), True),
    (make_setting([1, 1], [(0, 1, 2), (1, 0, 2)]), False),
    (make_setting([3], loops=[(0, 2, 0)]), False),
])
def test_smooth_local_type(setting, smooth):
    assert smooth_local_type(setting).smooth is smooth


def test_smooth_entry_names():
    assert smooth_list_entry(make_setting([1])) == "point"
    assert smooth_list_entry(make_setting([3], loops=[(0, 0, 1)])) == "dim-3 vertex, one marked loop"


@pytest.mark.parametrize("mults, d", [((2, 2), 3), ((2, 2, 2), 4), ((4, 2), 5), ((2, 2, 2, 2), 5)])
def test_isolated_type_dimension(mults, d):
    t = IsolatedType(mults)
    assert t.dimension == d
    assert central_dimension(t.setting()) == d


def test_isolated_type_sorted_multiset():
    assert IsolatedType((2, 3)) == IsolatedType((3, 2))
    assert str(IsolatedType((2, 3, 2))) == "T(3,2,2)"


def test_detect_isolated(conifold):
    assert str(detect_isolated(conifold)) == "T(2,2)"
    assert str(detect_isolated(make_setting([1, 1, 1], [(0, 1, 2), (1, 2, 2), (2, 0, 2)]))) == "T(2,2,2)"
    assert detect_isolated(make_setting([2], loops=[(0, 1, 0)])) is None


def test_known_singularities(conifold, triangle):
    rec = known_singularity(conifold)
    assert rec.name == "conifold" and rec.invariant_presentation == "C[x,y,u,v]/(xy-uv)"
    assert known_singularity(triangle).invariant_presentation == "C[x1,x2,x3,x4,x5]/(x4x5-x1x2x3)"
    assert known_singularity(make_setting([1], loops=[(0, 3, 0)])) is None


def test_known_singularity_after_reduction(conifold):
    # a conifold with an extra loop at each vertex reduces to the conifold with z = 2
    s = make_setting([1, 1], [(0, 1, 2), (1, 0, 2)], [(0, 1, 0), (1, 1, 0)])
    assert known_singularity(s).name == "conifold"


def test_database_dimensions():
    for rec in KNOWN_SINGULARITIES:
        assert central_dimension(rec.setting) == rec.dimension
