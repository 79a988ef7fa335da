import pytest
from hypothesis import given, settings, strategies as st

from quiverorders.errors import ResourceError
from quiverorders.quiver_core import make_setting
from quiverorders.setting_iso import canonical_form, canonical_setting, settings_isomorphic

from oracles import isomorphic
from test_quiver_core import settings_st


def test_conifold_swap(conifold):
    assert canonical_form(conifold) == canonical_form(conifold.permuted([1, 0]))


def test_path_reversal():
    assert canonical_form(make_setting([1, 1], [(0, 1, 1)])) == canonical_form(make_setting([1, 1], [(1, 0, 1)]))


def test_cycle_types_any_order():
    t32 = make_setting([1, 1], [(0, 1, 3), (1, 0, 2)])
    t23 = make_setting([1, 1], [(0, 1, 2), (1, 0, 3)])
    assert settings_isomorphic(t32, t23)


def test_self_and_negatives(conifold, triangle):
    assert settings_isomorphic(conifold, conifold)
    assert not settings_isomorphic(conifold, triangle)
    assert not settings_isomorphic(make_setting([1], loops=[(0, 1, 0)]), make_setting([1], loops=[(0, 0, 1)]))


def test_bound():
    big = make_setting([1] * 4, [(i, (i + 1) % 4, 1) for i in range(4)])
    with pytest.raises(ResourceError):
        canonical_form(big, max_k=3)


@settings(max_examples=80, deadline=None)
@given(settings_st(), settings_st(), st.randoms(use_true_random=False))
def test_agrees_with_brute_force(s1, s2, rnd):
    perm = list(range(s1.k))
    rnd.shuffle(perm)
    assert settings_isomorphic(s1, s1.permuted(perm))
    assert settings_isomorphic(s1, s2) == isomorphic(s1, s2)


@settings(max_examples=40, deadline=None)
@given(settings_st())
def test_canonical_setting_is_isomorphic(s):
    assert isomorphic(s, canonical_setting(s))
