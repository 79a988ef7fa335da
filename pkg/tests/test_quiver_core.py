import warnings

import pytest
from hypothesis import given, settings, strategies as st

from quiverorders.errors import DimensionError, ValidationError
from quiverorders.quiver_core import (
    MarkedQuiver,
    MarkedQuiverSetting,
    MoritaSetting,
    bergman_small_total,
    central_dimension,
    euler_form,
    euler_matrix,
    is_simple_dimvec,
    make_setting,
)

from oracles import euler_form as euler_oracle


def cycle3(alpha=(1, 1, 1)):
    return make_setting(list(alpha), [(0, 1, 1), (1, 2, 1), (2, 0, 1)])


@st.composite
def settings_st(draw, max_k=4):
    k = draw(st.integers(1, max_k))
    dims = draw(st.lists(st.integers(1, 3), min_size=k, max_size=k))
    arrows = draw(st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1), st.integers(1, 2)), max_size=6))
    loops = draw(st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, 2), st.integers(0, 2)), max_size=2))
    return make_setting(dims, arrows, loops)


def test_euler_conifold(conifold):
    assert euler_form(conifold, (1, 1), (1, 1)) == -2


def test_euler_triangle(triangle):
    assert euler_form(triangle, (1, 1, 1), (1, 1, 1)) == -3


def test_euler_zero_vector(conifold):
    assert euler_form(conifold, (0, 0), (3, 5)) == 0


def test_euler_length_mismatch(conifold):
    with pytest.raises(DimensionError):
        euler_form(conifold, (1,), (1, 1))


def test_euler_matrix_diagonal_counts_both_loop_kinds():
    s = make_setting([2], loops=[(0, 1, 2)])
    assert euler_matrix(s.quiver) == ((-2,),)


@settings(max_examples=60, deadline=None)
@given(settings_st(), st.data())
def test_euler_bilinear_and_matches_oracle(s, data):
    vec = st.lists(st.integers(-4, 4), min_size=s.k, max_size=s.k)
    a, a2, b, b2 = (data.draw(vec) for _ in range(4))
    add = lambda x, y: [p + q for p, q in zip(x, y)]
    assert euler_form(s, add(a, a2), b) == euler_form(s, a, b) + euler_form(s, a2, b)
    assert euler_form(s, a, add(b, b2)) == euler_form(s, a, b) + euler_form(s, a, b2)
    assert euler_form(s, a, b) == euler_oracle(s, a, b)


@settings(max_examples=40, deadline=None)
@given(settings_st())
def test_markings_forgotten(s):
    assert euler_matrix(s.quiver) == euler_matrix(s.quiver.erase_markings())


@settings(max_examples=40, deadline=None)
@given(settings_st(), st.randoms(use_true_random=False))
def test_central_dimension_permutation_invariant(s, rnd):
    perm = list(range(s.k))
    rnd.shuffle(perm)
    assert central_dimension(s, warn=False) == central_dimension(s.permuted(perm), warn=False)


@pytest.mark.parametrize("alpha, expected", [((1, 1, 1), True), ((2, 1, 1), False)])
def test_simple_oriented_cycle(alpha, expected):
    assert is_simple_dimvec(cycle3(alpha)) is expected


def test_simple_conifold(conifold):
    assert is_simple_dimvec(conifold)


def test_simple_needs_strong_connectivity():
    # both Euler inequalities hold at every vertex, but v2 cannot reach v1
    s = make_setting([1, 1], [(0, 1, 1)], [(0, 2, 0), (1, 2, 0)])
    assert not is_simple_dimvec(s)


def test_simple_disconnected_support_raises():
    with pytest.raises(ValidationError):
        is_simple_dimvec(make_setting([1, 1]))


@pytest.mark.parametrize("alpha, plain, marked, simple", [
    (1, 0, 0, True), (2, 0, 0, False), (2, 1, 0, True), (3, 0, 1, True),
])
def test_simple_one_vertex(alpha, plain, marked, simple):
    assert is_simple_dimvec(make_setting([alpha], loops=[(0, plain, marked)])) is simple


def test_central_dimension_examples(conifold, triangle):
    assert central_dimension(conifold) == 3
    assert central_dimension(triangle) == 4
    assert central_dimension(make_setting([2], loops=[(0, 0, 2)])) == 3


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_central_dimension_single_marked_loop(k):
    assert central_dimension(make_setting([k], loops=[(0, 0, 1)])) == 0


def test_central_dimension_warns_when_not_simple():
    with pytest.warns(UserWarning):
        central_dimension(cycle3((2, 1, 1)))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        central_dimension(cycle3((2, 1, 1)), warn=False)


@pytest.mark.parametrize("alpha, beta, n", [((1, 1), (1, 1), 2), ((1,), (7,), 7), ((2, 3), (1, 2), 8)])
def test_bergman_small(alpha, beta, n):
    assert bergman_small_total(alpha, MoritaSetting(beta)) == n
    assert bergman_small_total(alpha, beta) == n


def test_bergman_small_length_mismatch():
    with pytest.raises(DimensionError):
        bergman_small_total((1, 1), (1,))


def test_zero_dim_vertices_dropped():
    s = MarkedQuiverSetting(MarkedQuiver(((0, 1, 0), (1, 0, 1), (0, 1, 0)), (0, 0, 0), (0, 0, 0)), (1, 1, 0))
    assert s.k == 2 and s.arrows == ((0, 1), (1, 0))


def test_negative_counts_rejected():
    with pytest.raises(ValidationError):
        make_setting([1, 1], [(0, 1, -1)])
