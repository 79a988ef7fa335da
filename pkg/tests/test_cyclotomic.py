from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverorders.cyclotomic import Cyclotomic, cyclotomic_coeffs
from quiverorders.errors import CharacterDataError

coef = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def elements(draw, order=None):
    n = order or draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]))
    return Cyclotomic(n, tuple(draw(st.lists(coef, min_size=1, max_size=n + 2))))


def test_phi():
    assert cyclotomic_coeffs(3) == (1, 1, 1)
    assert cyclotomic_coeffs(4) == (1, 0, 1)
    assert cyclotomic_coeffs(1) == (-1, 1)


def test_zeta_relations():
    z = Cyclotomic.zeta(3)
    assert z * z * z == 1
    assert 1 + z + z * z == 0
    assert z.conj() == z * z
    assert Cyclotomic.zeta(4) * Cyclotomic.zeta(4) == -1


def test_mixed_orders():
    z3, z6 = Cyclotomic.zeta(3), Cyclotomic.zeta(6)
    assert z6 * z6 == z3
    assert (z3 + 1).order == 3


def test_reduced_length():
    x = Cyclotomic(5, (1, 2, 3, 4, 5, 6))
    assert len(x.coeffs) == 4


def test_rational_check():
    z = Cyclotomic.zeta(5)
    assert not z.is_rational()
    with pytest.raises(CharacterDataError):
        z.to_fraction()
    assert (z * z.conj()).to_fraction() == 1


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_field_laws(data):
    n = data.draw(st.sampled_from([3, 4, 5, 8]))
    a, b, c = (data.draw(elements(n)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(elements())
def test_lift_preserves_value(x):
    assert x.lift(x.order * 3) == x
    assert (x.lift(x.order * 2) * 1).order == x.order * 2


def test_doc_round_trip():
    x = Cyclotomic(6, (Fraction(1, 2), -3))
    assert Cyclotomic.from_doc(x.to_doc()) == x
    assert x.to_doc() == {"N": 6, "coeffs": ["1/2", "-3"]}
