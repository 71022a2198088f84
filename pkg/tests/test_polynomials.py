import pytest

from knotcob.polynomials import Poly


def test_no_constant_term():
    with pytest.raises(ValueError):
        Poly(((0, 1),))
    with pytest.raises(ValueError):
        Poly(((2, 0),))


def test_arithmetic():
    p = Poly.monomial(1) + Poly.monomial(3, 2)
    q = Poly.monomial(3, -2)
    assert (p + q) == Poly.monomial(1)
    assert (p - p) == Poly()
    assert -p == Poly(((1, -1), (3, -2)))
    assert 2 * p == Poly(((1, 2), (3, 4)))
    assert not Poly()
    assert p


def test_derivative_at_one():
    assert Poly().derivative_at_one() == 0
    assert Poly.monomial(1).derivative_at_one() == 1
    assert Poly(((3, 2), (5, -1))).derivative_at_one() == 1


def test_str_increasing_exponents():
    assert str(Poly()) == "0"
    assert str(Poly.monomial(1)) == "t"
    assert str(-Poly.monomial(1)) == "-t"
    assert str(Poly(((3, 2), (5, -1)))) == "2t^3 - t^5"
    assert str(Poly(((1, 1), (2, 1)))) == "t + t^2"
