from fractions import Fraction

import pytest
from hypothesis import given, settings

from crsphere.rational import GaussRat

from conftest import gauss_rats


def test_multiplication_of_conjugate_pair():
    one_plus_i = GaussRat.of(1, 1)
    one_minus_i = GaussRat.of(1, -1)
    assert one_plus_i * one_minus_i == GaussRat.of(2)


def test_conjugate():
    q = GaussRat.of(Fraction(3, 2), Fraction(1, 3))
    assert q.conj() == GaussRat.of(Fraction(3, 2), Fraction(-1, 3))


def test_inverse_of_i():
    assert GaussRat.i().inv() == GaussRat.of(0, -1)


def test_division_by_zero_is_reported():
    with pytest.raises(ZeroDivisionError):
        GaussRat.of(1) / GaussRat.of(0)
    with pytest.raises(ZeroDivisionError):
        GaussRat.of(0).inv()


def test_normalized_representation():
    q = GaussRat.of(Fraction(2, 4), Fraction(-3, -9))
    assert q.re == Fraction(1, 2) and q.re.denominator == 2
    assert q.im == Fraction(1, 3) and q.im.denominator == 3


@settings(max_examples=200, deadline=None)
@given(gauss_rats, gauss_rats, gauss_rats)
def test_field_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=200, deadline=None)
@given(gauss_rats)
def test_conjugation_involution_and_norm(q):
    assert q.conj().conj() == q
    norm = q * q.conj()
    assert norm.im == 0
    assert norm.re >= 0


@settings(max_examples=200, deadline=None)
@given(gauss_rats)
def test_inverse_round_trip(q):
    if not q.is_zero():
        assert q * q.inv() == GaussRat.of(1)
