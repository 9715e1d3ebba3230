from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerlab.coeff import (GradedLaurent, Integers, LaurentRing, ModP, PrimeField, Rationals,
                            TwistedFraction, TwistedRing, TwistedScalar, hbar, laurent_invert,
                            parse_ring, t, to_fraction, twisted_is_invertible, twisted_mul)
from floerlab.errors import NonHomogeneous, ZeroElement

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exponents = st.fractions(min_value=-4, max_value=4, max_denominator=4)
twisted = st.dictionaries(exponents, rationals, max_size=4).map(TwistedScalar)
laurent = st.dictionaries(st.integers(-4, 4), rationals, max_size=4).map(lambda d: GradedLaurent(d, 6))


def test_to_fraction_reads_floats_through_repr():
    assert to_fraction(0.1) == Fraction(1, 10)
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(2) == 2


# twisted scalars

def test_half_powers_add():
    assert twisted_mul(t(Fraction(1, 2)), t(Fraction(3, 2))) == t(2)


def test_difference_of_squares():
    one = TwistedScalar.constant(1)
    assert twisted_mul(one + t(1), one - t(1)) == one - t(2)


def test_annihilation_by_zero():
    assert twisted_mul(1 - t(3), TwistedScalar()) == TwistedScalar()


def test_zero_has_empty_representation():
    z = t(1) - t(1)
    assert z.is_zero() and z.terms == {} and str(z) == "0"


def test_monomial_inverse():
    ok, inv = twisted_is_invertible(t(-2))
    assert ok and inv == t(2)


def test_zero_not_invertible():
    assert twisted_is_invertible(TwistedScalar()) == (False, None)


def test_one_minus_t_inverse_is_a_fraction():
    a = TwistedScalar.constant(1) - t(1)
    ok, inv = twisted_is_invertible(a)
    assert ok and isinstance(inv, TwistedFraction)
    assert inv * a == TwistedFraction(1)


def test_canonical_text_round_trip():
    a = TwistedScalar({Fraction(1, 2): 1, 2: -3})
    assert str(a) == "t^{1/2}:1, t^{2}:-3"
    assert TwistedScalar.parse(str(a)) == a


def test_specialize_at_one():
    assert (TwistedScalar.constant(1) - t(5)).specialize(1) == 0
    assert (2 * t(1) + t(2)).specialize(1) == 3


def test_fraction_equality_by_cross_multiplication():
    a = TwistedScalar.constant(1) - t(1)
    b = TwistedScalar.constant(1) + t(1)
    assert TwistedFraction(a * b, b * b) == TwistedFraction(a, b)
    assert TwistedFraction.parse(str(TwistedFraction(a, b))) == TwistedFraction(a, b)


@settings(max_examples=1000, deadline=None)
@given(twisted, twisted, twisted)
def test_twisted_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(st.fractions(min_value=-6, max_value=6, max_denominator=8),
       st.fractions(min_value=-6, max_value=6, max_denominator=8))
def test_group_ring_law(r, s):
    assert t(r) * t(s) == t(r + s)
    assert t(r).inverse() * t(r) == TwistedScalar.constant(1)


@given(twisted.filter(lambda x: not x.is_zero()))
def test_nonzero_twisted_scalars_are_invertible(a):
    ok, inv = twisted_is_invertible(a)
    assert ok
    assert inv * a == TwistedFraction(1)


# graded Laurent ring

def test_laurent_monomial_inverse():
    a = GradedLaurent({2: 3}, 4)
    assert laurent_invert(a) == GradedLaurent({-2: Fraction(1, 3)}, 4)


def test_laurent_rejects_inhomogeneous():
    with pytest.raises(NonHomogeneous):
        laurent_invert(hbar(1) + hbar(2))


def test_laurent_rejects_zero():
    with pytest.raises(ZeroElement):
        laurent_invert(GradedLaurent({}, 4))


def test_laurent_one_is_self_inverse():
    one = GradedLaurent.constant(1, 4)
    assert laurent_invert(one) == one


def test_hbar_degree():
    for l in (4, 6, 8):
        assert hbar(1, l=l).degree() == 2 - l
        assert GradedLaurent({3: 5}, l).degree() == 3 * (2 - l)


def test_laurent_needs_even_l():
    with pytest.raises(ValueError):
        GradedLaurent({0: 1}, 5)


def test_laurent_text_round_trip():
    a = GradedLaurent({-1: Fraction(1, 2), 3: -2}, 6)
    assert GradedLaurent.parse(str(a), 6) == a


@settings(max_examples=1000, deadline=None)
@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.integers(-5, 5), rationals.filter(bool), st.integers(-5, 5), rationals.filter(bool))
def test_grading_is_additive(p, c, q, d):
    a, b = GradedLaurent({p: c}, 6), GradedLaurent({q: d}, 6)
    assert (a * b).degree() == a.degree() + b.degree()
    assert a * laurent_invert(a) == GradedLaurent.constant(1, 6)


# rings

def test_ring_descriptors():
    assert parse_ring("Q") == Rationals()
    assert parse_ring("F_5") == PrimeField(5)
    assert parse_ring("K") == TwistedRing()
    assert parse_ring("L:6") == LaurentRing(6)
    assert not Integers().is_field
    assert PrimeField(2).coerce(3) == ModP(1, 2)
    assert LaurentRing(4).degree(hbar(2, l=4)) == -4


def test_mod_p_arithmetic():
    x = ModP(3, 7)
    assert x * x.inverse() == ModP(1, 7)
    assert ModP(Fraction(1, 2), 7) * 2 == ModP(1, 7)
