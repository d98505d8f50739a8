from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzysphere.coeff import (
    KAPPA,
    PONE,
    U,
    GaussRational,
    ParamPoly,
    format_gauss,
    format_poly,
    poly_eval,
    poly_interpolate,
    set_kappa_one,
    weight_lift,
)
from fuzzysphere.errors import DegreeExceeded, DivisionByZero, DuplicateNode

from strategies import gauss, homogeneous_polys, nonzero_gauss, param_polys, u_polys


def test_poly_eval_examples():
    assert poly_eval(U * Fraction(1, 3), 1, Fraction(3, 4)) == GaussRational(Fraction(1, 4))
    assert poly_eval(PONE, 7, 11) == GaussRational(1)
    assert poly_eval(KAPPA * KAPPA * U, 2, 1) == GaussRational(4)


def test_poly_eval_laurent_at_zero():
    with pytest.raises(DivisionByZero):
        poly_eval(ParamPoly.monomial(1, -2, 0), 0, 1)
    assert poly_eval(ParamPoly.monomial(1, -2, 0), 2, 1) == GaussRational(Fraction(1, 4))


def test_interpolate_examples():
    assert poly_interpolate([(0, 0), (1, 1), (2, 4)], 2) == U * U
    third = Fraction(1, 3)
    assert poly_interpolate([(1, 2 * third), (2, 4 * third), (3, 2)], 1) == U * (2 * third)
    assert poly_interpolate([(0, 5)], 0) == ParamPoly.const(5)


def test_interpolate_errors():
    with pytest.raises(DuplicateNode):
        poly_interpolate([(1, 1), (1, 2)], 1)
    with pytest.raises(DegreeExceeded):
        poly_interpolate([(0, 0), (1, 1), (2, 4)], 1)
    with pytest.raises(ValueError):
        poly_interpolate([(0, 0)], 2)


def test_weight_lift_examples():
    third = Fraction(1, 3)
    assert weight_lift(U * third, 2, 0) == U * third
    assert weight_lift(ParamPoly.const(Fraction(1, 12)), 2, 2) == ParamPoly.const(Fraction(1, 12))
    assert weight_lift(U * (2 * third), 4, 0) == KAPPA * KAPPA * U * (2 * third)
    # Laurent output is legal
    assert weight_lift(U, 0, 0) == ParamPoly.monomial(1, -2, 1)


def test_formatting():
    assert format_poly(ParamPoly()) == "0"
    assert format_poly(ParamPoly.monomial(GaussRational(0, 1), 1, 0)) == "i*k"
    assert format_poly(ParamPoly.monomial(Fraction(1, 12), -2, 0) + U * Fraction(1, 3)) == "1/12*k^-2 + 1/3*u"
    assert format_poly(U - KAPPA) == "u - k"
    assert format_gauss(GaussRational(0, -1)) == "-i"
    assert format_gauss(GaussRational(1, 2)) == "(1+2*i)"


def test_zero_coefficients_dropped():
    p = ParamPoly({(0, 0): 0, (1, 0): 2})
    assert set(p.terms) == {(1, 0)}
    assert not (U - U)


@given(gauss, gauss, gauss)
def test_gauss_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(param_polys(), param_polys(), param_polys())
def test_parampoly_ring(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p - p == ParamPoly()


@given(param_polys(), param_polys())
def test_conjugation_automorphism(p, q):
    assert (p * q).conjugate() == p.conjugate() * q.conjugate()
    assert (p + q).conjugate() == p.conjugate() + q.conjugate()
    assert p.conjugate().conjugate() == p


@given(param_polys(kmin=-2), param_polys(), st.integers(1, 4), st.integers(-3, 5))
def test_eval_is_homomorphism(p, q, k0, u0):
    assert poly_eval(p * q, k0, u0) == poly_eval(p, k0, u0) * poly_eval(q, k0, u0)
    assert poly_eval(p + q, k0, u0) == poly_eval(p, k0, u0) + poly_eval(q, k0, u0)


@given(u_polys(), st.integers(0, 3), st.integers(-5, 5))
def test_interpolation_round_trip(p, extra, start):
    deg = max(p.u_degree(), 0)
    nodes = [Fraction(start + j, 2) for j in range(deg + 1 + extra)]
    samples = [(x, poly_eval(p, 1, x)) for x in nodes]
    assert poly_interpolate(samples, deg) == p


@given(st.integers(0, 6).flatmap(lambda w: st.tuples(st.just(w), homogeneous_polys(w))), st.integers(0, 4))
def test_weight_lift_inverts_kappa_one(wp, word_degree):
    w, p = wp
    # a coefficient of weight w in front of a word of degree d lives in total weight w + d
    assert weight_lift(set_kappa_one(p), w + word_degree, word_degree) == p


@given(nonzero_gauss)
def test_inverse(a):
    assert a * (1 / a) == GaussRational(1)
