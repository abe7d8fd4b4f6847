from ksquant.symcore import (
    GaussianRational,
    Scalar,
    PhasePoly,
    poly_mul,
    evaluate,
    poisson_bracket,
    to_fraction
)
from ksquant.generic_classes import ExactnessError, EvaluationError
from funcs_for_tests import scalars, phase_polys, points, rationals
from hypothesis import given, settings
from fractions import Fraction
import pytest

exactness_err = pytest.raises(ExactnessError)
evaluation_err = pytest.raises(EvaluationError)

x = PhasePoly.x()
p = PhasePoly.p()


def test_to_fraction():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(2) == 2
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


def test_gaussian_rational():
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == 5
    assert z / z == 1
    assert str(GaussianRational(Fraction(1, 2), -1)) == "(1/2 - 1*i)"
    with pytest.raises(ZeroDivisionError):
        z / 0


def test_sqrt2_folding():
    assert Scalar.sqrt2() * Scalar.sqrt2() == Scalar.of(2)
    assert Scalar.sqrt2(3) == Scalar.sqrt2() * 2
    assert Scalar.sqrt2(-1) == Scalar.sqrt2() * Fraction(1, 2)


def test_scalar_merge():
    s = Scalar.hbar() + Scalar.hbar() - Scalar.hbar() * 2
    assert s.is_zero()
    assert Scalar({(1, 0, 0): 1, (0, 1, 0): 0}).is_monomial()


def test_scalar_inverse():
    assert Scalar.hbar(2).inverse() == Scalar.hbar(-2)
    assert (Scalar.i() * 2).inverse() == Scalar.i() * Fraction(-1, 2)
    with exactness_err:
        (Scalar.hbar() + Scalar.l()).inverse()
    with exactness_err:
        Scalar.zero().inverse()


def test_scalar_format():
    assert str(Scalar.hbar(2) / 4) == "hbar^2/4"
    assert str(-Scalar.l(2) / 2) == "-l^2/2"
    assert str(Scalar.i() * Scalar.hbar() / 2) == "i*hbar/2"
    assert str(Scalar.hbar(2) / (Scalar.l(2) * 2)) == "hbar^2/(2*l^2)"
    assert str(Scalar.zero()) == "0"


@settings(max_examples=100, deadline=None)
@given(scalars(), scalars(), scalars())
def test_scalar_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Scalar.zero()


def test_poly_mul_examples():
    assert poly_mul(x, p) == PhasePoly.monomial(1, 1)
    assert poly_mul(x + p, x - p) == x ** 2 - p ** 2
    assert poly_mul(x * p, x * p) == PhasePoly.monomial(2, 2)
    assert poly_mul(x, p).degree() == 2


@settings(max_examples=100, deadline=None)
@given(phase_polys(max_degree=3), phase_polys(max_degree=3), phase_polys(max_degree=3))
def test_poly_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + PhasePoly.zero() == a


@settings(max_examples=100, deadline=None)
@given(phase_polys(max_degree=3), phase_polys(max_degree=3))
def test_poly_mul_degree(a, b):
    if a and b:
        assert (a * b).degree() == a.degree() + b.degree()


def test_evaluate_examples():
    assert evaluate(x ** 2 * p ** 2, 2, 3) == 36
    hbar_term = PhasePoly.const(Scalar.hbar(2) / 4)
    assert evaluate(hbar_term, 0, 0, hbar=2) == 1
    assert evaluate((x * p) ** 2 + hbar_term, 1, 1, hbar=1) == GaussianRational(Fraction(5, 4))


def test_evaluate_errors():
    with exactness_err:
        evaluate(PhasePoly.const(Scalar.sqrt2()), 0, 0)
    assert evaluate(PhasePoly.const(Scalar.sqrt2()), 0, 0, approximate=True) == pytest.approx(2 ** 0.5)
    with evaluation_err:
        evaluate(PhasePoly.const(Scalar.l(-1)), 0, 0, l=0)
    with evaluation_err:
        evaluate(PhasePoly.const(Scalar.hbar(-2)), 1, 1, hbar=0)


@settings(max_examples=100, deadline=None)
@given(phase_polys(max_degree=3, symbols=False), phase_polys(max_degree=3, symbols=False), points(),
       rationals.filter(bool), rationals.filter(bool))
def test_evaluate_homomorphism(a, b, point, hbar, l):  # noqa: E741
    at = dict(x=point[0], p=point[1], hbar=hbar, l=l)
    assert evaluate(a * b, **at) == evaluate(a, **at) * evaluate(b, **at)
    assert evaluate(a + b, **at) == evaluate(a, **at) + evaluate(b, **at)


def test_derivative():
    assert (x ** 3 * p).derivative("x") == (x ** 2 * p).scale(3)
    assert (x ** 3).derivative("p").is_zero()


def test_poisson_bracket():
    assert poisson_bracket(x, p) == PhasePoly.const(1)
    assert poisson_bracket(p, x) == PhasePoly.const(-1)
    assert poisson_bracket(x ** 2, p ** 2) == (x * p).scale(4)


@settings(max_examples=50, deadline=None)
@given(phase_polys(max_degree=4), phase_polys(max_degree=4))
def test_poisson_antisymmetry(a, b):
    assert poisson_bracket(a, b) == -poisson_bracket(b, a)


def test_poly_format():
    assert str(x * p) == "x*p"
    assert str((x + p) ** 2) == "x^2 + 2*x*p + p^2"
    assert str(x ** 2 * p ** 2 + Scalar.hbar(2) / 4) == "x^2*p^2 + hbar^2/4"
    assert str(PhasePoly.zero()) == "0"


def test_immutable():
    with pytest.raises(AttributeError):
        x._coeffs = {}
    with pytest.raises(AttributeError):
        Scalar.one()._terms = {}
