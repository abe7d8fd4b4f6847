from ksquant.quantmaps import (
    weyl_quantize,
    weyl_symmetrized,
    weyl_symbol,
    validate_weyl_closed_form,
    antiwick_quantize,
    antiwick_symbol,
    weierstrass_transform,
    quantize,
    symbol,
    ks2b_report,
    dirac_report,
    condition_checks,
    antiwick_monomial,
    weyl_monomial,
    _alpha_power
)
from ksquant.generic_classes import Alphabet, OrderTag, Scheme
from ksquant.symcore import Scalar, PhasePoly
from ksquant.opalg import OpPoly, adjoint
from ksquant.parsing import parse_phase_expr, parse_operator_expr
from funcs_for_tests import phase_polys, op_polys, scalars, rationals
from hypothesis import given, settings, strategies as st
import pytest

x = PhasePoly.x()
p = PhasePoly.p()
X, P = OpPoly.X(), OpPoly.P()
schemes = pytest.mark.parametrize("scheme", [Scheme.WEYL, Scheme.ANTI_WICK])


# exact reproduction of the xp example
def test_weyl_xp():
    weyl_xp = weyl_quantize(x * p)
    assert weyl_xp == parse_operator_expr("1/2 (X P + P X)")
    assert weyl_xp.order_tag == OrderTag.STANDARD
    assert str(weyl_symmetrized(x * p)) == "1/2 (X P + P X)"
    assert str(weyl_xp) == "X P - i hbar/2"


def test_weyl_xp_squared():
    squared = weyl_quantize(x * p) ** 2
    assert squared == parse_operator_expr("X^2 P^2 - 2 i hbar X P - hbar^2/4")
    x2p2 = weyl_quantize(x ** 2 * p ** 2)
    assert x2p2 == parse_operator_expr("X^2 P^2 - 2 i hbar X P - hbar^2/2")
    assert x2p2 - squared == OpPoly.scalar(-Scalar.hbar(2) / 4)


def test_weyl_identity():
    assert weyl_quantize(PhasePoly.const(1)) == OpPoly.identity()
    assert weyl_quantize(PhasePoly.zero()).is_zero()


def test_weyl_symmetric_powers():
    # (x + p)^3 maps to (X + P)^3
    assert weyl_quantize((x + p) ** 3) == (X + P) ** 3


@settings(max_examples=30, deadline=None)
@given(a=rationals, b=rationals, j=st.integers(0, 6))
def test_weyl_linear_form_powers(a, b, j):
    assert weyl_quantize((x.scale(a) + p.scale(b)) ** j) == (X.scale(a) + P.scale(b)) ** j


def test_weyl_closed_form():
    assert validate_weyl_closed_form(6) == []


@settings(max_examples=50, deadline=None)
@given(phase_polys(max_degree=4))
def test_weyl_symmetrized_is_weyl(A):
    assert weyl_symmetrized(A) == weyl_quantize(A)


def test_antiwick_examples():
    assert antiwick_quantize(x ** 2) == parse_operator_expr("X^2 + l^2/2")
    assert antiwick_quantize(p ** 2) == parse_operator_expr("P^2 + hbar^2/(2 l^2)")
    assert antiwick_quantize(x) == X
    aw = antiwick_quantize(x ** 2)
    assert aw.alphabet == Alphabet.LADDER
    assert aw.order_tag == OrderTag.ANTI_NORMAL


def test_antiwick_symbol_examples():
    assert antiwick_symbol(X ** 2) == parse_phase_expr("x^2 - l^2/2")
    assert antiwick_symbol(OpPoly.a()) == parse_phase_expr("(x/l + i l p/hbar)/sqrt2")


@settings(max_examples=200, deadline=None)
@given(phase_polys())
def test_weyl_round_trip(A):
    assert weyl_symbol(weyl_quantize(A)) == A


@settings(max_examples=200, deadline=None)
@given(phase_polys())
def test_antiwick_round_trip(A):
    assert antiwick_symbol(antiwick_quantize(A)) == A


@settings(max_examples=50, deadline=None)
@given(op_polys())
def test_weierstrass_consistency(operator):
    assert weierstrass_transform(antiwick_symbol(operator)) == weyl_symbol(operator)


def test_weierstrass_x_squared():
    assert weierstrass_transform(parse_phase_expr("x^2 - l^2/2")) == x ** 2
    assert weyl_symbol(X ** 2) == x ** 2


@schemes
@settings(max_examples=100, deadline=None)
@given(A=phase_polys(max_degree=4), B=phase_polys(max_degree=4), alpha=scalars(), beta=scalars())
def test_linearity(scheme, A, B, alpha, beta):
    combined = quantize(A.scale(alpha) + B.scale(beta), scheme)
    assert combined == quantize(A, scheme).scale(alpha) + quantize(B, scheme).scale(beta)


@schemes
@settings(max_examples=100, deadline=None)
@given(phase_polys(max_degree=5, real=True))
def test_real_symbols_quantize_self_adjoint(scheme, A):
    operator = quantize(A, scheme)
    assert adjoint(operator) == operator


@schemes
def test_symbol_dispatch(scheme):
    assert symbol(quantize(x * p ** 2, scheme), scheme) == x * p ** 2


def test_ks2b_weyl():
    report = ks2b_report(x * p, x * p, Scheme.WEYL)
    assert report.discrepancy == PhasePoly.const(Scalar.hbar(2) / 4)
    assert report.product_symbol == x ** 2 * p ** 2 + Scalar.hbar(2) / 4
    assert report.commute
    assert report.as_dict()["discrepancy"] == "hbar^2/4"


@pytest.mark.parametrize("m", range(6))
def test_ks2b_weyl_powers_of_x(m):
    for n in range(6):
        report = ks2b_report(x ** m, x ** n, Scheme.WEYL)
        assert report.discrepancy.is_zero()


def test_ks2b_antiwick():
    report = ks2b_report(x, x, Scheme.ANTI_WICK)
    assert report.discrepancy == PhasePoly.const(-Scalar.l(2) / 2)
    assert report.as_dict()["discrepancy"] == "-l^2/2"


def test_ks2b_non_commuting():
    report = ks2b_report(x, p, Scheme.WEYL)
    assert not report.commute
    assert report.discrepancy == PhasePoly.const(Scalar.i() * Scalar.hbar() / 2)


@schemes
def test_condition_checks(scheme):
    assert all(condition_checks(scheme).values())


@schemes
def test_dirac_canonical_pair(scheme):
    assert dirac_report(x, p, scheme).holds


def test_dirac_fails_at_cubic_order():
    report = dirac_report(x ** 3, p ** 3, Scheme.WEYL)
    assert not report.holds
    assert report.poisson_bracket == PhasePoly.monomial(2, 2, 9)


def test_antiwick_xp_is_weyl_xp():
    # the coherent state smearing of x p has no cross moment
    assert antiwick_quantize(x * p) == weyl_quantize(x * p)


@pytest.mark.parametrize("cached", [weyl_monomial, antiwick_monomial, _alpha_power])
def test_monomial_caches_are_bounded(cached):
    cached(2, 1)
    assert cached.cache_info().maxsize == 1024
