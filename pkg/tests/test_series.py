from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicorders.arith import ParameterError
from cubicorders.cubic import SignedConstant
from cubicorders.series import (X, Poly, PowerSeries, RationalFunction, case_tag, closed_local,
                                column_closed, column_series, generic_factor, global_consistency,
                                p_correction, row_closed, row_series, trace_factor_series,
                                trivial_trace_factor, truncated_local_D, verify_intermediate,
                                verify_local)

sympy = pytest.importorskip("sympy")
x_sym = sympy.symbols("x")

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(fracs, max_size=4).map(Poly)
# denominators with a nonzero constant term so Taylor expansions exist
dens = st.tuples(fracs.filter(bool), st.lists(fracs, max_size=3)).map(lambda t: Poly([t[0], *t[1]]))
rfs = st.builds(RationalFunction, polys, dens)
series = st.lists(fracs, max_size=7).map(lambda c: PowerSeries(c, 6))


@settings(max_examples=60)
@given(rfs, rfs, rfs)
def test_rational_function_ring_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f
    assert f - f == RationalFunction(0)


@settings(max_examples=60)
@given(series, series, series)
def test_power_series_ring_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=60)
@given(rfs, rfs)
def test_taylor_is_multiplicative(f, g):
    assert (f * g).taylor(6) == f.taylor(6) * g.taylor(6)


@settings(max_examples=40)
@given(rfs)
def test_taylor_against_sympy(f):
    expr = (sum(sympy.Rational(c.numerator, c.denominator) * x_sym**i for i, c in enumerate(f.num.c))
            / sum(sympy.Rational(c.numerator, c.denominator) * x_sym**i for i, c in enumerate(f.den.c)))
    expected = sympy.series(expr, x_sym, 0, 7).removeO()
    ours = f.taylor(6)
    for i in range(7):
        coef = expected.coeff(x_sym, i)
        assert ours[i] == Fraction(int(coef.p), int(coef.q))


def test_normal_form():
    f = RationalFunction(Poly([2, 2]), Poly([4, 4]))
    assert f.num == Poly([Fraction(1, 2)]) and f.den == Poly([1])
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1, 0)
    with pytest.raises(ParameterError):
        (1 / X).taylor(3)


def test_case_tags():
    assert case_tag(7, 5) == "coprime-to-6p"
    assert case_tag(5, 5) == "equal-p"
    assert case_tag(2, 7) == "two"
    assert case_tag(3, 5) == "three"


def test_closed_form_examples():
    x = X
    assert closed_local(7, 5, 1) == (1 - x / 7) * (1 - x**2 / 7) / ((1 - x**2) * (1 - x**3))
    assert closed_local(5, 5, 1) == ((1 - x**2) * (1 - x**3) * (1 - x / 5) * (1 - x**2 / 5)
                                     / ((1 - x) * (1 - x**2)**2 * (1 - x**3)))
    for q in (2, 3):
        assert closed_local(q, 7, 1) == generic_factor(q)
    for k in (1, 2, 3):
        assert closed_local(5, 5, k) / generic_factor(5) == p_correction(k)
    with pytest.raises(NotImplementedError):
        closed_local(3, 3, 1)


def test_low_coefficients():
    D = truncated_local_D(2, 5, 1, 1, 2)
    assert D[0] == 1
    assert D[1] == Fraction(-1, 2)
    assert D[2] == Fraction(1, 2)
    assert closed_local(2, 5, 1).taylor(2) == D


@pytest.mark.parametrize("q, T", [(2, 8), (3, 6), (5, 5)])
def test_verify_local_examples(q, T):
    for sign in (1, -1):
        report = verify_local(q, 5, 1, sign, T)
        assert report.passed, report.failures()


@pytest.mark.parametrize("q, which, T", [(7, "row", 8), (2, "column", 8), (3, "row", 6),
                                         (2, "row", 8), (3, "column", 7), (5, "row", 6)])
def test_verify_intermediate_examples(q, which, T):
    report = verify_intermediate(q, 5, 1, which, T)
    assert report.passed, report.failures()


def test_cancellation_between_n0_and_n3():
    # 5 has no cube root mod 7, 13 has three; the axes differ, the full factor does not
    c0, c3 = SignedConstant(5, 1), SignedConstant(13, 1)
    assert row_closed(7, 5, 1) != row_closed(7, 13, 1)
    assert column_closed(7, 5, 1) != column_closed(7, 13, 1)
    assert closed_local(7, 5, 1) == closed_local(7, 13, 1)
    assert row_series(7, c0, 4) != row_series(7, c3, 4)
    assert truncated_local_D(7, 5, 1, 1, 4) == truncated_local_D(7, 13, 1, 1, 4)
    big = 10**11
    assert column_series(7, c3, 6, big) == column_closed(7, 13, 1).taylor(6)
    assert column_series(7, c0, 6, big) == column_closed(7, 5, 1).taylor(6)


@pytest.mark.parametrize("q", [2, 3, 7])
def test_series_sign_independence(q):
    assert truncated_local_D(q, 5, 1, 1, 4) == truncated_local_D(q, 5, 1, -1, 4)


@pytest.mark.parametrize("p, k", [(5, 1), (7, 2), (11, 3)])
def test_global_consistency(p, k):
    assert global_consistency(p, k).passed


def test_trace_factor_examples():
    assert trivial_trace_factor(5, 0) == 1
    assert trivial_trace_factor(2, 1) == Fraction(7, 2)
    P = Fraction(3)
    assert trivial_trace_factor(3, 2) == 9 * (1 - P**-3) / (1 - P**-1) * (1 - P**-4) / (1 - P**-2)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_trace_factor_oracle(p):
    for k in range(6):
        assert trivial_trace_factor(p, k) == trace_factor_series(p, k)
