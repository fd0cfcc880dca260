"""Truncated multi-graded series: arithmetic, exponential, derivative."""

from fractions import Fraction

import pytest

from grassflop.errors import SpecError
from grassflop.exact_core.series import (MultiSeries, VarSpec, ZLaurent, exp_linear,
                                         series_arith, series_derivative)


def spec1(d_q=2, l_logy=4, x_x=0):
    return VarSpec(novikov=("q",), logy=("ly",), x=(), d_q=d_q, l_logy=l_logy, x_x=x_x)


def zl(c, zpow=0):
    return ZLaurent.single(zpow, Fraction(c))


def q_series(spec, *coeffs):
    """sum coeffs[d] * q^d."""
    return MultiSeries(spec, {((d,), (0,), ()): zl(c) for d, c in enumerate(coeffs) if c})


def test_difference_of_squares_truncated():
    # (1+q)(1-q) at D_q = 2 -> 1 - q^2   [difference of squares]
    s = spec1(d_q=2)
    a = q_series(s, 1, 1)
    b = q_series(s, 1, -1)
    assert series_arith(a, b, "mul") == q_series(s, 1, 0, -1)


def test_annihilator():
    s = spec1()
    a = q_series(s, 3, 1, 7)
    assert series_arith(a, MultiSeries.zero(s), "mul").is_zero()


def _exp_of(spec, entry_num, entry_den=1):
    """exp(c * ly / z) brute force: sum_m c^m ly^m / (m! z^m)."""
    c = Fraction(entry_num, entry_den)
    terms = {}
    fact = 1
    for m in range(spec.l_logy + 1):
        if m:
            fact *= m
        terms[((0,), (m,), ())] = ZLaurent.single(-m, c**m / fact)
    return MultiSeries(spec, terms)


def test_exp_times_exp_inverse_is_one():
    # partial sums of e^{L/z} * e^{-L/z} at L_logy = 4 -> 1 + O(deg > 4)
    # expected values from the brute-force exponential expansion above
    s = spec1(d_q=0, l_logy=4)
    e_plus = _exp_of(s, 5, 3)
    e_minus = _exp_of(s, -5, 3)
    prod = e_plus * e_minus
    assert prod == MultiSeries.constant(s, zl(1))


def test_exp_linear_trivial_and_taylor():
    s = spec1(d_q=0, l_logy=2)
    # L = 0 -> 1
    one = exp_linear(MultiSeries.zero(s), Fraction(1))
    assert one == MultiSeries.constant(s, zl(1))
    # L = c*ly/z -> 1 + c*ly/z + c^2 ly^2/(2 z^2)
    L = MultiSeries(s, {((0,), (1,), ()): ZLaurent.single(-1, Fraction(3))})
    e = exp_linear(L, Fraction(1))
    assert e.coefficient(((0,), (0,), ())) == zl(1)
    assert e.coefficient(((0,), (1,), ())) == ZLaurent.single(-1, Fraction(3))
    assert e.coefficient(((0,), (2,), ())) == ZLaurent.single(-2, Fraction(9, 2))


def test_exp_linear_rejects_nonlinear():
    s = spec1(d_q=0, l_logy=3)
    bad = MultiSeries(s, {((0,), (2,), ()): ZLaurent.single(-1, Fraction(1))})
    with pytest.raises(SpecError):
        exp_linear(bad, Fraction(1))
    bad_z = MultiSeries(s, {((0,), (1,), ()): ZLaurent.single(0, Fraction(1))})
    with pytest.raises(SpecError):
        exp_linear(bad_z, Fraction(1))


def test_series_derivative():
    s = spec1(d_q=0, l_logy=4)
    sq = MultiSeries(s, {((0,), (2,), ()): zl(1)})
    assert series_derivative(sq, "ly") == MultiSeries(s, {((0,), (1,), ()): zl(2)})
    # chain rule on the exponential: d/dly e^{c ly/z} = (c/z) e^{c ly/z}, truncated
    L = MultiSeries(s, {((0,), (1,), ()): ZLaurent.single(-1, Fraction(2))})
    e = exp_linear(L, Fraction(1))
    lhs = series_derivative(e, "ly")
    rhs = e.scale(ZLaurent.single(-1, Fraction(2)))
    # agreement below the truncation boundary (top degree is cut by d/dly)
    for key, val in lhs.terms.items():
        assert val == rhs.coefficient(key)
    for key, val in rhs.terms.items():
        if sum(key[1]) < s.l_logy:
            assert val == lhs.coefficient(key)


def test_derivative_unknown_variable():
    s = spec1()
    with pytest.raises(SpecError):
        series_derivative(MultiSeries.zero(s), "nope")


def test_mismatched_specs_error():
    a = MultiSeries.zero(spec1(d_q=1))
    b = MultiSeries.zero(spec1(d_q=2))
    with pytest.raises(SpecError):
        series_arith(a, b, "add")


def test_truncation_coherence():
    # computing at higher truncation then truncating == computing at lower
    lo = spec1(d_q=2, l_logy=2)
    hi = spec1(d_q=4, l_logy=4)

    def build(spec):
        a = MultiSeries(spec, {
            ((1,), (0,), ()): zl(1),
            ((0,), (1,), ()): ZLaurent.single(-1, Fraction(1, 2)),
        })
        return (a * a) * a

    high = build(hi)
    low = build(lo)
    cut = MultiSeries(lo, {k: v for k, v in high.terms.items() if lo.within(k)})
    assert cut == low
