from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from berkrh.exactval import INF, NEG_INF, DegenerateInputError, InputError, padic_val
from berkrh.laurent import LaurentPoly, T
from berkrh.valpolygon import (
    INSIDE,
    OUTSIDE,
    achieving_range,
    build_polygon,
    count_zero_valuations,
    dominant_exponent,
    eval_V,
    is_invertible_on,
    zeros_in_disc,
    zeros_outside_disc,
)

from conftest import PRIMES, laurent_polys, padic_rationals, small_rationals

F2 = T**5 - T
DF2 = 5 * T**4 - 1


def _product(c, roots):
    f = LaurentPoly.constant(c)
    for r in roots:
        f = f * (T - r)
    return f


def test_build_polygon_examples():
    P = build_polygon(F2, 5)
    assert P.points == ((1, 0), (5, 0))
    assert P.hull == ((1, 0), (5, 0))
    assert build_polygon(DF2, 5).hull == ((0, 0), (4, 1))
    Q = build_polygon(25 * T**2 + 5 * T + 1, 5)
    assert (1, 1) in Q.points
    assert Q.hull == ((0, 0), (2, 2))
    assert eval_V(Q, -1) == min(v + i * Fraction(-1) for i, v in Q.points)
    with pytest.raises(DegenerateInputError):
        build_polygon(LaurentPoly(), 5)


def test_eval_V_examples():
    assert eval_V(build_polygon(F2, 5), 0) == 0
    assert eval_V(build_polygon(F2, 5), 1) == 1
    assert eval_V(build_polygon(DF2, 5), Fraction(-1, 4)) == 0


def test_achieving_range_examples():
    assert achieving_range(build_polygon(DF2, 5), Fraction(-1, 4)) == (0, 4)
    assert achieving_range(build_polygon(DF2, 5), 0) == (0, 0)
    assert achieving_range(build_polygon(F2, 5), 0) == (1, 5)


def test_count_zero_valuations_examples():
    P = build_polygon(DF2, 5)
    assert count_zero_valuations(P, Fraction(-1, 4), Fraction(-1, 4)) == 4
    assert count_zero_valuations(P, 0, INF, False, True) == 0
    Q = build_polygon(_product(1, [1, 5, Fraction(1, 5)]), 5)
    assert count_zero_valuations(Q, 0, 1) == 2
    with pytest.raises(InputError):
        count_zero_valuations(Q, 1, 0)


def test_dominant_exponent_examples():
    P = build_polygon(DF2, 5)
    assert dominant_exponent(P, 0, INSIDE) == 0
    assert dominant_exponent(P, Fraction(-1, 4), OUTSIDE) == 4
    assert dominant_exponent(build_polygon(5 * T**4, 5), 0, INSIDE) == 4
    with pytest.raises(InputError):
        dominant_exponent(P, 0, "sideways")


def test_is_invertible_on_examples():
    P = build_polygon(DF2, 5)
    assert is_invertible_on(P, 0, Fraction(1, 8))
    assert not is_invertible_on(P, Fraction(-1, 2), 0)
    assert is_invertible_on(build_polygon(T**7, 3), -100, 100)


def test_zeros_in_and_outside_discs():
    f = _product(3, [0, 1, 6, Fraction(1, 5), 25])
    # 1 and 6 lie in the closed D(1, 1), only 1 in the open one
    assert zeros_in_disc(f, 1, 1, True, 5) == 2
    assert zeros_in_disc(f, 1, 1, False, 5) == 1
    assert zeros_in_disc(f, 0, 0, True, 5) == 4
    assert zeros_outside_disc(f, 0, False, 5) == 1
    assert zeros_outside_disc(f, 1, True, 5) == 1


@given(st.lists(padic_rationals(), min_size=1, max_size=7), padic_rationals(), PRIMES, st.data())
def test_oracle_root_valuations(roots, c, p, data):
    f = _product(c, roots)
    P = build_polygon(f, p)
    vals = sorted(padic_val(r, p) for r in roots)
    lo = data.draw(st.one_of(st.just(NEG_INF), small_rationals(4, 3)))
    hi = data.draw(st.one_of(st.just(INF), small_rationals(4, 3)))
    assume(lo is NEG_INF or hi is INF or lo <= hi)
    incl_lo, incl_hi = data.draw(st.booleans()), data.draw(st.booleans())

    def inside(v):
        if v is INF:
            return False  # root at 0 is not a finite-valuation root
        if lo is not NEG_INF and (v < lo or (v == lo and not incl_lo)):
            return False
        if hi is not INF and (v > hi or (v == hi and not incl_hi)):
            return False
        return True

    assert count_zero_valuations(P, lo, hi, incl_lo, incl_hi) == sum(1 for v in vals if inside(v))


@given(st.lists(padic_rationals(), min_size=1, max_size=6), padic_rationals(), PRIMES, small_rationals(5, 4))
def test_eval_V_is_gauss_norm_minimum(roots, c, p, s):
    f = _product(c, roots)
    direct = min(padic_val(a, p) + e * s for e, a in f.items())
    assert eval_V(build_polygon(f, p), s) == direct


@given(laurent_polys(nonzero=True), laurent_polys(nonzero=True), PRIMES, small_rationals(5, 4))
def test_multiplicativity(f, g, p, s):
    assert eval_V(build_polygon(f * g, p), s) == eval_V(build_polygon(f, p), s) + eval_V(build_polygon(g, p), s)


@given(laurent_polys(nonzero=True), PRIMES)
def test_conservation(f, p):
    P = build_polygon(f, p)
    assert count_zero_valuations(P, NEG_INF, INF) == P.ord_high - P.ord_low
    assert P.ord_low == f.ord_low and P.ord_high == f.ord_high


@given(laurent_polys(nonzero=True), PRIMES, small_rationals(5, 4))
def test_monotonicity_of_dominant_exponent(f, p, s):
    P = build_polygon(f, p)
    lo, hi = dominant_exponent(P, s, INSIDE), dominant_exponent(P, s, OUTSIDE)
    assert lo <= hi
    assert (lo == hi) == (s not in P.breakpoints())


@given(laurent_polys(nonzero=True), PRIMES)
def test_breakpoints_decrease_along_hull(f, p):
    bps = build_polygon(f, p).breakpoints()
    assert all(a > b for a, b in zip(bps, bps[1:]))
